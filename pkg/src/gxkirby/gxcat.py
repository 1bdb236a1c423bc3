"""Skeletal G-crossed braided spherical fusion categories.

The data model is fully skeletal and multiplicity-free: simple objects are
integer labels (0 is the monoidal unit), fusion is a set of admissible triples,
and all coherence data (F, R, U, eta) are plain scalars in a fixed cyclotomic
field.  `validate_category` checks the axioms exhaustively; it is the arbiter
for every shipped fixture.

Conventions (fixed once, validated mechanically):

* F-symbols: key (a, b, c, d, e, f) is the coefficient relating the two
  parenthesisations of maps d -> a (x) b (x) c, with e the channel of a(x)b
  and f the channel of b(x)c.
* R-symbols: key (a, b, c) is the coefficient of the crossed braiding
  a (x) b -> (g>b) (x) a on channel c, where g = deg(a).
* U-symbols: key (g, a, b, c) is the action of the functor for g on the
  splitting-space basis vector of (a, b; c).
* eta-symbols: key (x, g, h) is the scalar of the composition coherence
  g>(h>x) -> (gh)>x.  eta with either group argument e, or x the unit, is 1.
* The label action is strict: act(e) = id and act(g) . act(h) = act(gh) as
  permutations; all coherence lives in the eta scalars.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction

from .scalars import Cyclotomic, ScalarError


class CategoryError(ValueError):
    """Raised for structurally ill-formed category data."""


# ---------------------------------------------------------------------------
# finite groups
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GroupData:
    """A finite group as a multiplication table; element 0 is the identity."""

    order: int
    mul_table: tuple[tuple[int, ...], ...]
    inv_table: tuple[int, ...]
    name: str = "G"

    def mul(self, g: int, h: int) -> int:
        return self.mul_table[g][h]

    def inv(self, g: int) -> int:
        return self.inv_table[g]

    def conj(self, g: int, h: int) -> int:
        """g h g^-1."""
        return self.mul(self.mul(g, h), self.inv(g))

    def commutator(self, g: int, h: int) -> int:
        """g h g^-1 h^-1."""
        return self.mul(self.conj(g, h), self.inv(h))

    @property
    def elements(self) -> range:
        return range(self.order)

    def is_abelian(self) -> bool:
        return all(
            self.mul(g, h) == self.mul(h, g)
            for g in self.elements
            for h in self.elements
        )

    def validate(self) -> None:
        n = self.order
        if len(self.mul_table) != n or any(len(r) != n for r in self.mul_table):
            raise CategoryError("multiplication table has wrong shape")
        for g in range(n):
            if self.mul(0, g) != g or self.mul(g, 0) != g:
                raise CategoryError(f"element 0 is not an identity at {g}")
            if self.mul(g, self.inv(g)) != 0 or self.mul(self.inv(g), g) != 0:
                raise CategoryError(f"inverse table wrong at {g}")
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)):
                        raise CategoryError(f"associativity fails at ({a},{b},{c})")

    @classmethod
    def cyclic(cls, n: int) -> GroupData:
        mul = tuple(tuple((a + b) % n for b in range(n)) for a in range(n))
        inv = tuple((-a) % n for a in range(n))
        return cls(n, mul, inv, name=f"Z{n}")

    @classmethod
    def trivial(cls) -> GroupData:
        return cls.cyclic(1)

    @classmethod
    def symmetric_3(cls) -> GroupData:
        """S3 as permutations of {0,1,2}; element 0 is the identity."""
        perms = [(0, 1, 2), (1, 2, 0), (2, 0, 1), (0, 2, 1), (2, 1, 0), (1, 0, 2)]
        index = {p: i for i, p in enumerate(perms)}

        def compose(p, q):  # apply q first, then p
            return tuple(p[q[i]] for i in range(3))

        mul = tuple(
            tuple(index[compose(p, q)] for q in perms) for p in perms
        )
        inv = []
        for i, p in enumerate(perms):
            for j, q in enumerate(perms):
                if compose(p, q) == (0, 1, 2):
                    inv.append(j)
                    break
        return cls(6, mul, tuple(inv), name="S3")

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "mul": [list(r) for r in self.mul_table],
            "inv": list(self.inv_table),
        }

    @classmethod
    def from_json(cls, data: dict) -> GroupData:
        return cls(
            int(data["order"]),
            tuple(tuple(r) for r in data["mul"]),
            tuple(data["inv"]),
        )


# ---------------------------------------------------------------------------
# category data
# ---------------------------------------------------------------------------

@dataclass
class CategoryData:
    """All data of a skeletal multiplicity-free G-crossed BSFC."""

    group: GroupData
    conductor: int
    names: tuple[str, ...]
    grade: tuple[int, ...]
    dual: tuple[int, ...]
    qdims: tuple[Cyclotomic, ...]
    twists: dict[int, Cyclotomic]          # grade-e simples at least
    fusion: frozenset[tuple[int, int, int]]
    f_symbols: dict[tuple[int, int, int, int, int, int], Cyclotomic]
    r_symbols: dict[tuple[int, int, int], Cyclotomic]
    action_perm: tuple[tuple[int, ...], ...]   # [g][label]
    u_symbols: dict[tuple[int, int, int, int], Cyclotomic]
    eta_symbols: dict[tuple[int, int, int], Cyclotomic]
    pivotal: tuple[Cyclotomic, ...]
    name: str = "C"
    _caches: dict = field(default_factory=dict, repr=False, compare=False)

    # -- basics -------------------------------------------------------------

    UNIT = 0

    @property
    def rank(self) -> int:
        return len(self.names)

    @property
    def simples(self) -> range:
        return range(self.rank)

    def one(self) -> Cyclotomic:
        return Cyclotomic.one(self.conductor)

    def zero(self) -> Cyclotomic:
        return Cyclotomic.zero(self.conductor)

    def rational(self, value) -> Cyclotomic:
        return Cyclotomic.from_rational(self.conductor, value)

    def n(self, a: int, b: int, c: int) -> bool:
        return (a, b, c) in self.fusion

    def channels(self, a: int, b: int) -> tuple[int, ...]:
        key = ("channels", a, b)
        if key not in self._caches:
            self._caches[key] = tuple(
                c for c in self.simples if (a, b, c) in self.fusion
            )
        return self._caches[key]

    def act(self, g: int, x: int) -> int:
        return self.action_perm[g][x]

    def act_composite(self, elems, x: int) -> int:
        """Apply a sequence of group elements, first entry acting first."""
        for g in elems:
            x = self.act(g, x)
        return x

    def simples_of_grade(self, g: int) -> tuple[int, ...]:
        key = ("grade_simples", g)
        if key not in self._caches:
            self._caches[key] = tuple(x for x in self.simples if self.grade[x] == g)
        return self._caches[key]

    def f(self, a, b, c, d, e, fch) -> Cyclotomic:
        return self.f_symbols.get((a, b, c, d, e, fch), self.zero())

    def r(self, a, b, c) -> Cyclotomic:
        return self.r_symbols.get((a, b, c), self.zero())

    def u(self, g, a, b, c) -> Cyclotomic:
        return self.u_symbols.get((g, a, b, c), self.zero())

    def eta(self, x, g, h) -> Cyclotomic:
        return self.eta_symbols.get((x, g, h), self.zero())

    # F-matrix blocks and their inverses, for fixed outer labels (a, b, c, d).

    def f_block(self, a, b, c, d):
        """Rows indexed by e in a(x)b with (e,c;d), cols by f in b(x)c with (a,f;d)."""
        key = ("fblock", a, b, c, d)
        if key not in self._caches:
            rows = tuple(e for e in self.channels(a, b) if self.n(e, c, d))
            cols = tuple(f for f in self.channels(b, c) if self.n(a, f, d))
            mat = {
                (e, f): self.f(a, b, c, d, e, f) for e in rows for f in cols
            }
            self._caches[key] = (rows, cols, mat)
        return self._caches[key]

    def f_inv(self, a, b, c, d):
        """Inverse F-block as a dict keyed (f, e)."""
        key = ("finv", a, b, c, d)
        if key not in self._caches:
            rows, cols, mat = self.f_block(a, b, c, d)
            if len(rows) != len(cols):
                raise CategoryError(
                    f"F-block ({a},{b},{c};{d}) is not square: {rows} vs {cols}"
                )
            inv = _invert_matrix(
                [[mat[(e, f)] for f in cols] for e in rows], self.conductor
            )
            self._caches[key] = {
                (f, e): inv[j][i] for i, e in enumerate(rows) for j, f in enumerate(cols)
            }
        return self._caches[key]

    # Duality morphism coefficients (see treecalc for where they enter).

    def lam(self, x: int) -> Cyclotomic:
        """Coefficient of ev_x: x* (x) x -> 1 on the fusion basis."""
        key = ("lam", x)
        if key not in self._caches:
            fxx = self.f(x, self.dual[x], x, x, self.UNIT, self.UNIT)
            if fxx.is_zero():
                raise CategoryError(f"F[{x},{x}*,{x};{x}]_(1,1) vanishes")
            self._caches[key] = fxx.inverse()
        return self._caches[key]

    def nu(self, x: int) -> Cyclotomic:
        """Coefficient of the pivotal cap x (x) x* -> 1."""
        key = ("nu", x)
        if key not in self._caches:
            xd = self.dual[x]
            fdd = self.f(xd, x, xd, xd, self.UNIT, self.UNIT)
            if fdd.is_zero():
                raise CategoryError(f"F[{x}*,{x},{x}*;{x}*]_(1,1) vanishes")
            self._caches[key] = self.pivotal[x] / fdd
        return self._caches[key]

    def mu(self, x: int) -> Cyclotomic:
        """Coefficient of the pivotal cup 1 -> x* (x) x."""
        return self.pivotal[x].inverse()

    def __repr__(self) -> str:
        return f"CategoryData({self.name}, rank={self.rank}, |G|={self.group.order})"


def _invert_matrix(rows: list[list[Cyclotomic]], conductor: int) -> list[list[Cyclotomic]]:
    """Exact Gauss-Jordan inverse; raises CategoryError if singular."""
    n = len(rows)
    if n == 0:
        return []
    aug = [list(r) + [
        Cyclotomic.one(conductor) if i == j else Cyclotomic.zero(conductor)
        for j in range(n)
    ] for i, r in enumerate(rows)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if not aug[r][col].is_zero()), None)
        if pivot is None:
            raise CategoryError("singular matrix")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = aug[col][col].inverse()
        aug[col] = [v * inv for v in aug[col]]
        for r in range(n):
            if r != col and not aug[r][col].is_zero():
                factor = aug[r][col]
                aug[r] = [v - factor * w for v, w in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


# ---------------------------------------------------------------------------
# fusion algebra
# ---------------------------------------------------------------------------

@dataclass
class FusionAlgebraElement:
    """A finitely supported formal combination of simple labels."""

    cat: CategoryData
    coeffs: dict[int, Cyclotomic]

    def support(self) -> tuple[int, ...]:
        return tuple(x for x, c in sorted(self.coeffs.items()) if not c.is_zero())

    def is_zero(self) -> bool:
        return not self.support()

    def qdim(self) -> Cyclotomic:
        total = self.cat.zero()
        for x, c in self.coeffs.items():
            total = total + c * self.cat.qdims[x]
        return total

    def grade(self) -> int | None:
        """The common grade of the support, or None if mixed/empty."""
        grades = {self.cat.grade[x] for x in self.support()}
        if len(grades) == 1:
            return grades.pop()
        return None

    def __add__(self, other: FusionAlgebraElement) -> FusionAlgebraElement:
        out = dict(self.coeffs)
        for x, c in other.coeffs.items():
            out[x] = out.get(x, self.cat.zero()) + c
        return FusionAlgebraElement(self.cat, out)

    def scaled(self, s: Cyclotomic) -> FusionAlgebraElement:
        return FusionAlgebraElement(self.cat, {x: s * c for x, c in self.coeffs.items()})


def kirby_colour(cat: CategoryData, g: int) -> FusionAlgebraElement:
    """Omega_g = sum of qdim(X) X over grade-g simples (zero if the sector is empty)."""
    return FusionAlgebraElement(
        cat, {x: cat.qdims[x] for x in cat.simples_of_grade(g)}
    )


def global_dim(cat: CategoryData) -> Cyclotomic:
    total = cat.zero()
    for x in cat.simples:
        total = total + cat.qdims[x] * cat.qdims[x]
    return total


def graded_dim(cat: CategoryData, g: int) -> Cyclotomic:
    total = cat.zero()
    for x in cat.simples_of_grade(g):
        total = total + cat.qdims[x] * cat.qdims[x]
    return total


def gauss_sum(cat: CategoryData, sign: int) -> Cyclotomic:
    """Sum of qdim(X)^2 theta_X^(+-1) over the trivially graded simples."""
    if sign not in (1, -1):
        raise CategoryError(f"sign must be +1 or -1, got {sign}")
    total = cat.zero()
    for x in cat.simples_of_grade(0):
        theta = cat.twists[x]
        if sign == -1:
            theta = theta.inverse()
        total = total + cat.qdims[x] * cat.qdims[x] * theta
    return total


def act_on_label(cat: CategoryData, g: int, x: int) -> int:
    return cat.act(g, x)


def act_on_element(
    cat: CategoryData, g: int, v: FusionAlgebraElement
) -> FusionAlgebraElement:
    return FusionAlgebraElement(cat, {cat.act(g, x): c for x, c in v.coeffs.items()})


def is_transparent(cat: CategoryData, x: int) -> bool:
    """Whether the grade-e simple x double-braids trivially with all of C_e."""
    if cat.grade[x] != 0:
        raise CategoryError(f"transparency is only defined in grade e, not {x}")
    from . import treecalc

    one = cat.one()
    for y in cat.simples_of_grade(0):
        for c, val in treecalc.double_braiding(cat, x, y).items():
            if val != one:
                return False
    return True


def symmetric_centre(cat: CategoryData) -> tuple[int, ...]:
    return tuple(x for x in cat.simples_of_grade(0) if is_transparent(cat, x))


def symmetric_centre_dim(cat: CategoryData) -> Cyclotomic:
    total = cat.zero()
    for x in symmetric_centre(cat):
        total = total + cat.qdims[x] * cat.qdims[x]
    return total


def restrict_to_grade_e(cat: CategoryData) -> CategoryData:
    """The trivially graded part as a category over the trivial group."""
    keep = list(cat.simples_of_grade(0))
    idx = {x: i for i, x in enumerate(keep)}
    keepset = set(keep)

    def scal(s):
        return s

    return CategoryData(
        group=GroupData.trivial(),
        conductor=cat.conductor,
        names=tuple(cat.names[x] for x in keep),
        grade=tuple(0 for _ in keep),
        dual=tuple(idx[cat.dual[x]] for x in keep),
        qdims=tuple(cat.qdims[x] for x in keep),
        twists={idx[x]: t for x, t in cat.twists.items() if x in keepset},
        fusion=frozenset(
            (idx[a], idx[b], idx[c])
            for (a, b, c) in cat.fusion
            if a in keepset and b in keepset and c in keepset
        ),
        f_symbols={
            (idx[a], idx[b], idx[c], idx[d], idx[e], idx[f]): scal(v)
            for (a, b, c, d, e, f), v in cat.f_symbols.items()
            if {a, b, c, d, e, f} <= keepset
        },
        r_symbols={
            (idx[a], idx[b], idx[c]): scal(v)
            for (a, b, c), v in cat.r_symbols.items()
            if {a, b, c} <= keepset
        },
        action_perm=(tuple(range(len(keep))),),
        u_symbols={
            (0, idx[a], idx[b], idx[c]): cat.one()
            for (a, b, c) in cat.fusion
            if {a, b, c} <= keepset
        },
        eta_symbols={
            (idx[x], 0, 0): cat.one() for x in keep
        },
        pivotal=tuple(cat.pivotal[x] for x in keep),
        name=f"{cat.name}_e",
    )


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------

@dataclass
class ValidationReport:
    checks: list[tuple[str, bool, str | None]] = field(default_factory=list)

    def record(self, name: str, ok: bool, witness: str | None = None) -> None:
        self.checks.append((name, ok, witness))

    @property
    def ok(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    def failures(self) -> list[tuple[str, str | None]]:
        return [(name, witness) for name, ok, witness in self.checks if not ok]

    def __str__(self) -> str:
        lines = []
        for name, ok, witness in self.checks:
            mark = "ok  " if ok else "FAIL"
            lines.append(f"[{mark}] {name}" + (f": {witness}" if witness else ""))
        return "\n".join(lines)


def validate_category(cat: CategoryData) -> ValidationReport:  # noqa: C901
    """Exhaustively check the axioms; reports the first witness per check."""
    rep = ValidationReport()
    G = cat.group
    one = cat.one()
    e = 0
    unit = cat.UNIT

    def check(name, gen):
        """gen yields (condition, witness) pairs; record first failure."""
        for cond, witness in gen:
            if not cond:
                rep.record(name, False, witness)
                return
        rep.record(name, True)

    try:
        G.validate()
        rep.record("group table", True)
    except CategoryError as exc:
        rep.record("group table", False, str(exc))
        return rep

    # structural sanity
    def structure():
        yield len(cat.grade) == cat.rank, "grade vector length"
        yield len(cat.dual) == cat.rank, "dual vector length"
        yield len(cat.qdims) == cat.rank, "qdim vector length"
        yield len(cat.pivotal) == cat.rank, "pivotal vector length"
        yield len(cat.action_perm) == G.order, "action table length"
        yield cat.grade[unit] == e, "unit must sit in grade e"
        yield cat.dual[unit] == unit, "unit must be self-dual"
        for x in cat.simples:
            yield cat.dual[cat.dual[x]] == x, f"dual not involutive at {x}"
            yield not cat.qdims[x].is_zero(), f"qdim({x}) is zero"
            yield not cat.pivotal[x].is_zero(), f"pivotal({x}) is zero"
        for x in cat.simples_of_grade(e):
            yield x in cat.twists, f"missing twist for grade-e simple {x}"

    check("structure", structure())
    if not rep.ok:
        return rep

    def fusion_rules():
        for x in cat.simples:
            yield cat.n(unit, x, x), f"unit fusion 1 (x) {x}"
            yield cat.n(x, unit, x), f"unit fusion {x} (x) 1"
            yield cat.n(x, cat.dual[x], unit), f"missing {x} (x) {x}* -> 1"
            yield cat.n(cat.dual[x], x, unit), f"missing {x}* (x) {x} -> 1"
            for c in cat.channels(unit, x):
                yield c == x, f"unit fusion not unique at {x}"
            for c in cat.channels(x, unit):
                yield c == x, f"unit fusion not unique at {x}"
        for (a, b, c) in cat.fusion:
            yield (
                G.mul(cat.grade[a], cat.grade[b]) == cat.grade[c],
                f"grading axiom at N({a},{b};{c})",
            )
            # duality symmetries of the fusion multiplicities
            yield cat.n(cat.dual[b], cat.dual[a], cat.dual[c]), \
                f"N({a},{b};{c}) != N({b}*,{a}*;{c}*)"
            yield cat.n(cat.dual[a], c, b), f"N({a},{b};{c}) != N({a}*,{c};{b})"
            yield cat.n(c, cat.dual[b], a), f"N({a},{b};{c}) != N({c},{b}*;{a})"
        for a in cat.simples:
            for c in cat.channels(a, cat.dual[a]):
                if c == unit:
                    continue
            # multiplicity-freeness is implicit in the set representation

    check("fusion rules", fusion_rules())

    def action_axioms():
        for x in cat.simples:
            yield cat.act(e, x) == x, f"act(e) moves {x}"
        for g in G.elements:
            perm = cat.action_perm[g]
            yield sorted(perm) == list(cat.simples), f"act({g}) is not a permutation"
            yield cat.act(g, unit) == unit, f"act({g}) moves the unit"
            for h in G.elements:
                for x in cat.simples:
                    yield (
                        cat.act(g, cat.act(h, x)) == cat.act(G.mul(g, h), x),
                        f"act({g})act({h}) != act(gh) at {x}",
                    )
            for x in cat.simples:
                yield (
                    cat.grade[cat.act(g, x)] == G.conj(g, cat.grade[x]),
                    f"act({g}) breaks grade conjugation at {x}",
                )
                yield (
                    cat.dual[cat.act(g, x)] == cat.act(g, cat.dual[x]),
                    f"act({g}) breaks duals at {x}",
                )
                yield (
                    cat.qdims[cat.act(g, x)] == cat.qdims[x],
                    f"act({g}) breaks qdim at {x}",
                )
            for (a, b, c) in cat.fusion:
                yield (
                    cat.n(cat.act(g, a), cat.act(g, b), cat.act(g, c)),
                    f"act({g}) breaks fusion at ({a},{b};{c})",
                )

    check("action", action_axioms())

    def sphericality():
        for x in cat.simples:
            yield cat.qdims[cat.dual[x]] == cat.qdims[x], f"qdim({x}*) != qdim({x})"
            xd = cat.dual[x]
            lhs = cat.qdims[x] * cat.qdims[x] \
                * cat.f(x, xd, x, x, unit, unit) * cat.f(xd, x, xd, xd, unit, unit)
            yield lhs.is_one(), f"spherical loop constraint fails at {x}"

    check("sphericality", sphericality())

    def f_completeness():
        for (a, b, e_) in cat.fusion:
            for c in cat.simples:
                for d in cat.channels(e_, c):
                    total = False
                    for f_ in cat.channels(b, c):
                        if cat.n(a, f_, d):
                            total = True
                            key = (a, b, c, d, e_, f_)
                            yield key in cat.f_symbols, f"missing F{key}"
                    yield total, f"no F-path for ({a},{b},{c};{d};{e_})"
        # unit normalisation
        for key, val in cat.f_symbols.items():
            a, b, c, d, e_, f_ = key
            if unit in (a, b, c):
                yield val.is_one(), f"F at unit not 1: {key}"

    check("F completeness/unit", f_completeness())
    if not rep.ok:
        return rep

    def pentagon():
        # [F^{fcd}_e]_{gl} [F^{abl}_e]_{fk} =
        #     sum_h [F^{abc}_g]_{fh} [F^{ahd}_e]_{gk} [F^{bcd}_k]_{hl}
        for a, b, c, d in itertools.product(cat.simples, repeat=4):
            for f_ in cat.channels(a, b):
                for g_ in cat.channels(f_, c):
                    for l_ in cat.channels(c, d):
                        if not cat.n(g_, d, 0) and True:
                            pass
                        for e_ in cat.channels(g_, d):
                            if not cat.n(f_, l_, e_):
                                continue
                            for k_ in cat.channels(b, l_):
                                if not cat.n(a, k_, e_):
                                    continue
                                lhs = cat.f(f_, c, d, e_, g_, l_) \
                                    * cat.f(a, b, l_, e_, f_, k_)
                                rhs = cat.zero()
                                for h_ in cat.channels(b, c):
                                    if cat.n(a, h_, g_) and cat.n(h_, d, k_):
                                        rhs = rhs + (
                                            cat.f(a, b, c, g_, f_, h_)
                                            * cat.f(a, h_, d, e_, g_, k_)
                                            * cat.f(b, c, d, k_, h_, l_)
                                        )
                                yield lhs == rhs, (
                                    f"pentagon ({a},{b},{c},{d}) e={e_} f={f_} "
                                    f"g={g_} k={k_} l={l_}"
                                )

    check("pentagon", pentagon())

    def f_invertible():
        for a, b, c in itertools.product(cat.simples, repeat=3):
            for d in cat.simples:
                rows, cols, _ = cat.f_block(a, b, c, d)
                if len(rows) != len(cols):
                    yield False, f"F-block ({a},{b},{c};{d}) not square"
                    continue
                if rows:
                    try:
                        cat.f_inv(a, b, c, d)
                        yield True, None
                    except CategoryError:
                        yield False, f"F-block ({a},{b},{c};{d}) singular"

    check("F invertibility", f_invertible())

    def r_structure():
        for (a, b, c) in cat.fusion:
            g = cat.grade[a]
            yield cat.n(cat.act(g, b), a, c), \
                f"braided channel missing for ({a},{b};{c})"
            yield (a, b, c) in cat.r_symbols, f"missing R({a},{b};{c})"
            if unit in (a, b):
                yield cat.r(a, b, c).is_one(), f"unit braiding not 1 at ({a},{b};{c})"
        for (a, b, c), val in cat.r_symbols.items():
            yield cat.n(a, b, c), f"R on inadmissible channel ({a},{b};{c})"
            yield not val.is_zero(), f"R({a},{b};{c}) is zero"

    check("R structure", r_structure())

    def u_structure():
        for g in G.elements:
            for (a, b, c) in cat.fusion:
                key = (g, a, b, c)
                yield key in cat.u_symbols, f"missing U{key}"
                val = cat.u_symbols.get(key, cat.zero())
                if g == e:
                    yield val.is_one(), f"U_e not 1 at ({a},{b};{c})"
                if unit in (a, b):
                    yield val.is_one(), f"U at unit leg not 1: {key}"

    check("U structure", u_structure())

    def eta_structure():
        for x in cat.simples:
            for g in G.elements:
                for h in G.elements:
                    key = (x, g, h)
                    yield key in cat.eta_symbols, f"missing eta{key}"
                    val = cat.eta_symbols.get(key, cat.zero())
                    if g == e or h == e:
                        yield val.is_one(), f"eta(e,-) not 1 at {key}"
                    if x == unit:
                        yield val.is_one(), f"eta at unit not 1: {key}"

    check("eta structure", eta_structure())
    if not rep.ok:
        return rep

    def u_f_coherence():
        # F of acted labels times U factors equals U factors times F.
        for g in G.elements:
            if g == e:
                continue
            for (a, b, c, d, e_, f_), val in cat.f_symbols.items():
                lhs = cat.f(
                    cat.act(g, a), cat.act(g, b), cat.act(g, c), cat.act(g, d),
                    cat.act(g, e_), cat.act(g, f_),
                ) * cat.u(g, a, b, e_) * cat.u(g, e_, c, d)
                rhs = cat.u(g, b, c, f_) * cat.u(g, a, f_, d) * val
                yield lhs == rhs, f"U-F coherence at g={g} F({a},{b},{c};{d})_{e_}{f_}"

    check("U-F coherence", u_f_coherence())

    def u_eta_coherence():
        for g in G.elements:
            for h in G.elements:
                gh = G.mul(g, h)
                for (a, b, c) in cat.fusion:
                    lhs = cat.u(g, cat.act(h, a), cat.act(h, b), cat.act(h, c)) \
                        * cat.u(h, a, b, c) * cat.eta(c, g, h)
                    rhs = cat.eta(a, g, h) * cat.eta(b, g, h) * cat.u(gh, a, b, c)
                    yield lhs == rhs, f"U-eta coherence at g={g},h={h},({a},{b};{c})"

    check("U-eta coherence", u_eta_coherence())

    def eta_cocycle():
        for x in cat.simples:
            for g, h, k in itertools.product(G.elements, repeat=3):
                lhs = cat.eta(x, g, G.mul(h, k)) * cat.eta(x, h, k)
                rhs = cat.eta(x, G.mul(g, h), k) * cat.eta(cat.act(k, x), g, h)
                yield lhs == rhs, f"eta cocycle at x={x}, ({g},{h},{k})"

    check("eta cocycle", eta_cocycle())

    def heptagon_one():
        # Sum_f F^{abc}_d[e,f] U_g(b,c;f) R^{af}_d F^{gb,gc,a}_d[gf,x]
        #   = R^{ab}_e F^{gb,a,c}_d[e,x],  where g = deg(a).
        for a in cat.simples:
            g = cat.grade[a]
            for b, c in itertools.product(cat.simples, repeat=2):
                gb, gc = cat.act(g, b), cat.act(g, c)
                for e_ in cat.channels(a, b):
                    for d in cat.channels(e_, c):
                        for x in cat.channels(a, c):
                            if not cat.n(gb, x, d):
                                continue
                            lhs = cat.zero()
                            for f_ in cat.channels(b, c):
                                if not cat.n(a, f_, d):
                                    continue
                                lhs = lhs + (
                                    cat.f(a, b, c, d, e_, f_)
                                    * cat.u(g, b, c, f_)
                                    * cat.r(a, f_, d)
                                    * cat.f(gb, gc, a, d, cat.act(g, f_), x)
                                )
                            rhs = cat.r(a, b, e_) * cat.f(gb, a, c, d, e_, x) \
                                * cat.r(a, c, x)
                            yield lhs == rhs, \
                                f"heptagon-1 at a={a},b={b},c={c},d={d},e={e_},x={x}"

    check("heptagon 1", heptagon_one())

    def heptagon_two():
        # R^{fa}_d = sum_{h,k} F^{bca}_d[f,h] R^{ca}_h Finv^{b,(hc>a),c}_d[h,k]
        #            R^{b,(hc>a)}_k F^{(hb hc>a),b,c}_d[k,x=f]
        for b, c in itertools.product(cat.simples, repeat=2):
            hb, hc = cat.grade[b], cat.grade[c]
            for a in cat.simples:
                a_c = cat.act(hc, a)
                a_bc = cat.act(G.mul(hb, hc), a)
                for f_ in cat.channels(b, c):
                    for d in cat.channels(f_, a):
                        for x in cat.channels(b, c):
                            if not cat.n(a_bc, x, d):
                                continue
                            rhs = cat.zero()
                            for h_ in cat.channels(c, a):
                                if not cat.n(b, h_, d):
                                    continue
                                finv = cat.f_inv(b, a_c, c, d)
                                for k_ in cat.channels(b, a_c):
                                    if not cat.n(k_, c, d):
                                        continue
                                    rhs = rhs + (
                                        cat.f(b, c, a, d, f_, h_)
                                        * cat.r(c, a, h_)
                                        * finv.get((h_, k_), cat.zero())
                                        * cat.r(b, a_c, k_)
                                        * cat.f(a_bc, b, c, d, k_, x)
                                    )
                            lhs = cat.r(f_, a, d) if x == f_ else cat.zero()
                            yield lhs == rhs, \
                                f"heptagon-2 at a={a},b={b},c={c},d={d},f={f_},x={x}"

    check("heptagon 2", heptagon_two())

    def equivariance():
        # eta_b(k,g) R^{ab}_d U_k(g>b, a; d) = eta_b(kgk^-1, k) R^{k>a,k>b}_{k>d} U_k(a,b;d)
        for k in G.elements:
            for (a, b, d) in cat.fusion:
                g = cat.grade[a]
                lhs = cat.eta(b, k, g) * cat.r(a, b, d) \
                    * cat.u(k, cat.act(g, b), a, d)
                rhs = cat.eta(b, G.conj(k, g), k) \
                    * cat.r(cat.act(k, a), cat.act(k, b), cat.act(k, d)) \
                    * cat.u(k, a, b, d)
                yield lhs == rhs, f"equivariance at k={k},({a},{b};{d})"

    check("action-braiding equivariance", equivariance())

    def twists():
        yield cat.twists.get(unit, cat.zero()).is_one(), "theta_1 != 1"
        for x in cat.simples_of_grade(e):
            th = cat.twists[x]
            yield not th.is_zero(), f"theta({x}) is zero"
            xd = cat.dual[x]
            if xd in cat.twists:
                yield cat.twists[xd] == th, f"theta({x}*) != theta({x})"
            gx_all = {cat.act(g, x) for g in G.elements}
            for y in gx_all:
                if y in cat.twists:
                    yield cat.twists[y] == th, f"theta(g>{x}) != theta({x})"
            # ribbon relation against the double braiding, channelwise
            for y in cat.simples_of_grade(e):
                for ch in cat.channels(x, y):
                    lhs = cat.r(x, y, ch) * cat.r(y, x, ch)
                    rhs = cat.twists[ch] * (cat.twists[x] * cat.twists[y]).inverse()
                    yield lhs == rhs, f"ribbon relation at ({x},{y};{ch})"

    check("twists", twists())

    # loop consistency through the graphical engine
    from . import treecalc

    def loops():
        for x in cat.simples:
            for up in (True, False):
                word = [treecalc.Cup(0, x, up), treecalc.Cap(0)]
                val = treecalc.evaluate_closed(cat, word)
                yield val == cat.qdims[x], \
                    f"loop({x}, up={up}) = {val}, want {cat.qdims[x]}"
        for x in cat.simples:
            # both zig-zags must straighten to the identity
            for fragment in treecalc.snake_words(cat, x):
                val = treecalc.evaluate_closed(cat, fragment)
                yield val == cat.qdims[x], f"snake on {x} evaluates to {val}"

    check("loop values", loops())

    return rep


# ---------------------------------------------------------------------------
# serialization (category file format)
# ---------------------------------------------------------------------------

def category_to_json(cat: CategoryData) -> dict:
    def s(v: Cyclotomic) -> dict:
        return v.to_json()

    return {
        "name": cat.name,
        "conductor": cat.conductor,
        "group": cat.group.to_json(),
        "simples": [
            {
                "name": cat.names[x],
                "grade": cat.grade[x],
                "dual": cat.dual[x],
                "qdim": s(cat.qdims[x]),
                "twist": s(cat.twists[x]) if x in cat.twists else None,
            }
            for x in cat.simples
        ],
        "fusion": sorted(list(t) for t in cat.fusion),
        "F": [[list(k), s(v)] for k, v in sorted(cat.f_symbols.items())],
        "R": [[list(k), s(v)] for k, v in sorted(cat.r_symbols.items())],
        "U": [[list(k), s(v)] for k, v in sorted(cat.u_symbols.items())],
        "eta": [[list(k), s(v)] for k, v in sorted(cat.eta_symbols.items())],
        "pivotal": [[[x], s(cat.pivotal[x])] for x in cat.simples],
        "action": [list(p) for p in cat.action_perm],
    }


def category_from_json(data: dict) -> CategoryData:
    def v(obj) -> Cyclotomic:
        return Cyclotomic.from_json(obj)

    conductor = int(data["conductor"])
    simples = data["simples"]
    twists = {}
    for x, rec in enumerate(simples):
        if rec.get("twist") is not None:
            twists[x] = v(rec["twist"])
    pivotal = [Cyclotomic.one(conductor)] * len(simples)
    for key, val in data.get("pivotal", []):
        pivotal[key[0]] = v(val)
    return CategoryData(
        group=GroupData.from_json(data["group"]),
        conductor=conductor,
        names=tuple(r["name"] for r in simples),
        grade=tuple(int(r["grade"]) for r in simples),
        dual=tuple(int(r["dual"]) for r in simples),
        qdims=tuple(v(r["qdim"]) for r in simples),
        twists=twists,
        fusion=frozenset(tuple(t) for t in data["fusion"]),
        f_symbols={tuple(k): v(val) for k, val in data.get("F", [])},
        r_symbols={tuple(k): v(val) for k, val in data.get("R", [])},
        u_symbols={tuple(k): v(val) for k, val in data.get("U", [])},
        eta_symbols={tuple(k): v(val) for k, val in data.get("eta", [])},
        pivotal=tuple(pivotal),
        name=data.get("name", "C"),
    )


def save_category(cat: CategoryData, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(category_to_json(cat), fh, indent=1)


def load_category(path) -> CategoryData:
    with open(path, encoding="utf-8") as fh:
        return category_from_json(json.load(fh))
