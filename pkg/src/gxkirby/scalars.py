"""Exact arithmetic in cyclotomic fields Q(zeta_N).

Every number appearing in a category fixture or a diagram evaluation lives in
a single cyclotomic field, fixed by the category's conductor N.  Values are
stored as coordinate vectors over the power basis 1, z, ..., z^(phi(N)-1)
reduced modulo the N-th cyclotomic polynomial, which makes equality testing
exact and canonical.  Floating point only ever appears in `to_float`, which is
cosmetic output for the CLI.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from functools import lru_cache


class ScalarError(ValueError):
    """Raised on ill-typed scalar arithmetic (conductor mismatch, 1/0, ...)."""


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, low degree first, monic."""
    if n < 1:
        raise ScalarError(f"conductor must be >= 1, got {n}")
    # x^n - 1 = prod_{d | n} Phi_d; divide out the proper divisors.
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly = _poly_divide_exact(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


def _poly_divide_exact(num: list[int], den: list[int]) -> list[int]:
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        q, r = divmod(num[i + len(den) - 1], den[-1])
        assert r == 0, "cyclotomic division is exact"
        out[i] = q
        for j, c in enumerate(den):
            num[i + j] -= q * c
    assert all(c == 0 for c in num), "cyclotomic division leaves no remainder"
    return out


@lru_cache(maxsize=None)
def _power_table(n: int) -> tuple[tuple[Fraction, ...], ...]:
    """x^k mod Phi_n for k = 0 .. 2*(phi-1), as phi-length rows."""
    phi_poly = cyclotomic_polynomial(n)
    deg = len(phi_poly) - 1
    rows: list[tuple[Fraction, ...]] = []
    cur = [Fraction(0)] * deg
    cur[0] = Fraction(1)
    rows.append(tuple(cur))
    for _ in range(2 * deg - 2):
        nxt = [Fraction(0)] + cur[:-1]
        top = cur[-1]
        if top:
            for j in range(deg):
                nxt[j] -= top * phi_poly[j]
        cur = nxt
        rows.append(tuple(cur))
    return tuple(rows)


def _reduce(n: int, raw: list[Fraction]) -> tuple[Fraction, ...]:
    """Reduce a coefficient list of arbitrary length modulo Phi_n."""
    deg = len(cyclotomic_polynomial(n)) - 1
    table = _power_table(n)
    out = [Fraction(0)] * deg
    for k, c in enumerate(raw):
        if not c:
            continue
        if k < deg:
            out[k] += c
        elif k < len(table):
            row = table[k]
            for j in range(deg):
                out[j] += c * row[j]
        else:
            # Fall back for exponents beyond the multiplication range.
            row = _reduce(n, [Fraction(0)] * (k - 1) + [Fraction(1)])
            tmp = _reduce(n, [Fraction(0)] + list(row))
            for j in range(deg):
                out[j] += c * tmp[j]
    return tuple(out)


class Cyclotomic:
    """An element of Q(zeta_N) in canonical reduced form.

    Instances are immutable; all arithmetic returns new objects.  Mixing
    conductors raises, use `embed` to move into a larger field first.
    """

    __slots__ = ("order", "coeffs", "_hash")

    def __init__(self, order: int, coeffs):
        if order < 1:
            raise ScalarError(f"conductor must be >= 1, got {order}")
        deg = len(cyclotomic_polynomial(order)) - 1
        vec = [Fraction(c) for c in coeffs]
        if len(vec) > deg:
            vec = list(_reduce(order, vec))
        else:
            vec += [Fraction(0)] * (deg - len(vec))
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "coeffs", tuple(vec))
        object.__setattr__(self, "_hash", None)

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_rational(cls, order: int, value) -> Cyclotomic:
        return cls(order, [Fraction(value)])

    @classmethod
    def zero(cls, order: int) -> Cyclotomic:
        return cls(order, [])

    @classmethod
    def one(cls, order: int) -> Cyclotomic:
        return cls(order, [1])

    # -- ring structure ----------------------------------------------------

    def _check(self, other: Cyclotomic) -> None:
        if not isinstance(other, Cyclotomic):
            raise ScalarError(f"expected Cyclotomic, got {type(other).__name__}")
        if self.order != other.order:
            raise ScalarError(
                f"conductor mismatch: {self.order} vs {other.order}; embed first"
            )

    def __add__(self, other: Cyclotomic) -> Cyclotomic:
        self._check(other)
        return Cyclotomic(self.order, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other: Cyclotomic) -> Cyclotomic:
        self._check(other)
        return Cyclotomic(self.order, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self) -> Cyclotomic:
        return Cyclotomic(self.order, [-a for a in self.coeffs])

    def __mul__(self, other: Cyclotomic) -> Cyclotomic:
        self._check(other)
        a, b = self.coeffs, other.coeffs
        deg = len(a)
        conv = [Fraction(0)] * (2 * deg - 1)
        for i, ai in enumerate(a):
            if not ai:
                continue
            for j, bj in enumerate(b):
                if bj:
                    conv[i + j] += ai * bj
        return Cyclotomic(self.order, conv)

    def __truediv__(self, other: Cyclotomic) -> Cyclotomic:
        self._check(other)
        return self * other.inverse()

    def __pow__(self, k: int) -> Cyclotomic:
        if k < 0:
            return self.inverse() ** (-k)
        out = Cyclotomic.one(self.order)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def inverse(self) -> Cyclotomic:
        """Field inverse via the extended Euclidean algorithm against Phi_N."""
        if self.is_zero():
            raise ScalarError("inverse of zero")
        phi = [Fraction(c) for c in cyclotomic_polynomial(self.order)]
        # Invariants: s * self + (...) * Phi = r, for (r, s) running down the
        # Euclidean remainder sequence.
        r0, s0 = phi, [Fraction(0)]
        r1, s1 = list(self.coeffs), [Fraction(1)]
        r1 = _trim(r1)
        while _degree(r1) > 0:
            q = _poly_divmod(r0, r1)
            r0, r1 = r1, _poly_sub(r0, _poly_mul(q, r1))
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
            r1 = _trim(r1)
        lead = r1[0]
        inv = [c / lead for c in s1]
        return Cyclotomic(self.order, inv)

    def conjugate(self) -> Cyclotomic:
        """Complex conjugation, zeta |-> zeta^(N-1)."""
        n = self.order
        raw = [Fraction(0)] * n
        for k, c in enumerate(self.coeffs):
            raw[(n - k) % n] += c
        return Cyclotomic(n, raw)

    # -- predicates and conversions ----------------------------------------

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_one(self) -> bool:
        return self.coeffs[0] == 1 and all(c == 0 for c in self.coeffs[1:])

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise ScalarError(f"{self} is not rational")
        return self.coeffs[0]

    def embed(self, order: int) -> Cyclotomic:
        """Re-express in Q(zeta_M) for a multiple M of the current conductor."""
        if order % self.order != 0:
            raise ScalarError(f"cannot embed conductor {self.order} into {order}")
        step = order // self.order
        raw = [Fraction(0)] * (len(self.coeffs) * step)
        for k, c in enumerate(self.coeffs):
            raw[k * step] = c
        return Cyclotomic(order, raw)

    def to_complex(self) -> complex:
        z = cmath.exp(2j * cmath.pi / self.order)
        return sum(float(c) * z**k for k, c in enumerate(self.coeffs))

    # -- dunder plumbing -----------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        h = self._hash
        if h is None:
            h = hash((self.order, self.coeffs))
            object.__setattr__(self, "_hash", h)
        return h

    def __repr__(self) -> str:
        return f"Cyclotomic({self.order}, {self})"

    def __str__(self) -> str:
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if k == 0:
                terms.append(str(c))
            else:
                gen = f"z{self.order}" if k == 1 else f"z{self.order}^{k}"
                if c == 1:
                    terms.append(gen)
                elif c == -1:
                    terms.append(f"-{gen}")
                else:
                    terms.append(f"{c}*{gen}")
        if not terms:
            return "0"
        out = terms[0]
        for t in terms[1:]:
            out += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
        return out

    def __setattr__(self, *args):
        raise AttributeError("Cyclotomic values are immutable")

    # -- serialization -------------------------------------------------------

    def to_json(self) -> dict:
        return {"order": self.order, "coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: dict) -> Cyclotomic:
        return cls(int(data["order"]), [Fraction(c) for c in data["coeffs"]])


# -- polynomial helpers for the inverse --------------------------------------

def _trim(p: list[Fraction]) -> list[Fraction]:
    while len(p) > 1 and p[-1] == 0:
        p = p[:-1]
    return p


def _degree(p: list[Fraction]) -> int:
    p = _trim(list(p))
    return len(p) - 1 if any(p) else -1


def _poly_mul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if not ai:
            continue
        for j, bj in enumerate(b):
            out[i + j] += ai * bj
    return out


def _poly_sub(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    n = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (n - len(a))
    b = list(b) + [Fraction(0)] * (n - len(b))
    return [x - y for x, y in zip(a, b)]


def _poly_divmod(num: list[Fraction], den: list[Fraction]) -> list[Fraction]:
    """Quotient of num by den over Q (remainder discarded by the caller)."""
    num = _trim(list(num))
    den = _trim(list(den))
    if _degree(num) < _degree(den):
        return [Fraction(0)]
    q = [Fraction(0)] * (_degree(num) - _degree(den) + 1)
    rem = list(num)
    for i in range(len(q) - 1, -1, -1):
        coef = rem[i + _degree(den)] / den[-1]
        q[i] = coef
        for j, c in enumerate(den):
            rem[i + j] -= coef * c
    return q


# -- module-level operations (the public op set) ------------------------------

def root_of_unity(order: int, k: int) -> Cyclotomic:
    """zeta_order^k in canonical reduced form."""
    if order < 1:
        raise ScalarError(f"conductor must be >= 1, got {order}")
    k %= order
    return Cyclotomic(order, [Fraction(0)] * k + [Fraction(1)])


def add(a: Cyclotomic, b: Cyclotomic) -> Cyclotomic:
    return a + b


def mul(a: Cyclotomic, b: Cyclotomic) -> Cyclotomic:
    return a * b


def conjugate(a: Cyclotomic) -> Cyclotomic:
    return a.conjugate()


def inverse(a: Cyclotomic) -> Cyclotomic:
    return a.inverse()


def is_zero(a: Cyclotomic) -> bool:
    return a.is_zero()


def embed(a: Cyclotomic, order: int) -> Cyclotomic:
    return a.embed(order)


def to_float(a: Cyclotomic) -> complex:
    return a.to_complex()
