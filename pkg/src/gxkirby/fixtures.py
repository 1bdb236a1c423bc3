"""Built-in category fixtures.

Everything here is desk-scale data entered by hand and certified by
`validate_category`; the validator, not this module, is the authority on
axiom compliance.
"""

from __future__ import annotations

from fractions import Fraction

from .gxcat import CategoryData, CategoryError, GroupData
from .scalars import Cyclotomic, root_of_unity


def _complete_tables(
    group: GroupData,
    conductor: int,
    grade,
    dual,
    fusion,
    action,
    f_over=None,
    r_over=None,
    u_over=None,
    eta_over=None,
):
    """Fill F/R/U/eta tables with 1 on every admissible key, then override."""
    one = Cyclotomic.one(conductor)
    rank = len(grade)
    simples = range(rank)

    def channels(a, b):
        return [c for c in simples if (a, b, c) in fusion]

    f_symbols = {}
    for (a, b, e) in fusion:
        for c in simples:
            for d in channels(e, c):
                for f in channels(b, c):
                    if (a, f, d) in fusion:
                        f_symbols[(a, b, c, d, e, f)] = one
    r_symbols = {trip: one for trip in fusion}
    u_symbols = {
        (g, a, b, c): one for g in group.elements for (a, b, c) in fusion
    }
    eta_symbols = {
        (x, g, h): one
        for x in simples
        for g in group.elements
        for h in group.elements
    }
    for table, over in (
        (f_symbols, f_over),
        (r_symbols, r_over),
        (u_symbols, u_over),
        (eta_symbols, eta_over),
    ):
        if over:
            for key, val in over.items():
                if key not in table:
                    raise CategoryError(f"override on inadmissible key {key}")
                table[key] = val
    return f_symbols, r_symbols, u_symbols, eta_symbols


def _derive_pivotal(conductor, dual, qdims, f_symbols):
    out = []
    for x in range(len(dual)):
        xd = dual[x]
        out.append(qdims[x] * f_symbols[(xd, x, xd, xd, 0, 0)])
    return tuple(out)


def pointed_category(
    a_group: GroupData,
    g_group: GroupData,
    grading_hom,
    action_hom,
    name: str = "pointed",
) -> CategoryData:
    """Invertible simples indexed by A, trivial associator and braiding.

    grading_hom maps A to G; action_hom maps each element of G to a
    permutation of A.  Compatibility (homomorphism properties, grade
    conjugation, and the crossed-commutativity needed for a trivial crossed
    braiding) is checked up front.
    """
    A, G = a_group, g_group
    grading_hom = tuple(grading_hom)
    action_hom = tuple(tuple(p) for p in action_hom)
    if len(grading_hom) != A.order or len(action_hom) != G.order:
        raise CategoryError("homomorphism tables have wrong size")
    for a in A.elements:
        for b in A.elements:
            if G.mul(grading_hom[a], grading_hom[b]) != grading_hom[A.mul(a, b)]:
                raise CategoryError("grading_hom is not a group homomorphism")
    if tuple(action_hom[0]) != tuple(A.elements):
        raise CategoryError("action of the identity must be trivial")
    for g in G.elements:
        perm = action_hom[g]
        for a in A.elements:
            for b in A.elements:
                if perm[A.mul(a, b)] != A.mul(perm[a], perm[b]):
                    raise CategoryError(f"action of {g} is not an automorphism")
        for h in G.elements:
            for a in A.elements:
                if action_hom[g][action_hom[h][a]] != action_hom[G.mul(g, h)][a]:
                    raise CategoryError("action_hom is not a homomorphism")
        for a in A.elements:
            if grading_hom[perm[a]] != G.conj(g, grading_hom[a]):
                raise CategoryError("action incompatible with grading conjugation")
    for a in A.elements:
        for b in A.elements:
            # trivial crossed braiding needs a b a^-1 = (deg a)>b
            if A.mul(A.mul(a, b), A.inv(a)) != action_hom[grading_hom[a]][b]:
                raise CategoryError(
                    "grading/action violate crossed commutativity; "
                    "a trivial braiding is inconsistent"
                )
    conductor = 1
    one = Cyclotomic.one(conductor)
    fusion = frozenset(
        (a, b, A.mul(a, b)) for a in A.elements for b in A.elements
    )
    grade = grading_hom
    dual = tuple(A.inv(a) for a in A.elements)
    f_s, r_s, u_s, eta_s = _complete_tables(G, conductor, grade, dual, fusion, action_hom)
    qdims = tuple(one for _ in A.elements)
    return CategoryData(
        group=G,
        conductor=conductor,
        names=tuple(f"a{a}" if a else "1" for a in A.elements),
        grade=grade,
        dual=dual,
        qdims=qdims,
        twists={a: one for a in A.elements if grading_hom[a] == 0},
        fusion=fusion,
        f_symbols=f_s,
        r_symbols=r_s,
        action_perm=action_hom,
        u_symbols=u_s,
        eta_symbols=eta_s,
        pivotal=_derive_pivotal(conductor, dual, qdims, f_s),
        name=name,
    )


def vect_z3_z2_trivial() -> CategoryData:
    """Z3-graded vector spaces with a trivial Z2 grading and action."""
    z3, z2 = GroupData.cyclic(3), GroupData.cyclic(2)
    cat = pointed_category(
        z3, z2, [0, 0, 0], [(0, 1, 2), (0, 1, 2)], name="vect_z3_z2_trivial"
    )
    return _rename(cat, ("1", "w", "w*"))


def vect_z3_z2_twisted() -> CategoryData:
    """Same underlying category, but sigma in Z2 swaps w and w*."""
    z3, z2 = GroupData.cyclic(3), GroupData.cyclic(2)
    cat = pointed_category(
        z3, z2, [0, 0, 0], [(0, 1, 2), (0, 2, 1)], name="vect_z3_z2_twisted"
    )
    return _rename(cat, ("1", "w", "w*"))


def _rename(cat: CategoryData, names) -> CategoryData:
    cat.names = tuple(names)
    return cat


def _trivially_graded(
    name, conductor, names, dual, qdims, twists, fusion,
    f_over, r_over, group: GroupData | None,
) -> CategoryData:
    """A braided category viewed as G-crossed with trivial grading and action."""
    G = group or GroupData.trivial()
    rank = len(names)
    grade = tuple(0 for _ in range(rank))
    action = tuple(tuple(range(rank)) for _ in G.elements)
    f_s, r_s, u_s, eta_s = _complete_tables(
        G, conductor, grade, dual, fusion, action, f_over=f_over, r_over=r_over
    )
    return CategoryData(
        group=G,
        conductor=conductor,
        names=tuple(names),
        grade=grade,
        dual=tuple(dual),
        qdims=tuple(qdims),
        twists=dict(twists),
        fusion=frozenset(fusion),
        f_symbols=f_s,
        r_symbols=r_s,
        action_perm=action,
        u_symbols=u_s,
        eta_symbols=eta_s,
        pivotal=_derive_pivotal(conductor, dual, qdims, f_s),
        name=name,
    )


def semion(group: GroupData | None = None) -> CategoryData:
    """The semion model: Z2 fusion, F[sss;s] = -1, R[ss;1] = i, theta_s = i."""
    n = 4
    one = Cyclotomic.one(n)
    i = root_of_unity(4, 1)
    minus_one = Cyclotomic.from_rational(n, -1)
    fusion = {(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0)}
    return _trivially_graded(
        "semion", n, ("1", "s"), (0, 1), (one, one),
        {0: one, 1: i}, fusion,
        f_over={(1, 1, 1, 1, 0, 0): minus_one},
        r_over={(1, 1, 0): i},
        group=group,
    )


def fibonacci(group: GroupData | None = None) -> CategoryData:
    """The Fibonacci model in a square-root-free gauge over Q(zeta_5)."""
    n = 5
    one = Cyclotomic.one(n)
    z = root_of_unity(5, 1)
    # 2 cos(72 deg) = zeta + zeta^4 is 1/phi; phi solves phi^2 = phi + 1.
    inv_phi = z + z**4
    phi = one + inv_phi
    fusion = {(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0), (1, 1, 1)}
    f_over = {
        (1, 1, 1, 1, 0, 0): inv_phi,
        (1, 1, 1, 1, 0, 1): inv_phi,
        (1, 1, 1, 1, 1, 0): one,
        (1, 1, 1, 1, 1, 1): -inv_phi,
    }
    r_over = {
        (1, 1, 0): z**3,        # e^(-4 pi i / 5)
        (1, 1, 1): -(z**4),     # e^(+3 pi i / 5)
    }
    return _trivially_graded(
        "fibonacci", n, ("1", "t"), (0, 1), (one, phi),
        {0: one, 1: z**2}, fusion,
        f_over=f_over, r_over=r_over, group=group,
    )


def rep_z2(group: GroupData | None = None) -> CategoryData:
    """Representations of Z2: a rank-2 symmetric category, all data trivial."""
    one = Cyclotomic.one(1)
    fusion = {(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0)}
    return _trivially_graded(
        "rep_z2", 1, ("1", "p"), (0, 1), (one, one),
        {0: one, 1: one}, fusion, f_over=None, r_over=None, group=group,
    )


def z2_crossed() -> CategoryData:
    """A faithfully Z2-graded pointed category with crossed braiding -1.

    The simple m sits in the nontrivial grade; C_e is trivial.  This is the
    smallest fixture with nonempty nontrivial sectors, used to exercise the
    graded machinery (Kirby colours, graded dimensions, sliding).
    """
    G = GroupData.cyclic(2)
    one = Cyclotomic.one(1)
    minus_one = Cyclotomic.from_rational(1, -1)
    fusion = frozenset({(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0)})
    grade = (0, 1)
    dual = (0, 1)
    action = ((0, 1), (0, 1))
    f_s, r_s, u_s, eta_s = _complete_tables(
        G, 1, grade, dual, fusion, action, r_over={(1, 1, 0): minus_one}
    )
    qdims = (one, one)
    return CategoryData(
        group=G,
        conductor=1,
        names=("1", "m"),
        grade=grade,
        dual=dual,
        qdims=qdims,
        twists={0: one},
        fusion=fusion,
        f_symbols=f_s,
        r_symbols=r_s,
        action_perm=action,
        u_symbols=u_s,
        eta_symbols=eta_s,
        pivotal=_derive_pivotal(1, dual, qdims, f_s),
        name="z2_crossed",
    )


def _vect_z2_base(name, u_over=None, eta_over=None) -> CategoryData:
    G = GroupData.cyclic(2)
    one = Cyclotomic.one(1)
    fusion = frozenset({(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0)})
    grade = (0, 0)
    dual = (0, 1)
    action = ((0, 1), (0, 1))
    f_s, r_s, u_s, eta_s = _complete_tables(
        G, 1, grade, dual, fusion, action, u_over=u_over, eta_over=eta_over
    )
    qdims = (one, one)
    return CategoryData(
        group=G,
        conductor=1,
        names=("1", "m"),
        grade=grade,
        dual=dual,
        qdims=qdims,
        twists={0: one, 1: one},
        fusion=fusion,
        f_symbols=f_s,
        r_symbols=r_s,
        action_perm=action,
        u_symbols=u_s,
        eta_symbols=eta_s,
        pivotal=_derive_pivotal(1, dual, qdims, f_s),
        name=name,
    )


def vect_z2_eta() -> CategoryData:
    """Vect_Z2 with a Z2 "action" whose only nontrivial datum is eta_m(s,s) = -1.

    The action functors are identities; the composition coherence is the
    nontrivial monoidal natural automorphism.  Exercises the eta bookkeeping
    of the evaluator without moving any labels.
    """
    minus_one = Cyclotomic.from_rational(1, -1)
    return _vect_z2_base("vect_z2_eta", eta_over={(1, 1, 1): minus_one})


def vect_z2_u() -> CategoryData:
    """Vect_Z2 where sigma acts on the (m, m; 1) fusion vertex by -1.

    The label action is trivial but the functor for sigma is the nontrivial
    monoidal autoequivalence; exercises the U bookkeeping for covered coupons.
    """
    minus_one = Cyclotomic.from_rational(1, -1)
    return _vect_z2_base("vect_z2_u", u_over={(1, 1, 1, 0): minus_one})


def premodular_fixture(name: str, group: GroupData | None = None) -> CategoryData:
    """A ribbon fusion category as a G-crossed BSFC with trivial grading/action."""
    builders = {"semion": semion, "fibonacci": fibonacci, "rep_z2": rep_z2}
    if name not in builders:
        raise CategoryError(f"unknown premodular fixture {name!r}")
    return builders[name](group)


FIXTURES = {
    "vect_z3_z2_trivial": vect_z3_z2_trivial,
    "vect_z3_z2_twisted": vect_z3_z2_twisted,
    "semion": semion,
    "fibonacci": fibonacci,
    "rep_z2": rep_z2,
    "z2_crossed": z2_crossed,
    "vect_z2_eta": vect_z2_eta,
    "vect_z2_u": vect_z2_u,
}


def fixture(name: str) -> CategoryData:
    if name not in FIXTURES:
        raise CategoryError(
            f"unknown fixture {name!r}; known: {', '.join(sorted(FIXTURES))}"
        )
    return FIXTURES[name]()
