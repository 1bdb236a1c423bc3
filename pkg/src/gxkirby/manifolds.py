"""Builtin Kirby diagrams, fundamental groups, and Dijkgraaf-Witten counting."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import reduce

from .diagram import (
    DiagramError,
    KirbyDiagram,
    Leg,
    ThreeHandle,
    TwoHandle,
    WCap,
    WCoupon,
    WCross,
    WCup,
    disjoint_union,
)
from .gxcat import CategoryData, GroupData


def s4() -> KirbyDiagram:
    """S^4: a 0-handle and a 4-handle, nothing to draw."""
    return KirbyDiagram("s4", 0, (), (), (), euler=2, signature=0)


def s1_x_s3() -> KirbyDiagram:
    """S^1 x S^3: one 1-handle and one 3-handle; the sheet encloses one ball."""
    word = (
        WCoupon(0, 0, "phi", (), cover=(((0, 1),),)),
        WCoupon(0, 0, "phitilde", ()),
    )
    return KirbyDiagram(
        "s1_x_s3", 1, (), (ThreeHandle(0),), word, euler=0, signature=0
    )


def s1_x_s3_flipped() -> KirbyDiagram:
    """The 3-infinity-moved encoding: the sheet encloses the other ball."""
    word = (
        WCoupon(0, 0, "phi", ()),
        WCoupon(0, 0, "phitilde", (), cover=(((0, -1),),)),
    )
    return KirbyDiagram(
        "s1_x_s3_flipped", 1, (), (ThreeHandle(0),), word, euler=0, signature=0
    )


def s2_x_s2() -> KirbyDiagram:
    """S^2 x S^2: the Hopf link of two 0-framed 2-handles."""
    word = (
        WCup(0, 0, True),
        WCup(1, 1, True),
        WCross(0, 1),
        WCross(0, 1),
        WCap(1),
        WCap(0),
    )
    return KirbyDiagram(
        "s2_x_s2", 0, (TwoHandle(0), TwoHandle(1)), (), word, euler=4, signature=0
    )


def cp2_plus() -> KirbyDiagram:
    """CP^2: a single 2-handle on the +1-framed unknot."""
    word = (WCup(0, 0, True), WCap(0))
    return KirbyDiagram(
        "cp2_plus", 0, (TwoHandle(0, framing=1),), (), word, euler=3, signature=1
    )


def cp2_minus() -> KirbyDiagram:
    """The orientation reverse of CP^2: the -1-framed unknot."""
    word = (WCup(0, 0, True), WCap(0))
    return KirbyDiagram(
        "cp2_minus", 0, (TwoHandle(0, framing=-1),), (), word, euler=3, signature=-1
    )


def s1_x_s1_x_s2() -> KirbyDiagram:
    """S^1 x S^1 x S^2: two 1-handles, two 2-handles, two 3-handles.

    The square strand of 2-handle 0 runs through both 1-handles twice; the
    commutator-degree 2-handle 1 encircles its top edge.  Sheet A (3-handle 0)
    covers the phi-ball of 1-handle 0 and the right/top segments; sheet B
    (3-handle 1) covers the phi-ball of 1-handle 1 and the left/top segments.
    """
    A, B = ((0, 1),), ((1, 1),)
    word = (
        # bottom-left ball of 1-handle 0: legs (left edge in, bottom out)
        WCoupon(0, 0, "phitilde", (Leg(0, False, (B,)), Leg(0, True))),
        # bottom-right ball of 1-handle 1: legs (bottom in, right edge out)
        WCoupon(2, 1, "phitilde", (Leg(0, False), Leg(0, True, (A,)))),
        WCap(1),
        # top-left ball of 1-handle 1, covered by sheet B
        WCoupon(0, 1, "phi", (Leg(0, False, (A, B)), Leg(0, True, (B,))), cover=(B,)),
        WCap(1),
        # top-right ball of 1-handle 0, covered by sheet A
        WCoupon(2, 0, "phi", (Leg(0, False, (A,)), Leg(0, True, (B, A))), cover=(A,)),
        WCap(1),
        # the commutator-graded 2-handle encircles the top edge
        WCup(2, 1, True),
        WCross(1, 1),
        WCross(1, 1),
        WCap(2),
        WCap(0),
    )
    three = (
        ThreeHandle(0, ((1, 1), (1, -1))),
        ThreeHandle(1, ((1, 1), (1, -1))),
    )
    return KirbyDiagram(
        "s1_x_s1_x_s2", 2, (TwoHandle(0), TwoHandle(1)), three, word,
        euler=0, signature=0,
    )


BUILTINS = {
    "s4": s4,
    "s1_x_s3": s1_x_s3,
    "s1_x_s3_flipped": s1_x_s3_flipped,
    "s2_x_s2": s2_x_s2,
    "cp2_plus": cp2_plus,
    "cp2_minus": cp2_minus,
    "s1_x_s1_x_s2": s1_x_s1_x_s2,
}


def builtin(name: str) -> KirbyDiagram:
    if name not in BUILTINS:
        raise DiagramError(
            f"unknown builtin manifold {name!r}; known: {', '.join(sorted(BUILTINS))}"
        )
    return BUILTINS[name]()


def connected_sum(names) -> KirbyDiagram:
    """Disjoint union of builtin diagrams, a diagram for the connected sum."""
    parts = [builtin(n) if isinstance(n, str) else n for n in names]
    if not parts:
        return s4()
    return reduce(disjoint_union, parts)


# ---------------------------------------------------------------------------
# fundamental group and Dijkgraaf-Witten counting
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GroupPresentation:
    """Generators indexed by 3-handles; one relator word per 2-handle."""

    generators: tuple[int, ...]
    relators: tuple[tuple[tuple[int, int], ...], ...]

    def relator_words(self, names: dict | None = None) -> list[str]:
        names = names or {g: chr(ord("A") + i) for i, g in enumerate(self.generators)}
        out = []
        for rel in self.relators:
            if not rel:
                out.append("1")
                continue
            out.append(
                "".join(names[g] + ("" if s > 0 else "^-1") for g, s in rel)
            )
        return out


def pi1_presentation(k: KirbyDiagram) -> GroupPresentation:
    """Present pi_1 with 3-handles as generators and 2-handles as relations."""
    from .diagram import _incidence

    relators = []
    for h in k.two_handles:
        relators.append(tuple(_incidence(k, h.id)))
    for gen, _ in itertools.chain.from_iterable(relators):
        if gen not in k.h3_ids:
            raise DiagramError(f"relator references unknown generator {gen}")
    return GroupPresentation(k.h3_ids, tuple(relators))


def dw_count(pres: GroupPresentation, group: GroupData) -> int:
    """|Hom(pi_1, G)| by brute force over generator assignments."""
    gens = pres.generators
    count = 0
    for values in itertools.product(group.elements, repeat=len(gens)):
        assign = dict(zip(gens, values))
        ok = True
        for rel in pres.relators:
            total = 0
            for gen, sign in rel:
                v = assign[gen] if sign > 0 else group.inv(assign[gen])
                total = group.mul(total, v)
            if total != 0:
                ok = False
                break
        if ok:
            count += 1
    return count


def is_trivial_degree_trivial_action(cat: CategoryData) -> bool:
    """Hypothesis of the Dijkgraaf-Witten factorisation.

    Concentrated in trivial degree, and the action is trivial as a monoidal
    functor: trivial on labels and with trivial U and eta data.
    """
    if any(g != 0 for g in cat.grade):
        return False
    for g in cat.group.elements:
        if tuple(cat.action_perm[g]) != tuple(cat.simples):
            return False
    if any(not v.is_one() for v in cat.u_symbols.values()):
        return False
    if any(not v.is_one() for v in cat.eta_symbols.values()):
        return False
    return True


def dw_factorization_check(k: KirbyDiagram, cat: CategoryData) -> bool:
    """Whether I(K) = |Hom(pi_1, G)| * CY-hat(K) holds, both sides independent."""
    from .invariant import _cy_via_restriction, invariant

    if not is_trivial_degree_trivial_action(cat):
        raise DiagramError(
            "DW factorisation requires a trivially concentrated grading and a "
            "trivial action"
        )
    lhs = invariant(k, cat).value
    dw = dw_count(pi1_presentation(k), cat.group)
    cy = _cy_via_restriction(k, cat)
    return lhs == cat.rational(dw) * cy
