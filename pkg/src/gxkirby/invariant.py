"""The closed-4-manifold invariant: a sum of diagram evaluations.

For each assignment of group elements to 3-handles, 2-handles carry the Kirby
colour of their induced degree and 1-handles carry entangled dual-basis sums;
the total is normalised by the global dimension to the power |K1| - |K2|.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import gxcat
from .diagram import (
    DiagramError,
    KirbyDiagram,
    Labelling,
    coupon_dims,
    degree_of_2handle,
    evaluate_labelled,
)
from .gxcat import CategoryData
from .manifolds import builtin
from .scalars import Cyclotomic


@dataclass
class InvariantResult:
    value: Cyclotomic
    contributions: dict | None = None  # g-labelling tuple -> unnormalised term


def invariant(
    k: KirbyDiagram, cat: CategoryData, keep_contributions: bool = False
) -> InvariantResult:
    """Evaluate the invariant of a Kirby diagram against a category."""
    if cat.rank == 0:
        raise DiagramError("category has no simple objects")
    G = cat.group
    h3_ids = k.h3_ids
    h2_ids = k.h2_ids
    total = cat.zero()
    contributions: dict | None = {} if keep_contributions else None

    for gvals in itertools.product(G.elements, repeat=len(h3_ids)):
        g = dict(zip(h3_ids, gvals))
        supports = []
        empty = False
        for h2 in h2_ids:
            deg = degree_of_2handle(k, h2, g, G)
            support = cat.simples_of_grade(deg)
            if not support:
                empty = True
                break
            supports.append(support)
        if empty:
            if contributions is not None:
                contributions[gvals] = cat.zero()
            continue
        contrib = cat.zero()
        for xvals in itertools.product(*supports):
            x = dict(zip(h2_ids, xvals))
            dims = coupon_dims(k, g, x, cat)
            if any(d == 0 for d in dims.values()):
                continue
            weight = cat.one()
            for h2 in h2_ids:
                weight = weight * cat.qdims[x[h2]]
            iota_ranges = [range(dims[h1]) for h1 in range(k.n1)]
            for iota_vals in itertools.product(*iota_ranges):
                lab = Labelling(g, x, dict(enumerate(iota_vals)))
                contrib = contrib + weight * evaluate_labelled(k, lab, cat)
        total = total + contrib
        if contributions is not None:
            contributions[gvals] = contrib

    norm = gxcat.global_dim(cat) ** (k.n1 - len(k.two_handles))
    return InvariantResult(total * norm, contributions)


def _cy_via_restriction(k: KirbyDiagram, cat: CategoryData) -> Cyclotomic:
    """The renormalised Crane-Yetter value of the trivially graded part.

    Computed as the invariant of the same diagram against C_e over the
    trivial group (for which 3-handle labels are forced to e).
    """
    return invariant(k, gxcat.restrict_to_grade_e(cat)).value


def crane_yetter_hat(k: KirbyDiagram, cat: CategoryData) -> Cyclotomic:
    """Renormalised Crane-Yetter invariant of a 3-handle-free diagram."""
    if k.three_handles:
        raise DiagramError(
            f"{k.name} has 3-handles; the Crane-Yetter reduction needs a "
            f"3-handle-free diagram"
        )
    return _cy_via_restriction(k, cat)


def crane_yetter_identity_holds(k: KirbyDiagram, cat: CategoryData) -> bool:
    """Check I(K) = CY-hat(K) * (dim Omega_C / dim Omega_e)^(2 - chi)."""
    lhs = invariant(k, cat).value
    ratio = gxcat.global_dim(cat) / gxcat.graded_dim(cat, 0)
    rhs = crane_yetter_hat(k, cat) * ratio ** (2 - k.euler)
    return lhs == rhs


def simply_connected_value(cat: CategoryData, chi: int, sigma: int) -> Cyclotomic:
    """I(M) for simply connected M from Euler characteristic and signature."""
    if (chi + sigma) % 2 or (chi - sigma) % 2:
        raise DiagramError(
            f"(chi, sigma) = ({chi}, {sigma}) is not realisable: chi +- sigma "
            f"must both be even"
        )
    for sign in (1, -1):
        if gxcat.gauss_sum(cat, sign).is_zero():
            raise DiagramError(
                "the Gauss sum of C_e is not invertible; the simply connected "
                "formula does not apply"
            )
    plus = invariant(builtin("cp2_plus"), cat).value
    minus = invariant(builtin("cp2_minus"), cat).value
    return plus ** ((chi + sigma) // 2 - 1) * minus ** ((chi - sigma) // 2 - 1)


STATE_SPACE_BUILDERS = {
    "s3": "s1_x_s3",
    "s1_x_s2": "s1_x_s1_x_s2",
}


def state_space_dim(cat: CategoryData, n3: str) -> Cyclotomic:
    """dim Z(N) = I(S^1 x N) / (dim Omega_C * |G|) for builtin 3-manifolds N."""
    if n3 not in STATE_SPACE_BUILDERS:
        raise DiagramError(
            f"no S^1 x N builder for N = {n3!r}; known: "
            f"{', '.join(sorted(STATE_SPACE_BUILDERS))}"
        )
    k = builtin(STATE_SPACE_BUILDERS[n3])
    value = invariant(k, cat).value
    denom = gxcat.global_dim(cat) * cat.rational(cat.group.order)
    return value / denom
