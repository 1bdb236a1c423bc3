"""Gate-word evaluation of labelled diagrams in the graphical calculus.

A diagram slice is a row of oriented wires; its state is a vector over
left-parenthesised fusion trees rooted at the monoidal unit.  Words of gates
(cups, caps, crossings, sheet fold lines, coupon insertions) are applied bottom
to top; a closed word ends on the empty row, and its value is the coefficient
of the empty tree.

Wire bookkeeping: a wire knows its current simple label, its orientation, and
the composite group element `cov` of the sheets currently acting on it.  A
down-oriented wire of label X is treated as X* everywhere ("effective label").
Crossings braid the current labels with the current R-symbols; the moved wire
picks up the over-strand's degree both in its label and in `cov`, paying an
eta coherence when it was already covered.  Fold lines never change labels
(the two layers of a fold cancel); they only contribute eta scalars.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple

from .gxcat import CategoryData, CategoryError, FusionAlgebraElement, _invert_matrix
from .scalars import Cyclotomic


class EvaluationError(ValueError):
    """Raised for malformed gate words (bad positions, non-closing words)."""


class WireState(NamedTuple):
    label: int      # current ribbon label (a simple of the category)
    up: bool        # orientation; a down wire is evaluated as the dual
    cov: int = 0    # composite group element of the sheets acting here


class Tree(NamedTuple):
    """A fusion-tree basis vector: leaves plus prefix-total channels.

    inner[k] is the total of leaves 0..k for k = 0 .. n-2; the root (total of
    everything) is always the unit and is not stored.
    """

    leaves: tuple[WireState, ...]
    inner: tuple[int, ...]


EMPTY_TREE = Tree((), ())

# A diagram state: finitely many trees with scalar weights.
DiagramState = dict  # Tree -> Cyclotomic


def eff(cat: CategoryData, w: WireState) -> int:
    return w.label if w.up else cat.dual[w.label]


def _totals(tree: Tree) -> list[int]:
    """Prefix totals 0..n-1 including the implicit unit root."""
    return list(tree.inner) + [CategoryData.UNIT] if tree.leaves else []


# ---------------------------------------------------------------------------
# gates
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Cup:
    """Create an oriented strand minimum at wire slots (pos, pos+1).

    `label` is the current (possibly sheet-acted) label; `cov` records the
    composite sheet coverage over the minimum.
    """
    pos: int
    label: int
    up: bool    # orientation of the left leg
    cov: int = 0


@dataclass(frozen=True)
class Cap:
    """Close the adjacent wires (pos, pos+1)."""
    pos: int


@dataclass(frozen=True)
class Cross:
    """Braid wires (pos, pos+1); sign +1 takes the left wire over."""
    pos: int
    sign: int


@dataclass(frozen=True)
class Fold:
    """A sheet fold line sweeping wires lo..hi (inclusive); scalar-only."""
    lo: int
    hi: int
    g: int
    sign: int      # orientation of the sheet
    enter: bool


@dataclass(frozen=True)
class Insert:
    """Tensor a coupon state onto the row at the left (pos=0) or right end."""
    pos: int
    state: tuple    # tuple of (Tree, Cyclotomic) pairs, deterministic order


@dataclass(frozen=True)
class Scale:
    value: Cyclotomic


Gate = object


def empty_state(cat: CategoryData) -> DiagramState:
    return {EMPTY_TREE: cat.one()}


def state_from_pairs(pairs: Iterable[tuple[Tree, Cyclotomic]]) -> DiagramState:
    out: DiagramState = {}
    for tree, coeff in pairs:
        if not coeff.is_zero():
            out[tree] = out.get(tree, coeff - coeff) + coeff
    return {t: c for t, c in out.items() if not c.is_zero()}


def _accumulate(out: DiagramState, tree: Tree, coeff: Cyclotomic) -> None:
    if coeff.is_zero():
        return
    if tree in out:
        s = out[tree] + coeff
        if s.is_zero():
            del out[tree]
        else:
            out[tree] = s
    else:
        out[tree] = coeff


# ---------------------------------------------------------------------------
# gate application
# ---------------------------------------------------------------------------

def apply_gate(cat: CategoryData, state: DiagramState, gate: Gate) -> DiagramState:
    if not state:
        return {}
    if isinstance(gate, Cup):
        return _apply_cup(cat, state, gate)
    if isinstance(gate, Cap):
        return _apply_cap(cat, state, gate)
    if isinstance(gate, Cross):
        return _apply_cross(cat, state, gate)
    if isinstance(gate, Fold):
        return _apply_fold(cat, state, gate)
    if isinstance(gate, Insert):
        return _apply_insert(cat, state, gate)
    if isinstance(gate, Scale):
        return {t: c * gate.value for t, c in state.items()}
    raise EvaluationError(f"unknown gate {gate!r}")


def _width(state: DiagramState) -> int:
    return len(next(iter(state)).leaves)


def _apply_cup(cat: CategoryData, state: DiagramState, gate: Cup) -> DiagramState:
    n = _width(state)
    if not 0 <= gate.pos <= n:
        raise EvaluationError(f"cup position {gate.pos} out of range for width {n}")
    x = gate.label
    if gate.up:
        pair = (WireState(x, True, gate.cov), WireState(x, False, gate.cov))
        pair_coeff = cat.one()
    else:
        pair = (WireState(x, False, gate.cov), WireState(x, True, gate.cov))
        pair_coeff = cat.mu(x)
    e1, e2 = eff(cat, pair[0]), eff(cat, pair[1])
    out: DiagramState = {}
    unit = cat.UNIT
    for tree, coeff in state.items():
        totals = _totals(tree)
        t_prefix = totals[gate.pos - 1] if gate.pos >= 1 else unit
        finv = cat.f_inv(t_prefix, e1, e2, t_prefix)
        for z in cat.channels(t_prefix, e1):
            if not cat.n(z, e2, t_prefix):
                continue
            factor = finv.get((unit, z), cat.zero())
            if factor.is_zero():
                continue
            new_leaves = tree.leaves[: gate.pos] + pair + tree.leaves[gate.pos:]
            new_totals = totals[: gate.pos] + [z, t_prefix] + totals[gate.pos:]
            new_tree = Tree(new_leaves, tuple(new_totals[:-1]))
            _accumulate(out, new_tree, coeff * pair_coeff * factor)
    return out


def _apply_cap(cat: CategoryData, state: DiagramState, gate: Cap) -> DiagramState:
    n = _width(state)
    if not 0 <= gate.pos <= n - 2:
        raise EvaluationError(f"cap position {gate.pos} out of range for width {n}")
    out: DiagramState = {}
    unit = cat.UNIT
    for tree, coeff in state.items():
        left, right = tree.leaves[gate.pos], tree.leaves[gate.pos + 1]
        e1, e2 = eff(cat, left), eff(cat, right)
        if e2 != cat.dual[e1]:
            continue
        cap_scalar = cat.nu(left.label) if left.up else cat.lam(left.label)
        totals = _totals(tree)
        t_prefix = totals[gate.pos - 1] if gate.pos >= 1 else unit
        if totals[gate.pos + 1] != t_prefix:
            continue
        z = totals[gate.pos]
        factor = cat.f(t_prefix, e1, e2, t_prefix, z, unit)
        if factor.is_zero():
            continue
        new_leaves = tree.leaves[: gate.pos] + tree.leaves[gate.pos + 2:]
        new_totals = totals[: gate.pos] + totals[gate.pos + 2:]
        new_tree = Tree(new_leaves, tuple(new_totals[:-1]))
        _accumulate(out, new_tree, coeff * cap_scalar * factor)
    return out


def _apply_cross(cat: CategoryData, state: DiagramState, gate: Cross) -> DiagramState:
    n = _width(state)
    if not 0 <= gate.pos <= n - 2:
        raise EvaluationError(f"cross position {gate.pos} out of range for width {n}")
    if gate.sign not in (1, -1):
        raise EvaluationError(f"cross sign must be +-1, got {gate.sign}")
    out: DiagramState = {}
    unit = cat.UNIT
    G = cat.group
    for tree, coeff in state.items():
        left, right = tree.leaves[gate.pos], tree.leaves[gate.pos + 1]
        p, q = eff(cat, left), eff(cat, right)
        if gate.sign == 1:
            k = cat.grade[p]
            new_left = WireState(cat.act(k, right.label), right.up,
                                 G.mul(k, right.cov))
            new_right = left
            base = cat.act(G.inv(right.cov), q)
            coh = cat.eta(base, k, right.cov).inverse()

            def rcoeff(y):
                return cat.r(p, q, y)
        else:
            k = cat.grade[q]
            kinv = G.inv(k)
            new_left = right
            new_right = WireState(cat.act(kinv, left.label), left.up,
                                  G.mul(kinv, left.cov))
            base = cat.act(G.inv(left.cov), p)
            coh = cat.eta(base, k, G.mul(kinv, left.cov))
            p_moved = cat.act(kinv, p)

            def rcoeff(y):
                return cat.r(q, p_moved, y).inverse()

        ne1, ne2 = eff(cat, new_left), eff(cat, new_right)
        totals = _totals(tree)
        t_prefix = totals[gate.pos - 1] if gate.pos >= 1 else unit
        bot = totals[gate.pos + 1]
        z = totals[gate.pos]
        finv = cat.f_inv(t_prefix, ne1, ne2, bot)
        for y in cat.channels(p, q):
            fwd = cat.f(t_prefix, p, q, bot, z, y)
            if fwd.is_zero():
                continue
            rc = rcoeff(y)
            for z_new in cat.channels(t_prefix, ne1):
                if not cat.n(z_new, ne2, bot):
                    continue
                back = finv.get((y, z_new), cat.zero())
                if back.is_zero():
                    continue
                new_leaves = (tree.leaves[: gate.pos] + (new_left, new_right)
                              + tree.leaves[gate.pos + 2:])
                new_totals = list(totals)
                new_totals[gate.pos] = z_new
                new_tree = Tree(new_leaves, tuple(new_totals[:-1]))
                _accumulate(out, new_tree, coeff * fwd * rc * back * coh)
    return out


def _apply_fold(cat: CategoryData, state: DiagramState, gate: Fold) -> DiagramState:
    n = _width(state)
    if not (0 <= gate.lo <= gate.hi <= n - 1):
        raise EvaluationError(f"fold range ({gate.lo},{gate.hi}) out of range")
    G = cat.group
    gs = gate.g if gate.sign >= 0 else G.inv(gate.g)
    out: DiagramState = {}
    for tree, coeff in state.items():
        factor = cat.one()
        for w in tree.leaves[gate.lo: gate.hi + 1]:
            base = cat.act(G.inv(w.cov), eff(cat, w))
            step = cat.eta(base, gs, w.cov) \
                * cat.eta(base, G.inv(gs), G.mul(gs, w.cov))
            factor = factor * (step.inverse() if gate.enter else step)
        _accumulate(out, tree, coeff * factor)
    return out


def _apply_insert(cat: CategoryData, state: DiagramState, gate: Insert) -> DiagramState:
    n = _width(state)
    if gate.pos not in (0, n):
        raise EvaluationError(
            f"coupon insertion only supported at the row ends, got pos={gate.pos} "
            f"for width {n}"
        )
    out: DiagramState = {}
    for tree, coeff in state.items():
        totals = _totals(tree)
        for ctree, cval in gate.state:
            ctotals = _totals(ctree)
            if gate.pos == 0:
                new_leaves = ctree.leaves + tree.leaves
                new_totals = ctotals + totals
            else:
                new_leaves = tree.leaves + ctree.leaves
                new_totals = totals + ctotals
            new_tree = Tree(new_leaves, tuple(new_totals[:-1]))
            _accumulate(out, new_tree, coeff * cval)
    return out


def evaluate_closed(cat: CategoryData, word: Iterable[Gate]) -> Cyclotomic:
    """Evaluate a closed gate word to a scalar."""
    state = empty_state(cat)
    for gate in word:
        state = apply_gate(cat, state, gate)
        if not state:
            return cat.zero()
    if list(state) == [EMPTY_TREE]:
        return state[EMPTY_TREE]
    if not state:
        return cat.zero()
    raise EvaluationError(
        f"word does not close: final width {_width(state)}"
    )


# ---------------------------------------------------------------------------
# morphism spaces, pairing, dual bases
# ---------------------------------------------------------------------------

def morphism_space_basis(
    cat: CategoryData, legs: tuple[tuple[int, bool], ...]
) -> list[Tree]:
    """All fusion trees over the given oriented legs, in lexicographic order."""
    leaves = tuple(WireState(x, up) for x, up in legs)
    n = len(leaves)
    if n == 0:
        return [EMPTY_TREE]
    effs = [eff(cat, w) for w in leaves]
    if n == 1:
        return [Tree(leaves, ())] if effs[0] == cat.UNIT else []
    basis: list[Tree] = []

    def walk(k: int, total: int, chain: tuple[int, ...]) -> None:
        if k == n - 1:
            if cat.n(total, effs[k], cat.UNIT):
                basis.append(Tree(leaves, chain))
            return
        for c in cat.channels(total, effs[k]):
            walk(k + 1, c, chain + (c,))

    walk(1, effs[0], (effs[0],))
    return basis


def morphism_space_dim(cat: CategoryData, legs) -> int:
    return len(morphism_space_basis(cat, tuple(legs)))


def reversed_dual_legs(cat: CategoryData, legs) -> tuple[tuple[int, bool], ...]:
    return tuple((x, not up) for x, up in reversed(tuple(legs)))


def tree_state(tree: Tree, coeff: Cyclotomic):
    return ((tree, coeff),)


def pairing(cat: CategoryData, v, vt) -> Cyclotomic:
    """Pair a vector over <A_1...A_n> with one over <A_n*...A_1*>.

    Both arguments are coupon states (tuples of (Tree, scalar) pairs); the
    value is the closed diagram with all matching legs capped off.
    """
    if not v or not vt:
        return cat.zero()
    n = len(v[0][0].leaves)
    word: list[Gate] = [Insert(0, tuple(v)), Insert(n, tuple(vt))]
    for k in range(n - 1, -1, -1):
        word.append(Cap(k))
    return evaluate_closed(cat, word)


def dual_basis(cat: CategoryData, legs: tuple[tuple[int, bool], ...]):
    """Paired bases (phi_i, phitilde_i) with pairing(phitilde_i, phi_j) = delta_ij.

    Returns a pair of lists of coupon states.  A singular Gram matrix is a
    hard error: the pairing in a fusion category is nondegenerate, so this
    signals corrupted category data.
    """
    legs = tuple(legs)
    key = ("dual_basis", legs)
    if key in cat._caches:
        return cat._caches[key]
    basis = morphism_space_basis(cat, legs)
    cobasis = morphism_space_basis(cat, reversed_dual_legs(cat, legs))
    if len(basis) != len(cobasis):
        raise CategoryError(
            f"morphism spaces for {legs} have mismatched dimensions "
            f"{len(basis)} vs {len(cobasis)}"
        )
    if not basis:
        cat._caches[key] = ([], [])
        return [], []
    one = cat.one()
    phi = [tree_state(t, one) for t in basis]
    gram = [[pairing(cat, ct, bt) for bt in phi]
            for ct in (tree_state(t, one) for t in cobasis)]
    try:
        ginv = _invert_matrix(gram, cat.conductor)
    except CategoryError as exc:
        raise CategoryError(
            f"singular Gram matrix on {legs}: pairing degenerate ({exc})"
        ) from exc
    phitilde = []
    for i in range(len(basis)):
        vec = tuple(
            (cobasis[k], ginv[i][k])
            for k in range(len(cobasis))
            if not ginv[i][k].is_zero()
        )
        phitilde.append(vec)
    cat._caches[key] = (phi, phitilde)
    return phi, phitilde


def pairing_gram(cat: CategoryData, legs) -> list[list[Cyclotomic]]:
    legs = tuple(legs)
    basis = morphism_space_basis(cat, legs)
    cobasis = morphism_space_basis(cat, reversed_dual_legs(cat, legs))
    one = cat.one()
    return [
        [pairing(cat, tree_state(ct, one), tree_state(bt, one)) for bt in basis]
        for ct in cobasis
    ]


def act_on_coupon_state(cat: CategoryData, g: int, state):
    """Image of a coupon vector under the action functor for g."""
    out = []
    for tree, coeff in state:
        totals = _totals(tree)
        factor = cat.one()
        n = len(tree.leaves)
        for k in range(1, n):
            factor = factor * cat.u(
                g, totals[k - 1], eff(cat, tree.leaves[k]), totals[k]
            )
        new_leaves = tuple(
            WireState(cat.act(g, w.label), w.up, w.cov) for w in tree.leaves
        )
        new_inner = tuple(cat.act(g, t) for t in tree.inner)
        out.append((Tree(new_leaves, new_inner), coeff * factor))
    return tuple(out)


def set_coupon_cov(cat: CategoryData, state, covs: tuple[int, ...]):
    """Stamp per-leg coverage elements onto a coupon state's wires."""
    out = []
    for tree, coeff in state:
        new_leaves = tuple(
            WireState(w.label, w.up, c) for w, c in zip(tree.leaves, covs)
        )
        out.append((Tree(new_leaves, tree.inner), coeff))
    return tuple(out)


# ---------------------------------------------------------------------------
# derived maps: channel matrices, double braiding, encircling, projectors
# ---------------------------------------------------------------------------

def channel_map(
    cat: CategoryData,
    word: list[Gate],
    ins: tuple[tuple[int, bool], ...],
    outs: tuple[tuple[int, bool], ...],
) -> dict[int, Cyclotomic]:
    """Matrix elements of a two-wire gate word on each fusion channel."""
    if len(ins) != 2 or len(outs) != 2:
        raise EvaluationError("channel_map expects two-wire words")
    p, q = (eff(cat, WireState(x, up)) for x, up in ins)
    po, qo = (eff(cat, WireState(x, up)) for x, up in outs)
    result: dict[int, Cyclotomic] = {}
    for c in cat.channels(p, q):
        if not cat.n(po, qo, c):
            result[c] = cat.zero()
            continue
        val = _sandwich(cat, word, ins, outs, c)
        norm = _sandwich(cat, [], ins, ins, c)
        result[c] = val / norm
    return result


def _sandwich(cat, word, ins, outs, c) -> Cyclotomic:
    in_legs = ((c, False),) + tuple(ins)
    out_legs = reversed_dual_legs(cat, ((c, False),) + tuple(outs))
    ubasis = morphism_space_basis(cat, in_legs)
    vbasis = morphism_space_basis(cat, out_legs)
    if len(ubasis) != 1 or len(vbasis) != 1:
        raise EvaluationError(f"ambiguous channel sandwich on channel {c}")
    one = cat.one()
    gates: list[Gate] = [Insert(0, tree_state(ubasis[0], one))]
    gates += [_shift_gate(g, 1) for g in word]
    gates.append(Insert(3, tree_state(vbasis[0], one)))
    gates += [Cap(2), Cap(1), Cap(0)]
    return evaluate_closed(cat, gates)


def _shift_gate(gate: Gate, offset: int) -> Gate:
    if isinstance(gate, Cup):
        return Cup(gate.pos + offset, gate.label, gate.up)
    if isinstance(gate, Cap):
        return Cap(gate.pos + offset)
    if isinstance(gate, Cross):
        return Cross(gate.pos + offset, gate.sign)
    if isinstance(gate, Fold):
        return Fold(gate.lo + offset, gate.hi + offset, gate.g, gate.sign, gate.enter)
    if isinstance(gate, Scale):
        return gate
    raise EvaluationError(f"cannot shift gate {gate!r}")


def double_braiding(cat: CategoryData, a: int, b: int) -> dict[int, Cyclotomic]:
    """Channelwise coefficients of braiding a over b and then b over a."""
    g = cat.grade[a]
    h = cat.grade[b]
    G = cat.group
    word = [Cross(0, 1), Cross(0, 1)]
    a_out = cat.act(G.mul(g, G.mul(h, G.inv(g))), a)
    b_out = cat.act(g, b)
    return channel_map(cat, word, ((a, True), (b, True)), ((a_out, True), (b_out, True)))


def encircle_word(pos: int, label: int) -> list[Gate]:
    """Gates realising a loop of `label` around the wire at `pos`."""
    return [
        Cup(pos + 1, label, True),
        Cross(pos, 1),
        Cross(pos, 1),
        Cap(pos + 1),
    ]


def encircle(cat: CategoryData, a: int, b: FusionAlgebraElement) -> Cyclotomic:
    """The scalar of the encircling map a -> (g>a) for a of grade e.

    b must be supported in a single grade g.  If g>a differs from a as a
    label, the map is between non-isomorphic simples and is zero.
    """
    if cat.grade[a] != 0:
        raise CategoryError(f"encircled strand must have grade e, got label {a}")
    if b.is_zero():
        return cat.zero()
    g = b.grade()
    if g is None:
        raise CategoryError("encircling colour must be concentrated in one grade")
    a_out = cat.act(g, a)
    total = cat.zero()
    for y, coeff in b.coeffs.items():
        if coeff.is_zero():
            continue
        total = total + coeff * _encircle_simple(cat, a, y, a_out)
    return total


def _encircle_simple(cat: CategoryData, a: int, y: int, a_out: int) -> Cyclotomic:
    in_legs = ((a, False), (a, True))
    ubasis = morphism_space_basis(cat, in_legs)
    out_legs = reversed_dual_legs(cat, ((a_out, False), (a_out, True)))
    vbasis = morphism_space_basis(cat, out_legs)
    if not ubasis or not vbasis:
        return cat.zero()
    one = cat.one()
    word: list[Gate] = [Insert(0, tree_state(ubasis[0], one))]
    word += encircle_word(1, y)
    word += [Insert(2, tree_state(vbasis[0], one)), Cap(1), Cap(0)]
    val = evaluate_closed(cat, word)
    norm_basis = morphism_space_basis(
        cat, reversed_dual_legs(cat, ((a, False), (a, True)))
    )
    norm_word: list[Gate] = [
        Insert(0, tree_state(ubasis[0], one)),
        Insert(2, tree_state(norm_basis[0], one)),
        Cap(1),
        Cap(0),
    ]
    norm = evaluate_closed(cat, norm_word)
    return val / norm


def unit_projector_terms(cat: CategoryData, a: int):
    """Dual-basis term pairs (alpha_i, alphatilde_i) of the unit projector on a.

    alpha_i spans <a> and alphatilde_i its dual <a*>; the projector a -> a is
    the sum over i of alpha_i stacked on top of alphatilde_i.  An empty <a>
    means the projector is the zero morphism and the list is empty.
    """
    return dual_basis(cat, ((a, True),))


def snake_words(cat: CategoryData, x: int) -> list[list[Gate]]:
    """Two closed zig-zag words on x; both must evaluate to qdim(x)."""
    return [
        [Cup(0, x, True), Cup(1, x, False), Cap(2), Cap(0)],
        [Cup(0, x, False), Cup(1, x, True), Cap(2), Cap(0)],
    ]
