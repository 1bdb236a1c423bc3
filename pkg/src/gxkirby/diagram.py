"""Kirby diagrams with 3-handles and their compilation to gate words.

A diagram is stored directly as a projected, sliced word over handle ids:
cups/caps/crossings trace out the 2-handle attaching circles, coupon slots
mark the attaching balls of 1-handles, fold gates mark 3-handle sheets
sweeping over strands, and coverage annotations record which sheets lie over
which coupon balls and strand segments.  Together with a labelling (group
elements on 3-handles, simples on 2-handles, dual-basis indices on 1-handles)
this compiles to a concrete `treecalc` gate word.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace

from . import treecalc
from .gxcat import CategoryData, GroupData
from .scalars import Cyclotomic
from .treecalc import Cap, Cross, Cup, Fold, Insert, Scale, WireState


class DiagramError(ValueError):
    """Raised for structurally broken diagrams or labellings."""


# Coverage annotations: a tuple of sheet groups, innermost first.  Each sheet
# group is a tuple of (three-handle id, sign) pairs acting as one composite
# sheet (composites arise from 3-3 slides).
Cover = tuple[tuple[tuple[int, int], ...], ...]


@dataclass(frozen=True)
class Leg:
    h2: int
    up: bool
    cover: Cover = ()


@dataclass(frozen=True)
class WCup:
    pos: int
    h2: int
    up: bool
    cover: Cover = ()


@dataclass(frozen=True)
class WCap:
    pos: int


@dataclass(frozen=True)
class WCross:
    pos: int
    sign: int


@dataclass(frozen=True)
class WFold:
    lo: int
    hi: int
    h3: int
    sign: int
    enter: bool


@dataclass(frozen=True)
class WCoupon:
    pos: int
    h1: int
    which: str                  # "phi" | "phitilde"
    legs: tuple[Leg, ...]
    cover: Cover = ()


@dataclass(frozen=True)
class TwoHandle:
    id: int
    framing: int = 0


@dataclass(frozen=True)
class ThreeHandle:
    id: int
    incidence: tuple[tuple[int, int], ...] = ()


@dataclass(frozen=True)
class KirbyDiagram:
    name: str
    n1: int
    two_handles: tuple[TwoHandle, ...]
    three_handles: tuple[ThreeHandle, ...]
    word: tuple
    euler: int
    signature: int | None = None

    @property
    def h2_ids(self) -> tuple[int, ...]:
        return tuple(h.id for h in self.two_handles)

    @property
    def h3_ids(self) -> tuple[int, ...]:
        return tuple(h.id for h in self.three_handles)

    def two_handle(self, h2: int) -> TwoHandle:
        for h in self.two_handles:
            if h.id == h2:
                return h
        raise DiagramError(f"no 2-handle {h2} in {self.name}")

    def three_handle(self, h3: int) -> ThreeHandle:
        for h in self.three_handles:
            if h.id == h3:
                return h
        raise DiagramError(f"no 3-handle {h3} in {self.name}")


@dataclass(frozen=True)
class Labelling:
    g: dict          # 3-handle id -> group element
    x: dict          # 2-handle id -> simple label
    iota: dict       # 1-handle id -> dual-basis index


@dataclass
class DiagramReport:
    problems: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.problems

    def __str__(self) -> str:
        if self.ok:
            return "[ok] diagram is well-formed"
        return "\n".join(f"[FAIL] {p}" for p in self.problems)


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------

def _simulate_wires(k: KirbyDiagram):
    """Track which 2-handle owns each wire through the word.

    Returns the per-gate wire snapshots or raises DiagramError.
    """
    wires: list[int] = []
    snapshots = []
    for gate in k.word:
        snapshots.append(tuple(wires))
        if isinstance(gate, WCup):
            if not 0 <= gate.pos <= len(wires):
                raise DiagramError(f"cup position {gate.pos} invalid at width {len(wires)}")
            wires[gate.pos:gate.pos] = [gate.h2, gate.h2]
        elif isinstance(gate, WCap):
            if not 0 <= gate.pos <= len(wires) - 2:
                raise DiagramError(f"cap position {gate.pos} invalid at width {len(wires)}")
            if wires[gate.pos] != wires[gate.pos + 1]:
                raise DiagramError(
                    f"cap joins different 2-handles {wires[gate.pos]} and "
                    f"{wires[gate.pos + 1]}"
                )
            del wires[gate.pos: gate.pos + 2]
        elif isinstance(gate, WCross):
            if not 0 <= gate.pos <= len(wires) - 2:
                raise DiagramError(f"cross position {gate.pos} invalid at width {len(wires)}")
            wires[gate.pos], wires[gate.pos + 1] = wires[gate.pos + 1], wires[gate.pos]
        elif isinstance(gate, WFold):
            if not (0 <= gate.lo <= gate.hi < len(wires)):
                raise DiagramError(f"fold range ({gate.lo},{gate.hi}) invalid")
        elif isinstance(gate, WCoupon):
            if gate.pos not in (0, len(wires)):
                raise DiagramError(
                    f"coupon must sit at a row end, got pos={gate.pos} at width "
                    f"{len(wires)}"
                )
            wires[gate.pos:gate.pos] = [leg.h2 for leg in gate.legs]
        else:
            raise DiagramError(f"unknown word gate {gate!r}")
    snapshots.append(tuple(wires))
    if wires:
        raise DiagramError(f"word does not close; final width {len(wires)}")
    return snapshots


def validate_diagram(k: KirbyDiagram) -> DiagramReport:
    rep = DiagramReport()
    h2_ids = set(k.h2_ids)
    h3_ids = set(k.h3_ids)
    if len(h2_ids) != len(k.two_handles):
        rep.problems.append("duplicate 2-handle ids")
    if len(h3_ids) != len(k.three_handles):
        rep.problems.append("duplicate 3-handle ids")
    for h in k.three_handles:
        for h2, sign in h.incidence:
            if h2 not in h2_ids:
                rep.problems.append(f"3-handle {h.id} attached to unknown 2-handle {h2}")
            if sign not in (1, -1):
                rep.problems.append(f"3-handle {h.id} incidence sign {sign} invalid")
    try:
        _simulate_wires(k)
    except DiagramError as exc:
        rep.problems.append(str(exc))
        return rep

    seen_h2 = set()
    coupon_slots: dict[int, dict[str, WCoupon]] = {}
    for gate in k.word:
        if isinstance(gate, WCup):
            if gate.h2 not in h2_ids:
                rep.problems.append(f"cup references unknown 2-handle {gate.h2}")
            seen_h2.add(gate.h2)
        elif isinstance(gate, WCoupon):
            slots = coupon_slots.setdefault(gate.h1, {})
            if gate.which in slots:
                rep.problems.append(
                    f"1-handle {gate.h1} has two {gate.which!r} coupon slots"
                )
            slots[gate.which] = gate
            for leg in gate.legs:
                if leg.h2 not in h2_ids:
                    rep.problems.append(
                        f"coupon leg references unknown 2-handle {leg.h2}"
                    )
                seen_h2.add(leg.h2)
            for grp in gate.cover:
                for h3, sign in grp:
                    if h3 not in h3_ids:
                        rep.problems.append(
                            f"coupon covered by unknown 3-handle {h3}"
                        )
        elif isinstance(gate, WFold):
            if gate.h3 not in h3_ids:
                rep.problems.append(f"fold references unknown 3-handle {gate.h3}")
    for h1 in range(k.n1):
        slots = coupon_slots.get(h1, {})
        if set(slots) != {"phi", "phitilde"}:
            rep.problems.append(
                f"1-handle {h1} needs exactly one phi and one phitilde slot"
            )
            continue
        phi, phit = slots["phi"], slots["phitilde"]
        if [l.h2 for l in phit.legs] != [l.h2 for l in reversed(phi.legs)]:
            rep.problems.append(
                f"1-handle {h1} coupon legs are not reverse-ordered"
            )
        if [l.up for l in phit.legs] != [not l.up for l in reversed(phi.legs)]:
            rep.problems.append(
                f"1-handle {h1} coupon leg orientations are not mirrored"
            )
    for h1 in coupon_slots:
        if not 0 <= h1 < k.n1:
            rep.problems.append(f"coupon references unknown 1-handle {h1}")
    missing = h2_ids - seen_h2
    if missing:
        rep.problems.append(f"2-handles never drawn: {sorted(missing)}")
    chi = 2 - k.n1 + len(k.two_handles) - len(k.three_handles)
    if chi != k.euler:
        rep.problems.append(
            f"euler characteristic mismatch: handles give {chi}, meta says {k.euler}"
        )
    return rep


# ---------------------------------------------------------------------------
# labelling and compilation
# ---------------------------------------------------------------------------

def _incidence(k: KirbyDiagram, h2: int):
    """Signed 3-handle attachments of h2, in the recorded cyclic order.

    Incidence is stored per 3-handle; the cyclic order around the 2-handle
    interleaves the 3-handles' passes round-robin: firstpass entries of every
    3-handle (by id), then second-pass entries, and so on.
    """
    rounds: list[list[tuple[int, int]]] = []
    for h in k.three_handles:
        seen = 0
        for hh2, sign in h.incidence:
            if hh2 == h2:
                while len(rounds) <= seen:
                    rounds.append([])
                rounds[seen].append((h.id, sign))
                seen += 1
    return [entry for rnd in rounds for entry in rnd]


def degree_of_2handle(k: KirbyDiagram, h2: int, g: dict, group: GroupData) -> int:
    """Product of the attached 3-handle labels in the recorded cyclic order."""
    total = 0
    for h3, sign in _incidence(k, h2):
        elem = g[h3]
        if sign < 0:
            elem = group.inv(elem)
        total = group.mul(total, elem)
    return total


def _cover_element(cover: Cover, g: dict, group: GroupData) -> int:
    """Composite group element of a coverage annotation, innermost first."""
    total = 0
    for grp in cover:
        elem = 0
        for h3, sign in grp:
            val = g[h3] if sign > 0 else group.inv(g[h3])
            elem = group.mul(elem, val)
        total = group.mul(elem, total)
    return total


def typing_check(k: KirbyDiagram, lab: Labelling, cat: CategoryData) -> None:
    for h in k.two_handles:
        want = degree_of_2handle(k, h.id, lab.g, cat.group)
        got = cat.grade[lab.x[h.id]]
        if want != got:
            raise DiagramError(
                f"typing relation fails on 2-handle {h.id}: label grade {got}, "
                f"3-handle degrees give {want}"
            )


def coupon_space_legs(
    k: KirbyDiagram, gate: WCoupon, lab: Labelling, cat: CategoryData
):
    """(base legs, own coverage element, per-leg coverage elements)."""
    G = cat.group
    own = _cover_element(gate.cover, lab.g, G)
    own_inv = G.inv(own)
    base_legs = []
    covs = []
    for leg in gate.legs:
        c = _cover_element(leg.cover, lab.g, G)
        covs.append(c)
        current = cat.act(c, lab.x[leg.h2])
        base_legs.append((cat.act(own_inv, current), leg.up))
    return tuple(base_legs), own, tuple(covs)


def coupon_dims(k: KirbyDiagram, lab_g: dict, lab_x: dict, cat: CategoryData) -> dict:
    """Dual-basis dimension per 1-handle for a given (g, X) labelling."""
    dims = {}
    lab = Labelling(lab_g, lab_x, {})
    for gate in k.word:
        if isinstance(gate, WCoupon) and gate.which == "phi":
            base_legs, _, _ = coupon_space_legs(k, gate, lab, cat)
            dims[gate.h1] = len(treecalc.morphism_space_basis(cat, base_legs))
    for h1 in range(k.n1):
        dims.setdefault(h1, 0)
    return dims


def compile_word(k: KirbyDiagram, lab: Labelling, cat: CategoryData) -> list:
    """Translate the diagram word plus labelling into treecalc gates."""
    typing_check(k, lab, cat)
    G = cat.group
    gates: list = []

    # framing corrections: theta^(framing - writhe) per 2-handle
    writhe = _writhes(k)
    for h in k.two_handles:
        twist_power = h.framing - writhe[h.id]
        if twist_power:
            x = lab.x[h.id]
            if cat.grade[x] != 0:
                raise DiagramError(
                    f"framing correction needs a twist, but label {x} on "
                    f"2-handle {h.id} has nontrivial grade"
                )
            theta = cat.twists[x]
            gates.append(Scale(theta**twist_power))

    for gate in k.word:
        if isinstance(gate, WCup):
            c = _cover_element(gate.cover, lab.g, G)
            label = cat.act(c, lab.x[gate.h2])
            gates.append(Cup(gate.pos, label, gate.up, c))
        elif isinstance(gate, WCap):
            gates.append(Cap(gate.pos))
        elif isinstance(gate, WCross):
            gates.append(Cross(gate.pos, gate.sign))
        elif isinstance(gate, WFold):
            gates.append(
                Fold(gate.lo, gate.hi, lab.g[gate.h3], gate.sign, gate.enter)
            )
        elif isinstance(gate, WCoupon):
            gates.append(_coupon_gate(k, gate, lab, cat))
        else:
            raise DiagramError(f"unknown word gate {gate!r}")
    return gates


def _coupon_gate(k: KirbyDiagram, gate: WCoupon, lab: Labelling, cat: CategoryData):
    _, own, covs = coupon_space_legs(k, gate, lab, cat)
    phi, phitilde = _slot_vectors(k, gate.h1, lab, cat)
    idx = lab.iota[gate.h1]
    vec = phi[idx] if gate.which == "phi" else phitilde[idx]
    if own:
        vec = treecalc.act_on_coupon_state(cat, own, vec)
    # stamp per-leg coverage so downstream crossings know the base labels
    vec = treecalc.set_coupon_cov(cat, vec, covs)
    _check_leg_alignment(k, gate, vec, lab, cat)
    return Insert(gate.pos, vec)


def _check_leg_alignment(k, gate, vec, lab, cat) -> None:
    if not vec:
        return
    leaves = vec[0][0].leaves
    for leaf, leg in zip(leaves, gate.legs):
        expect = cat.act(_cover_element(leg.cover, lab.g, cat.group), lab.x[leg.h2])
        if leaf.label != expect or leaf.up != leg.up:
            raise DiagramError(
                f"coupon slot ({gate.h1},{gate.which}) leg mismatch: word expects "
                f"label {expect} up={leg.up}, vector has {leaf.label} up={leaf.up}"
            )


def _slot_vectors(k: KirbyDiagram, h1: int, lab: Labelling, cat: CategoryData):
    """Dual-basis vectors for the 1-handle's phi and phitilde slots."""
    phi_gate = phit_gate = None
    for gate in k.word:
        if isinstance(gate, WCoupon) and gate.h1 == h1:
            if gate.which == "phi":
                phi_gate = gate
            else:
                phit_gate = gate
    if phi_gate is None or phit_gate is None:
        raise DiagramError(f"1-handle {h1} is missing a coupon slot")
    base_legs, _, _ = coupon_space_legs(k, phi_gate, lab, cat)
    tilde_legs, _, _ = coupon_space_legs(k, phit_gate, lab, cat)
    if treecalc.reversed_dual_legs(cat, base_legs) != tilde_legs:
        raise DiagramError(
            f"1-handle {h1}: phitilde legs {tilde_legs} are not the reversed "
            f"dual of phi legs {base_legs}"
        )
    return treecalc.dual_basis(cat, base_legs)


def _writhes(k: KirbyDiagram) -> dict:
    """Self-crossing writhe per 2-handle component in the word."""
    wires: list[int] = []
    writhe = {h.id: 0 for h in k.two_handles}
    for gate in k.word:
        if isinstance(gate, WCup):
            wires[gate.pos:gate.pos] = [gate.h2, gate.h2]
        elif isinstance(gate, WCap):
            del wires[gate.pos: gate.pos + 2]
        elif isinstance(gate, WCross):
            a, b = wires[gate.pos], wires[gate.pos + 1]
            if a == b:
                writhe[a] += gate.sign
            wires[gate.pos], wires[gate.pos + 1] = b, a
        elif isinstance(gate, WCoupon):
            wires[gate.pos:gate.pos] = [leg.h2 for leg in gate.legs]
    return writhe


def evaluate_labelled(k: KirbyDiagram, lab: Labelling, cat: CategoryData) -> Cyclotomic:
    return treecalc.evaluate_closed(cat, compile_word(k, lab, cat))


# ---------------------------------------------------------------------------
# disjoint union
# ---------------------------------------------------------------------------

def _shift_cover(cover: Cover, dh3: int) -> Cover:
    return tuple(tuple((h3 + dh3, s) for h3, s in grp) for grp in cover)


def _shift_gate_ids(gate, dh1: int, dh2: int, dh3: int):
    if isinstance(gate, WCup):
        return replace(gate, h2=gate.h2 + dh2, cover=_shift_cover(gate.cover, dh3))
    if isinstance(gate, WCoupon):
        return replace(
            gate,
            h1=gate.h1 + dh1,
            legs=tuple(
                replace(l, h2=l.h2 + dh2, cover=_shift_cover(l.cover, dh3))
                for l in gate.legs
            ),
            cover=_shift_cover(gate.cover, dh3),
        )
    if isinstance(gate, WFold):
        return replace(gate, h3=gate.h3 + dh3)
    return gate


def disjoint_union(k1: KirbyDiagram, k2: KirbyDiagram) -> KirbyDiagram:
    """Concatenated diagrams; models the connected sum of the manifolds."""
    dh1, dh2, dh3 = k1.n1, len(k1.two_handles), len(k1.three_handles)
    word2 = tuple(_shift_gate_ids(g, dh1, dh2, dh3) for g in k2.word)
    sig = None
    if k1.signature is not None and k2.signature is not None:
        sig = k1.signature + k2.signature
    return KirbyDiagram(
        name=f"{k1.name}+{k2.name}",
        n1=k1.n1 + k2.n1,
        two_handles=k1.two_handles + tuple(
            TwoHandle(h.id + dh2, h.framing) for h in k2.two_handles
        ),
        three_handles=k1.three_handles + tuple(
            ThreeHandle(
                h.id + dh3, tuple((h2 + dh2, s) for h2, s in h.incidence)
            )
            for h in k2.three_handles
        ),
        word=k1.word + word2,
        euler=k1.euler + k2.euler - 2,
        signature=sig,
    )


# ---------------------------------------------------------------------------
# serialization (diagram file format)
# ---------------------------------------------------------------------------

def _cover_json(cover: Cover):
    return [[[h3, s] for h3, s in grp] for grp in cover]


def _cover_from_json(data) -> Cover:
    return tuple(tuple((int(h3), int(s)) for h3, s in grp) for grp in data)


def _gate_json(gate) -> dict:
    if isinstance(gate, WCup):
        return {
            "t": "cup", "pos": gate.pos, "h2": gate.h2,
            "orient": 1 if gate.up else -1, "cover": _cover_json(gate.cover),
        }
    if isinstance(gate, WCap):
        return {"t": "cap", "pos": gate.pos}
    if isinstance(gate, WCross):
        return {"t": "cross", "pos": gate.pos, "sign": gate.sign}
    if isinstance(gate, WFold):
        return {
            "t": "fold", "lo": gate.lo, "hi": gate.hi, "h3": gate.h3,
            "sign": gate.sign, "enter": gate.enter,
        }
    if isinstance(gate, WCoupon):
        return {
            "t": "coupon", "pos": gate.pos, "h1": gate.h1, "which": gate.which,
            "cover": _cover_json(gate.cover),
            "legs": [
                {
                    "h2": l.h2, "orient": 1 if l.up else -1,
                    "cover": _cover_json(l.cover),
                }
                for l in gate.legs
            ],
        }
    raise DiagramError(f"cannot serialize gate {gate!r}")


def _gate_from_json(data: dict):
    t = data["t"]
    if t == "cup":
        return WCup(
            int(data["pos"]), int(data["h2"]), int(data["orient"]) > 0,
            _cover_from_json(data.get("cover", [])),
        )
    if t == "cap":
        return WCap(int(data["pos"]))
    if t == "cross":
        return WCross(int(data["pos"]), int(data["sign"]))
    if t == "fold":
        return WFold(
            int(data["lo"]), int(data["hi"]), int(data["h3"]),
            int(data["sign"]), bool(data["enter"]),
        )
    if t == "coupon":
        return WCoupon(
            int(data["pos"]), int(data["h1"]), data["which"],
            tuple(
                Leg(int(l["h2"]), int(l["orient"]) > 0,
                    _cover_from_json(l.get("cover", [])))
                for l in data["legs"]
            ),
            _cover_from_json(data.get("cover", [])),
        )
    raise DiagramError(f"unknown gate record type {t!r}")


def diagram_to_json(k: KirbyDiagram) -> dict:
    return {
        "name": k.name,
        "euler": k.euler,
        "signature": k.signature,
        "one_handles": k.n1,
        "two_handles": [{"id": h.id, "framing": h.framing} for h in k.two_handles],
        "three_handles": [
            {"id": h.id, "incidence": [[h2, s] for h2, s in h.incidence]}
            for h in k.three_handles
        ],
        "word": [_gate_json(g) for g in k.word],
    }


def diagram_from_json(data: dict) -> KirbyDiagram:
    return KirbyDiagram(
        name=data.get("name", "diagram"),
        n1=int(data["one_handles"]),
        two_handles=tuple(
            TwoHandle(int(h["id"]), int(h.get("framing", 0)))
            for h in data["two_handles"]
        ),
        three_handles=tuple(
            ThreeHandle(
                int(h["id"]),
                tuple((int(h2), int(s)) for h2, s in h.get("incidence", [])),
            )
            for h in data["three_handles"]
        ),
        word=tuple(_gate_from_json(g) for g in data["word"]),
        euler=int(data["euler"]),
        signature=data.get("signature"),
    )


def save_diagram(k: KirbyDiagram, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(diagram_to_json(k), fh, indent=1)


def load_diagram(path) -> KirbyDiagram:
    with open(path, encoding="utf-8") as fh:
        return diagram_from_json(json.load(fh))
