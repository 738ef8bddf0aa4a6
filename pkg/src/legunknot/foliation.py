"""Combinatorial characteristic foliations on spheres and discs.

A state lists signed singular points and, for every hyperbolic point, the
far end of each of its four separatrices.  For a stable slot the far end is
where the leaf comes from; for an unstable slot it is where the leaf goes.
A birth-death point carries one distinguished leaf ``bd_leaf``: incoming for
a positive point, outgoing for a negative one.

Graph conventions:

* ``Gamma_+``: positive singular points, joined along stable leaves of
  positive hyperbolic points (and positive birth-death leaves) that come
  from positive points.
* ``Gamma_-``: negative singular points, joined along unstable leaves of
  negative hyperbolic points (and negative birth-death leaves) that land at
  negative points.

Leaves meeting a singular point of the opposite sign are not edges, which
makes these graphs coincide with the starred graphs used in the
non-loose criterion.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, replace
from enum import Enum
from typing import Iterable, Optional

import networkx as nx

from .front import ValidationReport

ON_BOUNDARY = "on-boundary"

STABLE_SLOTS = ("stable1", "stable2")
UNSTABLE_SLOTS = ("unstable1", "unstable2")
HYPERBOLIC_SLOTS = ("stable1", "stable2", "unstable1", "unstable2")
BD_SLOT = "bd_leaf"


class Kind(str, Enum):
    ELLIPTIC = "elliptic"
    HYPERBOLIC = "hyperbolic"
    BIRTHDEATH = "birthdeath"

    @property
    def index(self) -> int:
        return {"elliptic": 1, "hyperbolic": -1, "birthdeath": 0}[self.value]


class Holonomy(str, Enum):
    ATTRACTING = "attracting"
    REPELLING = "repelling"
    SEMISTABLE_ABOVE = "semistable_repelling_above"
    SEMISTABLE_BELOW = "semistable_repelling_below"

    @property
    def semistable(self) -> bool:
        return self in (Holonomy.SEMISTABLE_ABOVE, Holonomy.SEMISTABLE_BELOW)


class Surface(str, Enum):
    SPHERE = "sphere"
    DISC = "disc"


class FoliationError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Singularity:
    id: str
    sign: int
    kind: Kind

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind(self.kind))


@dataclass(frozen=True, order=True)
class Separatrix:
    sing: str
    slot: str
    to: str


@dataclass(frozen=True, order=True)
class ClosedLeaf:
    id: str
    holonomy: Holonomy

    def __post_init__(self):
        object.__setattr__(self, "holonomy", Holonomy(self.holonomy))


@dataclass(frozen=True)
class FoliationState:
    """Canonicalized on construction, so ``==`` compares wiring literally."""

    surface: Surface
    singularities: tuple[Singularity, ...]
    separatrices: tuple[Separatrix, ...]
    closed_leaves: tuple[ClosedLeaf, ...] = ()
    boundary: Optional[tuple[str, ...]] = None

    def __post_init__(self):
        object.__setattr__(self, "surface", Surface(self.surface))
        object.__setattr__(self, "singularities", tuple(sorted(self.singularities)))
        object.__setattr__(self, "separatrices", tuple(sorted(self.separatrices)))
        object.__setattr__(self, "closed_leaves", tuple(sorted(self.closed_leaves)))
        if self.boundary is not None:
            object.__setattr__(self, "boundary", tuple(self.boundary))

    # lookups -------------------------------------------------------------

    def sing(self, sid: str) -> Singularity:
        for s in self.singularities:
            if s.id == sid:
                return s
        raise KeyError(sid)

    def sing_map(self) -> dict[str, Singularity]:
        return {s.id: s for s in self.singularities}

    def slots(self, sid: str) -> dict[str, str]:
        return {sp.slot: sp.to for sp in self.separatrices if sp.sing == sid}

    def slot(self, sid: str, slot: str) -> str:
        for sp in self.separatrices:
            if sp.sing == sid and sp.slot == slot:
                return sp.to
        raise KeyError((sid, slot))

    def with_slots(self, updates: dict[tuple[str, str], str]) -> "FoliationState":
        """Copy with ``(sing, slot) -> to`` replaced."""
        seps = []
        for sp in self.separatrices:
            key = (sp.sing, sp.slot)
            seps.append(Separatrix(sp.sing, sp.slot, updates[key]) if key in updates else sp)
        missing = set(updates) - {(sp.sing, sp.slot) for sp in self.separatrices}
        if missing:
            raise FoliationError(f"no such separatrix slots: {sorted(missing)}")
        return replace(self, separatrices=tuple(seps))

    def count(self, sign: int, kind: Kind, interior_only: bool = False) -> int:
        skip = set(self.boundary or ()) if interior_only else set()
        return sum(1 for s in self.singularities if s.sign == sign and s.kind is kind and s.id not in skip)

    def ids(self) -> set[str]:
        return {s.id for s in self.singularities} | {c.id for c in self.closed_leaves}


@dataclass(frozen=True, order=True)
class RetroConnection:
    """An unstable leaf of a negative hyperbolic point that is a stable leaf of a positive one."""

    negative: str
    unstable_slot: str
    positive: str
    stable_slot: str

    @property
    def label(self) -> str:
        return f"{self.negative}.{self.unstable_slot}->{self.positive}.{self.stable_slot}"


@dataclass(frozen=True)
class UnknotWitness:
    connections: tuple[RetroConnection, ...]
    negative_path: tuple[str, ...]
    positive_path: Optional[tuple[str, ...]]
    spine_component: frozenset


# directed leaves -----------------------------------------------------------


def _incoming_slot(sing: Singularity, slot: str) -> bool:
    """True when the slot's leaf flows into ``sing``."""
    if slot in STABLE_SLOTS:
        return True
    if slot in UNSTABLE_SLOTS:
        return False
    return sing.sign > 0


def directed_leaves(s: FoliationState) -> list[tuple[str, str, str, str]]:
    """``(source, target, owner, slot)`` for every recorded separatrix."""
    smap = s.sing_map()
    out = []
    for sp in s.separatrices:
        owner = smap.get(sp.sing)
        if owner is None:
            continue
        if _incoming_slot(owner, sp.slot):
            out.append((sp.to, sp.sing, sp.sing, sp.slot))
        else:
            out.append((sp.sing, sp.to, sp.sing, sp.slot))
    return out


# validation ---------------------------------------------------------------


def validate_state(s: FoliationState) -> ValidationReport:
    v: list[str] = []
    seen = Counter([x.id for x in s.singularities] + [c.id for c in s.closed_leaves])
    for sid, k in sorted(seen.items()):
        if k > 1:
            v.append(f"duplicate id {sid!r}")
    if ON_BOUNDARY in seen:
        v.append(f"{ON_BOUNDARY!r} is reserved")
    smap = s.sing_map()
    leaves = {c.id: c for c in s.closed_leaves}
    for x in s.singularities:
        if x.sign not in (1, -1):
            v.append(f"{x.id}: sign must be +1 or -1")
    slot_counts = Counter((sp.sing, sp.slot) for sp in s.separatrices)
    for key, k in sorted(slot_counts.items()):
        if k > 1:
            v.append(f"{key[0]}: slot {key[1]} wired {k} times")
    boundary = set(s.boundary or ())
    if s.surface is Surface.SPHERE and s.boundary is not None:
        v.append("sphere states have no boundary")
    if s.surface is Surface.DISC and s.boundary is None:
        v.append("disc state needs a boundary sequence")
    for b in boundary:
        if b not in smap:
            v.append(f"boundary refers to unknown singularity {b!r}")

    for x in s.singularities:
        wired = {slot for (sid, slot) in slot_counts if sid == x.id}
        if x.kind is Kind.HYPERBOLIC:
            if wired != set(HYPERBOLIC_SLOTS):
                v.append(f"{x.id}: hyperbolic point has {len(wired & set(HYPERBOLIC_SLOTS))} of 4 separatrix slots wired")
        elif x.kind is Kind.BIRTHDEATH:
            if wired != {BD_SLOT}:
                v.append(f"{x.id}: birth-death point needs exactly its bd_leaf")
        elif wired:
            v.append(f"{x.id}: elliptic points carry no separatrix slots")
        extra = wired - set(HYPERBOLIC_SLOTS) - {BD_SLOT}
        if extra:
            v.append(f"{x.id}: unknown slots {sorted(extra)}")

    for sp in s.separatrices:
        if sp.sing not in smap:
            v.append(f"separatrix from unknown singularity {sp.sing!r}")
            continue
        if sp.to == ON_BOUNDARY:
            if s.surface is not Surface.DISC or sp.sing not in boundary:
                v.append(f"{sp.sing}.{sp.slot}: only disc boundary points may have slots on the boundary")
            continue
        if sp.to not in smap and sp.to not in leaves:
            v.append(f"{sp.sing}.{sp.slot}: unknown endpoint {sp.to!r}")

    for src, dst, owner, slot in directed_leaves(s):
        tgt = smap.get(dst)
        if tgt is not None and tgt.kind is Kind.ELLIPTIC and tgt.sign > 0:
            v.append(f"{owner}.{slot}: leaf ends at positive elliptic {dst!r}")
        origin = smap.get(src)
        if origin is not None and origin.kind is Kind.ELLIPTIC and origin.sign < 0:
            v.append(f"{owner}.{slot}: leaf starts at negative elliptic {src!r}")
        if dst in leaves and leaves[dst].holonomy is Holonomy.REPELLING:
            v.append(f"{owner}.{slot}: leaf accumulates on repelling closed leaf {dst!r}")
        if src in leaves and leaves[src].holonomy is Holonomy.ATTRACTING:
            v.append(f"{owner}.{slot}: leaf emanates from attracting closed leaf {src!r}")

    # a leaf joining two slot-bearing points is recorded at both ends
    bearing = {x.id for x in s.singularities if x.kind is not Kind.ELLIPTIC}
    outgoing = Counter()
    incoming = Counter()
    for src, dst, owner, slot in directed_leaves(s):
        if src in bearing and dst in bearing:
            if owner == src and not _incoming_slot(smap[owner], slot):
                outgoing[(src, dst)] += 1
            if owner == dst and _incoming_slot(smap[owner], slot):
                incoming[(src, dst)] += 1
    for key in sorted(set(outgoing) | set(incoming)):
        if outgoing[key] != incoming[key]:
            v.append(f"leaf {key[0]}->{key[1]} is not recorded consistently at both ends")

    bds = [x for x in s.singularities if x.kind is Kind.BIRTHDEATH]
    if len(bds) > 1:
        v.append("at most one birth-death point per state")
    for x in bds:
        to = s.slots(x.id).get(BD_SLOT)
        other = smap.get(to) if to else None
        if other is not None and other.sign != x.sign:
            v.append(f"{x.id}: birth-death leaf lies on a retrogradient connection")

    if v:
        return ValidationReport(tuple(v))

    if s.surface is Surface.SPHERE:
        euler = sum(x.kind.index for x in s.singularities)
        if euler != 2:
            v.append(f"Euler count {euler} ≠ 2")
        if not s.closed_leaves:
            plus = _cycle_count(graph_plus(s))
            minus = _cycle_count(graph_minus(s))
            if plus != minus:
                v.append(f"Gamma_+ gives {plus} dividing curves but Gamma_- gives {minus}")
    return ValidationReport(tuple(v))


def require_valid(s: FoliationState) -> None:
    report = validate_state(s)
    if not report.ok:
        raise FoliationError("invalid state: " + "; ".join(report.violations))


# graphs -------------------------------------------------------------------


def _graph(s: FoliationState, sign: int) -> nx.MultiGraph:
    smap = s.sing_map()
    g = nx.MultiGraph()
    g.add_nodes_from(x.id for x in s.singularities if x.sign == sign)
    for src, dst, owner, slot in directed_leaves(s):
        x = smap[owner]
        if x.sign != sign:
            continue
        if sign > 0 and (slot in STABLE_SLOTS or slot == BD_SLOT):
            other = src
        elif sign < 0 and (slot in UNSTABLE_SLOTS or slot == BD_SLOT):
            other = dst
        else:
            continue
        y = smap.get(other)
        if y is not None and y.sign == sign:
            g.add_edge(owner, other, key=f"{owner}.{slot}")
    return g


def graph_plus(s: FoliationState) -> nx.MultiGraph:
    return _graph(s, 1)


def graph_minus(s: FoliationState) -> nx.MultiGraph:
    return _graph(s, -1)


def _cycle_count(g: nx.MultiGraph) -> int:
    """E - V + 2c: boundary circles of a regular neighbourhood of a planar graph."""
    c = nx.number_connected_components(g)
    return g.number_of_edges() - g.number_of_nodes() + 2 * c


def _is_tree(g: nx.MultiGraph) -> bool:
    return g.number_of_nodes() > 0 and nx.is_connected(g) and g.number_of_edges() == g.number_of_nodes() - 1


def components(g: nx.MultiGraph) -> list[frozenset]:
    return sorted((frozenset(c) for c in nx.connected_components(g)), key=lambda c: sorted(c))


# queries ------------------------------------------------------------------


def retrogradient_connections(s: FoliationState) -> tuple[RetroConnection, ...]:
    """Unstable slots of negative hyperbolics identified with stable slots of positive ones.

    When several leaves join the same pair of points the slots are matched
    in slot order.
    """
    require_valid(s)
    smap = s.sing_map()
    out = []
    for n in s.singularities:
        if n.kind is not Kind.HYPERBOLIC or n.sign > 0:
            continue
        nslots = s.slots(n.id)
        targets = sorted({nslots[u] for u in UNSTABLE_SLOTS})
        for pid in targets:
            p = smap.get(pid)
            if p is None or p.kind is not Kind.HYPERBOLIC or p.sign < 0:
                continue
            pslots = s.slots(pid)
            us = [u for u in UNSTABLE_SLOTS if nslots[u] == pid]
            ss = [st for st in STABLE_SLOTS if pslots[st] == n.id]
            out.extend(RetroConnection(n.id, u, pid, st) for u, st in zip(us, ss))
    return tuple(sorted(out))


def _require_sphere(s: FoliationState, what: str) -> None:
    if s.surface is not Surface.SPHERE:
        raise FoliationError(f"{what} is defined for spheres only")


def is_convex(s: FoliationState) -> bool:
    require_valid(s)
    _require_sphere(s, "convexity")
    if retrogradient_connections(s):
        return False
    if any(c.holonomy.semistable for c in s.closed_leaves):
        return False
    return not any(x.kind is Kind.BIRTHDEATH for x in s.singularities)


def dividing_components(s: FoliationState) -> int:
    if not is_convex(s):
        raise FoliationError("dividing set is only defined here for convex spheres")
    if s.closed_leaves:
        raise FoliationError("dividing-set count with closed leaves is unsupported")
    return _cycle_count(graph_plus(s))


def has_tight_neighborhood(s: FoliationState) -> bool:
    return dividing_components(s) == 1


def component_defect(s: FoliationState, component: Iterable[str]) -> int:
    """``e_- - h_-`` of a connected component of the negative graph."""
    require_valid(s)
    comp = frozenset(component)
    if comp not in components(graph_minus(s)):
        raise FoliationError(f"{sorted(comp)} is not a component of the negative graph")
    smap = s.sing_map()
    return sum(smap[x].kind.index for x in comp if smap[x].kind is not Kind.BIRTHDEATH)


def connections_from(s: FoliationState, component: frozenset) -> int:
    return sum(1 for c in retrogradient_connections(s) if c.negative in component)


def detect_nonloose_unknot(s: FoliationState) -> Optional[UnknotWitness]:
    """Witness for a Legendrian unknot with tight complement formed by two retrogradient leaves."""
    require_valid(s)
    _require_sphere(s, "non-loose detection")
    if s.closed_leaves:
        return None
    conns = retrogradient_connections(s)
    if len(conns) != 2:
        return None
    gm = graph_minus(s)
    comps = components(gm)
    if len(comps) != 3 or not all(_is_tree(gm.subgraph(c)) for c in comps):
        return None
    a, b = conns
    spine = next(c for c in comps if a.negative in c)
    if b.negative not in spine:
        return None
    neg_path = tuple(nx.shortest_path(gm, a.negative, b.negative))
    gp = graph_plus(s)
    try:
        pos_path = tuple(nx.shortest_path(gp, a.positive, b.positive))
    except nx.NetworkXNoPath:
        pos_path = None
    return UnknotWitness(conns, neg_path, pos_path, spine)


# local rewrites -----------------------------------------------------------


def eliminate_pair(s: FoliationState, elliptic: str, hyperbolic: str) -> FoliationState:
    """Cancel an elliptic point against a hyperbolic point of the same sign.

    The hyperbolic point must have a leaf to (negative) or from (positive)
    the elliptic point.  Everything that referred to either point is sent to
    the far end of the hyperbolic point's other leaf on that side.
    """
    require_valid(s)
    e, h = s.sing(elliptic), s.sing(hyperbolic)
    if e.kind is not Kind.ELLIPTIC or h.kind is not Kind.HYPERBOLIC:
        raise FoliationError("eliminate_pair needs an elliptic and a hyperbolic point")
    if e.sign != h.sign:
        raise FoliationError(f"sign mismatch: {elliptic} is {e.sign:+d}, {hyperbolic} is {h.sign:+d}")
    side = STABLE_SLOTS if h.sign > 0 else UNSTABLE_SLOTS
    hs = s.slots(hyperbolic)
    joined = [slot for slot in side if hs[slot] == elliptic]
    if not joined:
        raise FoliationError(f"no leaf joins {hyperbolic} and {elliptic}")
    other = side[1 - side.index(joined[0])]
    x = hs[other]
    if x in (elliptic, hyperbolic):
        raise FoliationError("both leaves on that side join the pair; elimination would leave no basin")
    if x in s.sing_map() and s.sing(x).kind is not Kind.ELLIPTIC:
        raise FoliationError(f"far end {x!r} is not elliptic; elimination template does not apply")
    seps = []
    for sp in s.separatrices:
        if sp.sing in (elliptic, hyperbolic):
            continue
        to = x if sp.to in (elliptic, hyperbolic) else sp.to
        seps.append(Separatrix(sp.sing, sp.slot, to))
    sings = tuple(y for y in s.singularities if y.id not in (elliptic, hyperbolic))
    boundary = None if s.boundary is None else tuple(b for b in s.boundary if b not in (elliptic, hyperbolic))
    out = replace(s, singularities=sings, separatrices=tuple(seps), boundary=boundary)
    report = validate_state(out)
    if not report.ok:
        raise FoliationError("elimination produced an invalid state: " + "; ".join(report.violations))
    return out


def split_boundary_hyperbolic(s: FoliationState, h: str) -> FoliationState:
    """Replace a boundary hyperbolic point by a boundary elliptic point of the same sign."""
    require_valid(s)
    if s.surface is not Surface.DISC:
        raise FoliationError("splitting applies to discs with Legendrian boundary")
    x = s.sing(h)
    if x.kind is not Kind.HYPERBOLIC or h not in s.boundary:
        raise FoliationError(f"{h!r} is not a boundary hyperbolic point")
    ring = s.boundary
    i = ring.index(h)
    neighbours = {ring[(i - 1) % len(ring)], ring[(i + 1) % len(ring)], ON_BOUNDARY}
    slots = s.slots(h)
    along = UNSTABLE_SLOTS if x.sign > 0 else STABLE_SLOTS
    if not all(slots[k] in neighbours for k in along):
        which = "unstable" if x.sign > 0 else "stable"
        raise FoliationError(f"{h}: {which} leaves must lie on the boundary")
    smap = s.sing_map()
    for k, to in slots.items():
        if k in along:
            continue
        y = smap.get(to)
        if y is not None and y.kind is not Kind.ELLIPTIC:
            raise FoliationError(f"{h}.{k} joins {to!r}; interior leaf must end at an elliptic point")
    seps = tuple(sp for sp in s.separatrices if sp.sing != h)
    sings = tuple(Singularity(y.id, y.sign, Kind.ELLIPTIC) if y.id == h else y for y in s.singularities)
    return replace(s, singularities=sings, separatrices=seps)


# discs --------------------------------------------------------------------


def normal_form_disc(n: int) -> FoliationState:
    """Seifert disc of a non-loose unknot with tb = n, simplified to normal form."""
    if n <= 0:
        raise FoliationError("a non-loose unknot has tb > 0, so n must be at least 1")
    sings = [Singularity("e-0", -1, Kind.ELLIPTIC)]
    seps = []
    boundary = []
    for i in range(n):
        hp, hm = f"h+{i}", f"h-{i}"
        boundary += [hp, hm]
        sings += [
            Singularity(f"e+{i}", 1, Kind.ELLIPTIC),
            Singularity(hp, 1, Kind.HYPERBOLIC),
            Singularity(hm, -1, Kind.HYPERBOLIC),
        ]
        seps += [
            Separatrix(hm, "unstable1", hp),
            Separatrix(hm, "unstable2", f"h+{(i - 1) % n}"),
            Separatrix(hm, "stable1", f"e+{i}"),
            Separatrix(hm, "stable2", ON_BOUNDARY),
            Separatrix(hp, "stable1", hm),
            Separatrix(hp, "stable2", f"h-{(i + 1) % n}"),
            Separatrix(hp, "unstable1", "e-0"),
            Separatrix(hp, "unstable2", ON_BOUNDARY),
        ]
    return FoliationState(Surface.DISC, tuple(sings), tuple(seps), (), tuple(boundary))


def disc_rotation_number(s: FoliationState) -> int:
    """Rotation number of the boundary read off from interior singular points."""
    if s.surface is not Surface.DISC:
        raise FoliationError("rotation number from singularities needs a disc")
    kinds = {s.sing(b).kind for b in s.boundary}
    if len(kinds) > 1:
        raise FoliationError("boundary singularities must be all hyperbolic or all elliptic")
    e_plus = s.count(1, Kind.ELLIPTIC, interior_only=True)
    e_minus = s.count(-1, Kind.ELLIPTIC, interior_only=True)
    h_plus = s.count(1, Kind.HYPERBOLIC, interior_only=True)
    h_minus = s.count(-1, Kind.HYPERBOLIC, interior_only=True)
    return e_plus - e_minus - h_plus + h_minus


# resolutions of retrogradient connections ----------------------------------


class Side(str, Enum):
    BEFORE = "before"
    AFTER = "after"


def _other(slots: tuple[str, str], slot: str) -> str:
    return slots[1 - slots.index(slot)]


def resolution_ends(s: FoliationState, c: RetroConnection, side: Side) -> tuple[str, str]:
    """Far ends ``(target, source)`` of the two leaves of ``c`` once it is pushed to ``side``.

    The negative point's unstable leaf slides along one unstable leaf of the
    positive point, and the positive point's stable leaf along the opposite
    stable leaf of the negative point.  ``BEFORE`` and ``AFTER`` pick the
    two opposite sides.
    """
    side = Side(side)
    ps, ns = s.slots(c.positive), s.slots(c.negative)
    j = STABLE_SLOTS.index(c.stable_slot)
    k = UNSTABLE_SLOTS.index(c.unstable_slot)
    if side is Side.BEFORE:
        target = ps[UNSTABLE_SLOTS[j]]
        source = ns[STABLE_SLOTS[1 - k]]
    else:
        target = ps[UNSTABLE_SLOTS[1 - j]]
        source = ns[STABLE_SLOTS[k]]
    smap = s.sing_map()
    for end in (target, source):
        if end in smap and smap[end].kind is Kind.HYPERBOLIC:
            raise FoliationError(f"resolving {c.label} would create a hyperbolic-hyperbolic leaf at {end!r}")
    return target, source


def resolve(s: FoliationState, sides: dict[RetroConnection, Side]) -> FoliationState:
    """Push each listed connection of ``s`` to the requested side; others stay connected."""
    updates = {}
    for c, side in sides.items():
        target, source = resolution_ends(s, c, side)
        updates[(c.negative, c.unstable_slot)] = target
        updates[(c.positive, c.stable_slot)] = source
    return s.with_slots(updates)
