"""One-parameter families of sphere foliations and their tight/overtwisted verdicts."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Optional, Sequence

from .foliation import (
    STABLE_SLOTS,
    UNSTABLE_SLOTS,
    ClosedLeaf,
    FoliationError,
    FoliationState,
    Holonomy,
    Kind,
    RetroConnection,
    Separatrix,
    Side,
    Surface,
    _is_tree,
    components,
    detect_nonloose_unknot,
    dividing_components,
    eliminate_pair,
    graph_minus,
    graph_plus,
    is_convex,
    resolution_ends,
    retrogradient_connections,
    validate_state,
)
from .front import ValidationReport


class MovieError(ValueError):
    pass


class EventKind(str, Enum):
    RETRO_CROSSING = "retro_crossing"
    CLOSED_ORBIT_BIRTH = "closed_orbit_birth"
    CLOSED_ORBIT_DEATH = "closed_orbit_death"
    PAIR_CREATION = "pair_creation"
    PAIR_ELIMINATION = "pair_elimination"
    SAME_SIGN_CONNECTION = "same_sign_connection"


@dataclass(frozen=True)
class LeafSwing:
    """One leaf pair moving through a connection between two hyperbolic points.

    ``unstable`` is the ``(point, slot)`` whose leaf leaves the connection
    and ``stable`` the ``(point, slot)`` it used to enter.  Targets are the
    far ends of the unstable slot before and after the event, sources those
    of the stable slot.
    """

    unstable: tuple[str, str]
    stable: tuple[str, str]
    pre_target: str
    post_target: str
    pre_source: str
    post_source: str

    def as_connection(self) -> RetroConnection:
        return RetroConnection(self.unstable[0], self.unstable[1], self.stable[0], self.stable[1])


@dataclass(frozen=True)
class MovieEvent:
    kind: EventKind
    swings: tuple[LeafSwing, ...] = ()
    semistable: Optional[str] = None
    created: tuple[str, ...] = ()
    elliptic: Optional[str] = None
    hyperbolic: Optional[str] = None
    semistable_holonomy: Holonomy = Holonomy.SEMISTABLE_ABOVE

    def __post_init__(self):
        object.__setattr__(self, "kind", EventKind(self.kind))
        object.__setattr__(self, "semistable_holonomy", Holonomy(self.semistable_holonomy))
        if not self.semistable_holonomy.semistable:
            raise MovieError("semistable_holonomy must be a semistable type")
        object.__setattr__(self, "swings", tuple(self.swings))
        object.__setattr__(self, "created", tuple(self.created))

    @classmethod
    def crossing(cls, swings: Sequence[LeafSwing], same_sign: bool = False) -> "MovieEvent":
        kind = EventKind.SAME_SIGN_CONNECTION if same_sign else EventKind.RETRO_CROSSING
        return cls(kind, swings=tuple(swings))


@dataclass(frozen=True)
class Movie:
    states: tuple[FoliationState, ...]
    events: tuple[MovieEvent, ...]
    name: Optional[str] = None

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "events", tuple(self.events))

    @property
    def simultaneous_marks(self) -> frozenset[int]:
        return frozenset(
            i for i, s in enumerate(self.states)
            if validate_state(s).ok and len(retrogradient_connections(s)) >= 2
        )


# event rewrites -------------------------------------------------------------


def _apply_swings(s: FoliationState, ev: MovieEvent) -> FoliationState:
    smap = s.sing_map()
    updates = {}
    for w in ev.swings:
        up, st = smap.get(w.unstable[0]), smap.get(w.stable[0])
        if up is None or st is None or up.kind is not Kind.HYPERBOLIC or st.kind is not Kind.HYPERBOLIC:
            raise MovieError("crossing events join two hyperbolic points")
        if w.unstable[1] not in UNSTABLE_SLOTS or w.stable[1] not in STABLE_SLOTS:
            raise MovieError("crossing events name an unstable and a stable slot")
        if ev.kind is EventKind.RETRO_CROSSING and not (up.sign < 0 < st.sign):
            raise MovieError("retro_crossing runs from a negative to a positive hyperbolic point")
        if ev.kind is EventKind.SAME_SIGN_CONNECTION and up.sign != st.sign:
            raise MovieError("same_sign_connection joins hyperbolic points of equal sign")
        if (w.pre_target, w.pre_source) == (w.post_target, w.post_source):
            raise MovieError("crossing event does not move its leaves")
        if s.slot(*w.unstable) != w.pre_target or s.slot(*w.stable) != w.pre_source:
            raise MovieError(f"state does not match pre-position of {w.unstable[0]}.{w.unstable[1]}")
        updates[w.unstable] = w.post_target
        updates[w.stable] = w.post_source
    return s.with_slots(updates)


def _retarget_closed(s: FoliationState, old: set[str], attracting: str, repelling: str) -> list[Separatrix]:
    out = []
    for sp in s.separatrices:
        if sp.to in old:
            x = s.sing(sp.sing)
            incoming = sp.slot in STABLE_SLOTS or (sp.slot == "bd_leaf" and x.sign > 0)
            out.append(Separatrix(sp.sing, sp.slot, repelling if incoming else attracting))
        else:
            out.append(sp)
    return out


def _closed_orbit_event(s: FoliationState, ev: MovieEvent) -> FoliationState:
    """Closed orbits appear as a semistable leaf which then splits into two.

    With ``created`` empty the event is the appearance (birth) or the
    disappearance (death) of the semistable leaf itself; with two created
    ids it is the split (birth) or the merge (death).
    """
    if ev.semistable is None or len(ev.created) not in (0, 2):
        raise MovieError(f"{ev.kind.value} needs a semistable id and zero or two created ids")
    leaves = {c.id: c for c in s.closed_leaves}
    semi = ClosedLeaf(ev.semistable, ev.semistable_holonomy)
    birth = ev.kind is EventKind.CLOSED_ORBIT_BIRTH
    if not ev.created:
        if birth:
            if ev.semistable in s.ids():
                raise MovieError(f"id {ev.semistable!r} already in use")
            return replace(s, closed_leaves=s.closed_leaves + (semi,))
        if leaves.get(ev.semistable) != semi:
            raise MovieError(f"no {semi.holonomy.value} closed leaf {ev.semistable!r}")
        if any(sp.to == ev.semistable for sp in s.separatrices):
            raise MovieError(f"separatrices still accumulate on {ev.semistable!r}")
        return replace(s, closed_leaves=tuple(c for c in s.closed_leaves if c.id != ev.semistable))
    att, rep = ev.created
    if birth:
        if leaves.get(ev.semistable) != semi:
            raise MovieError(f"no {semi.holonomy.value} closed leaf {ev.semistable!r}")
        if {att, rep} & s.ids():
            raise MovieError("created closed leaf ids already in use")
        kept = [c for c in s.closed_leaves if c.id != ev.semistable]
        kept += [ClosedLeaf(att, Holonomy.ATTRACTING), ClosedLeaf(rep, Holonomy.REPELLING)]
        seps = _retarget_closed(s, {ev.semistable}, att, rep)
        return replace(s, closed_leaves=tuple(kept), separatrices=tuple(seps))
    if leaves.get(att) != ClosedLeaf(att, Holonomy.ATTRACTING):
        raise MovieError(f"no attracting closed leaf {att!r}")
    if leaves.get(rep) != ClosedLeaf(rep, Holonomy.REPELLING):
        raise MovieError(f"no repelling closed leaf {rep!r}")
    kept = [c for c in s.closed_leaves if c.id not in (att, rep)] + [semi]
    seps = _retarget_closed(s, {att, rep}, ev.semistable, ev.semistable)
    return replace(s, closed_leaves=tuple(kept), separatrices=tuple(seps))


def apply_event(s: FoliationState, ev: MovieEvent, post: Optional[FoliationState] = None) -> FoliationState:
    """Image of ``s`` under ``ev``.

    ``pair_creation`` is only determined by its result, so it needs ``post``
    and checks that eliminating the created pair from ``post`` gives ``s``.
    """
    kind = ev.kind
    if kind in (EventKind.RETRO_CROSSING, EventKind.SAME_SIGN_CONNECTION):
        if not ev.swings:
            raise MovieError("crossing event without leaves")
        return _apply_swings(s, ev)
    if kind in (EventKind.CLOSED_ORBIT_BIRTH, EventKind.CLOSED_ORBIT_DEATH):
        return _closed_orbit_event(s, ev)
    if kind is EventKind.PAIR_ELIMINATION:
        return eliminate_pair(s, ev.elliptic, ev.hyperbolic)
    if kind is EventKind.PAIR_CREATION:
        if post is None:
            raise MovieError("pair_creation is checked against its resulting state")
        if eliminate_pair(post, ev.elliptic, ev.hyperbolic) != s:
            raise MovieError("eliminating the created pair does not recover the previous state")
        return post
    raise MovieError(f"unknown event kind {kind!r}")


def inverse_event(ev: MovieEvent) -> MovieEvent:
    if ev.kind in (EventKind.RETRO_CROSSING, EventKind.SAME_SIGN_CONNECTION):
        swings = tuple(
            LeafSwing(w.unstable, w.stable, w.post_target, w.pre_target, w.post_source, w.pre_source)
            for w in ev.swings
        )
        return replace(ev, swings=swings)
    flip = {
        EventKind.CLOSED_ORBIT_BIRTH: EventKind.CLOSED_ORBIT_DEATH,
        EventKind.CLOSED_ORBIT_DEATH: EventKind.CLOSED_ORBIT_BIRTH,
        EventKind.PAIR_CREATION: EventKind.PAIR_ELIMINATION,
        EventKind.PAIR_ELIMINATION: EventKind.PAIR_CREATION,
    }
    return replace(ev, kind=flip[ev.kind])


def validate_movie(m: Movie) -> ValidationReport:
    v = []
    if not m.states:
        v.append("movie has no states")
    if len(m.events) != max(len(m.states) - 1, 0):
        v.append(f"{len(m.states)} states need {len(m.states) - 1} events, got {len(m.events)}")
    for i, s in enumerate(m.states):
        if s.surface is not Surface.SPHERE:
            v.append(f"state {i}: movies run through spheres")
        r = validate_state(s)
        v.extend(f"state {i}: {msg}" for msg in r.violations)
    if v:
        return ValidationReport(tuple(v))
    for i, ev in enumerate(m.events):
        pre, post = m.states[i], m.states[i + 1]
        try:
            got = apply_event(pre, ev, post)
        except (MovieError, FoliationError, KeyError) as exc:
            v.append(f"event {i} ({ev.kind.value}): {exc}")
            continue
        if got != post:
            v.append(f"event {i} ({ev.kind.value}): rewrite of state {i} does not give state {i + 1}")
    return ValidationReport(tuple(v))


def require_valid_movie(m: Movie) -> None:
    r = validate_movie(m)
    if not r.ok:
        raise MovieError("invalid movie: " + "; ".join(r.violations))


# verdicts -------------------------------------------------------------------


class Verdict(str, Enum):
    TIGHT = "tight"
    OVERTWISTED = "overtwisted"
    UNDETERMINED = "undetermined"


@dataclass(frozen=True)
class MovieVerdict:
    verdict: Verdict
    witness: Optional[int] = None

    def __str__(self) -> str:
        if self.verdict is Verdict.OVERTWISTED:
            return f"overtwisted({self.witness})"
        return self.verdict.value


def _removable(g, sign_index_ok) -> bool:
    return all(_is_tree(g.subgraph(c)) and sign_index_ok(g.subgraph(c)) for c in components(g))


def _balanced(s: FoliationState):
    smap = s.sing_map()

    def ok(sub) -> bool:
        e = sum(1 for x in sub.nodes if smap[x].kind is Kind.ELLIPTIC)
        h = sum(1 for x in sub.nodes if smap[x].kind is Kind.HYPERBOLIC)
        return e >= h

    return ok


def state_verdict(s: FoliationState) -> Verdict:
    """Tight/overtwisted evidence carried by a single sphere."""
    if s.closed_leaves:
        # a hyperbolic closed leaf bounds an overtwisted disc; a semistable
        # one forces hyperbolic closed leaves on a neighbouring sphere
        return Verdict.OVERTWISTED
    if is_convex(s):
        return Verdict.TIGHT if dividing_components(s) == 1 else Verdict.OVERTWISTED
    ok = _balanced(s)
    if _removable(graph_minus(s), ok) and _removable(graph_plus(s), ok):
        return Verdict.TIGHT
    return Verdict.UNDETERMINED


def states_verdict(states: Sequence[FoliationState]) -> MovieVerdict:
    verdicts = [state_verdict(s) for s in states]
    for i, v in enumerate(verdicts):
        if v is Verdict.OVERTWISTED:
            return MovieVerdict(Verdict.OVERTWISTED, i)
    if all(v is Verdict.TIGHT for v in verdicts):
        return MovieVerdict(Verdict.TIGHT)
    return MovieVerdict(Verdict.UNDETERMINED)


def tight_verdict(m: Movie) -> MovieVerdict:
    require_valid_movie(m)
    return states_verdict(m.states)


def movie_T_bounds(m: Movie) -> Optional[tuple[int, int]]:
    """Indices bounding the tight prefix and the tight suffix.

    ``T_minus`` is the largest ``i`` with ``states[:i]`` tight and ``T_plus``
    the smallest ``i`` with ``states[i+1:]`` tight.
    """
    require_valid_movie(m)
    if state_verdict(m.states[0]) is not Verdict.TIGHT or state_verdict(m.states[-1]) is not Verdict.TIGHT:
        raise MovieError("boundary spheres must have tight neighbourhoods")
    if states_verdict(m.states).verdict is Verdict.TIGHT:
        return None
    n = len(m.states)
    t_minus = max(i for i in range(n + 1) if states_verdict(m.states[:i]).verdict is Verdict.TIGHT)
    t_plus = min(i for i in range(-1, n) if states_verdict(m.states[i + 1:]).verdict is Verdict.TIGHT)
    return t_minus, t_plus


def detect_nonloose_states(m: Movie) -> list[int]:
    require_valid_movie(m)
    out = []
    for i, s in enumerate(m.states):
        if detect_nonloose_unknot(s) is None:
            continue
        before = states_verdict(m.states[:i]).verdict
        after = states_verdict(m.states[i + 1:]).verdict
        if before is Verdict.TIGHT and after is Verdict.TIGHT:
            out.append(i)
    return out


# resolutions ----------------------------------------------------------------


def _position(s: FoliationState, c: RetroConnection, where) -> tuple[str, str]:
    if where == "connected":
        return c.positive, c.negative
    return resolution_ends(s, c, where)


def _swing(s, c, pre, post) -> LeafSwing:
    pt, ps = _position(s, c, pre)
    qt, qs = _position(s, c, post)
    return LeafSwing((c.negative, c.unstable_slot), (c.positive, c.stable_slot), pt, qt, ps, qs)


def _state_at(s, placement: dict) -> FoliationState:
    updates = {}
    for c, where in placement.items():
        t, src = _position(s, c, where)
        updates[(c.negative, c.unstable_slot)] = t
        updates[(c.positive, c.stable_slot)] = src
    return s.with_slots(updates)


def _movie_from_placements(s, conns, placements, name) -> Movie:
    states = [_state_at(s, p) for p in placements]
    events = []
    for p, q in zip(placements, placements[1:]):
        moved = [c for c in conns if p[c] != q[c]]
        events.append(MovieEvent.crossing([_swing(s, c, p[c], q[c]) for c in moved]))
    return Movie(tuple(states), tuple(events), name)


@dataclass(frozen=True)
class DoubleResolution:
    ordering: tuple[str, str]
    movie: Movie
    verdict: MovieVerdict


def enumerate_double_resolutions(s: FoliationState) -> list[DoubleResolution]:
    """Split a simultaneous pair of retrogradient connections into the two possible orders."""
    conns = retrogradient_connections(s)
    if len(conns) != 2:
        raise MovieError(f"expected exactly 2 retrogradient connections, found {len(conns)}")
    before, after = Side.BEFORE, Side.AFTER
    out = []
    for first, second in (conns, conns[::-1]):
        placements = [
            {first: before, second: before},
            {first: after, second: before},
            {first: after, second: after},
        ]
        m = _movie_from_placements(s, conns, placements, f"{first.label} then {second.label}")
        require_valid_movie(m)
        v = states_verdict(m.states[1:2])
        if v.witness is not None:
            v = MovieVerdict(v.verdict, 1)
        out.append(DoubleResolution((first.label, second.label), m, v))
    return out


class ScheduleVerdict(str, Enum):
    IN_L_GEN = "in_L_gen"
    EXCLUDED = "excluded"


@dataclass(frozen=True)
class Schedule:
    lone: str
    lone_first: bool
    movie: Movie
    double_index: int
    verdict: ScheduleVerdict

    @property
    def name(self) -> str:
        return f"{self.lone} {'before' if self.lone_first else 'after'} double"


@dataclass(frozen=True)
class TripleResolution:
    schedules: tuple[Schedule, ...]
    trivial_connections: tuple[str, ...] = field(default=())

    @property
    def smooth_point(self) -> bool:
        return bool(self.trivial_connections)

    @property
    def in_L_gen(self) -> tuple[Schedule, ...]:
        return tuple(x for x in self.schedules if x.verdict is ScheduleVerdict.IN_L_GEN)


def is_trivial_connection(s: FoliationState, c: RetroConnection) -> bool:
    """True when resolving ``c`` either way lands its leaf in the same negative component."""
    g = graph_minus(s)
    t_before, _ = resolution_ends(s, c, Side.BEFORE)
    t_after, _ = resolution_ends(s, c, Side.AFTER)
    for comp in components(g):
        if t_before in comp:
            return t_after in comp
    return False


def enumerate_triple_resolutions(s: FoliationState) -> TripleResolution:
    """The six ways to split three simultaneous connections into a lone one plus a double."""
    conns = retrogradient_connections(s)
    if len(conns) != 3:
        raise MovieError(f"expected exactly 3 retrogradient connections, found {len(conns)}")
    B, A = Side.BEFORE, Side.AFTER
    schedules = []
    for lone in conns:
        others = [c for c in conns if c != lone]

        def place(lone_at, others_at):
            p = {c: others_at for c in others}
            p[lone] = lone_at
            return p

        for lone_first in (True, False):
            if lone_first:
                placements = [place(B, B), place(A, B), place(A, "connected"), place(A, A)]
                k = 2
            else:
                placements = [place(B, B), place(B, "connected"), place(B, A), place(A, A)]
                k = 1
            m = _movie_from_placements(s, conns, placements, f"{lone.label} {'before' if lone_first else 'after'}")
            require_valid_movie(m)
            flanks = [x for i, x in enumerate(m.states) if i != k]
            fires = detect_nonloose_unknot(m.states[k]) is not None
            clean = all(state_verdict(x) is not Verdict.OVERTWISTED for x in flanks)
            verdict = ScheduleVerdict.IN_L_GEN if fires and clean else ScheduleVerdict.EXCLUDED
            schedules.append(Schedule(lone.label, lone_first, m, k, verdict))
    trivial = tuple(c.label for c in conns if is_trivial_connection(s, c))
    return TripleResolution(tuple(schedules), trivial)
