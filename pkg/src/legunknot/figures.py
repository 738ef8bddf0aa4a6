"""Hand digitizations of standard configurations, used as bundled fixtures."""

from __future__ import annotations

from pathlib import Path

from .foliation import (
    ClosedLeaf,
    FoliationState,
    Holonomy,
    Kind,
    Separatrix,
    Side,
    Singularity,
    Surface,
    normal_form_disc,
    resolve,
    retrogradient_connections,
)
from .front import CrossingEvent, CuspEvent, Role, TorusFrontDiagram, linear_unknot
from .grid import BifurcationGrid
from .io import serialize
from .movie import (
    EventKind,
    LeafSwing,
    Movie,
    MovieEvent,
    enumerate_double_resolutions,
    enumerate_triple_resolutions,
    inverse_event,
)

E, H = Kind.ELLIPTIC, Kind.HYPERBOLIC


def _sphere(points, wiring, closed=()) -> FoliationState:
    sings = [Singularity(i, s, k) for i, s, k in points]
    seps = [Separatrix(a, slot, b) for a, slot, b in wiring]
    return FoliationState(Surface.SPHERE, tuple(sings), tuple(seps), tuple(closed))


def _hyp(h, s1, s2, u1, u2):
    return [(h, "stable1", s1), (h, "stable2", s2), (h, "unstable1", u1), (h, "unstable2", u2)]


# spheres --------------------------------------------------------------------


def two_elliptic_sphere() -> FoliationState:
    return _sphere([("e+", 1, E), ("e-", -1, E)], [])


def augmented_two_elliptic_sphere() -> FoliationState:
    """Two-elliptic sphere with an extra cancelling negative pair."""
    return _sphere(
        [("e+", 1, E), ("e-", -1, E), ("e-x", -1, E), ("h-x", -1, H)],
        _hyp("h-x", "e+", "e+", "e-x", "e-"),
    )


def minimal_nonloose_sphere() -> FoliationState:
    """Sphere through a non-loose unknot with tb = 1: both unstable leaves of
    the negative hyperbolic point run into the positive one."""
    return _sphere(
        [("e+1", 1, E), ("e+2", 1, E), ("e-1", -1, E), ("e-2", -1, E), ("h-", -1, H), ("h+", 1, H)],
        _hyp("h-", "e+1", "e+2", "h+", "h+") + _hyp("h+", "h-", "h-", "e-1", "e-2"),
    )


def single_retro_sphere() -> FoliationState:
    """Exactly one retrogradient connection; the positive point's unstable
    leaves both end in the closed component of the negative graph."""
    return _sphere(
        [("e+1", 1, E), ("e+2", 1, E), ("e-1", -1, E), ("e-2", -1, E), ("h-", -1, H), ("h+", 1, H)],
        _hyp("h-", "e+2", "e+2", "e-1", "h+") + _hyp("h+", "h-", "e+1", "e-2", "e-2"),
    )


def separate_double_sphere() -> FoliationState:
    """Two retrogradient connections starting at different negative trees."""
    pts = [
        ("e+1", 1, E), ("e+2", 1, E), ("e+3", 1, E),
        ("e-1", -1, E), ("e-2", -1, E), ("e-3", -1, E),
        ("h-a", -1, H), ("h-b", -1, H), ("h+a", 1, H), ("h+b", 1, H),
    ]
    wiring = (
        _hyp("h-a", "e+1", "e+1", "e-1", "h+a")
        + _hyp("h-b", "e+1", "e+2", "e-2", "h+b")
        + _hyp("h+a", "h-a", "e+2", "e-2", "e-3")
        + _hyp("h+b", "h-b", "e+3", "e-3", "e-3")
    )
    return _sphere(pts, wiring)


def triple_sphere() -> FoliationState:
    """Three simultaneous retrogradient connections.

    ``h-0`` starts two of them (to ``hA`` and ``hBC``), ``h-1`` the third
    (to ``hBC``).  Resolving the lone connection first always produces a
    negative graph that is not a forest of three trees.
    """
    pts = [
        ("e+1", 1, E), ("e+2", 1, E), ("e+3", 1, E),
        ("e-1", -1, E), ("e-2", -1, E), ("e-3", -1, E),
        ("h-0", -1, H), ("h-1", -1, H), ("hA", 1, H), ("hBC", 1, H),
    ]
    wiring = (
        _hyp("h-0", "e+1", "e+2", "hA", "hBC")
        + _hyp("h-1", "e+3", "e+1", "e-1", "hBC")
        + _hyp("hA", "h-0", "e+3", "e-1", "e-3")
        + _hyp("hBC", "h-1", "h-0", "e-2", "e-3")
    )
    return _sphere(pts, wiring)


def trivial_triple_sphere() -> FoliationState:
    """The minimal non-loose sphere plus a third connection whose two
    resolutions land in the same negative component."""
    pts = [
        ("e+1", 1, E), ("e+2", 1, E), ("e+3", 1, E),
        ("e-1", -1, E), ("e-2", -1, E), ("e-3", -1, E),
        ("h-", -1, H), ("h+", 1, H), ("h-t", -1, H), ("h+t", 1, H),
    ]
    wiring = (
        _hyp("h-", "e+1", "e+2", "h+", "h+")
        + _hyp("h+", "h-", "h-", "e-1", "e-2")
        + _hyp("h-t", "e+1", "e+2", "e-3", "h+t")
        + _hyp("h+t", "h-t", "e+3", "e-1", "e-1")
    )
    return _sphere(pts, wiring)


def semistable_sphere(holonomy: Holonomy = Holonomy.SEMISTABLE_ABOVE) -> FoliationState:
    return _sphere([("e+", 1, E), ("e-", -1, E)], [], closed=[ClosedLeaf("c0", holonomy)])


# movies ---------------------------------------------------------------------


def double_resolution_movies() -> list[Movie]:
    return [r.movie for r in enumerate_double_resolutions(minimal_nonloose_sphere())]


def _swing(c, pre_state, post_state) -> LeafSwing:
    key_u, key_s = (c.negative, c.unstable_slot), (c.positive, c.stable_slot)
    return LeafSwing(
        key_u, key_s,
        pre_state.slot(*key_u), post_state.slot(*key_u),
        pre_state.slot(*key_s), post_state.slot(*key_s),
    )


def _through_connection(s: FoliationState, name: str) -> Movie:
    """Sphere ``s`` flanked by all connections pushed before and all pushed after."""
    conns = retrogradient_connections(s)
    before = resolve(s, {c: Side.BEFORE for c in conns})
    after = resolve(s, {c: Side.AFTER for c in conns})
    return Movie(
        (before, s, after),
        (
            MovieEvent.crossing([_swing(c, before, s) for c in conns]),
            MovieEvent.crossing([_swing(c, s, after) for c in conns]),
        ),
        name,
    )


def simultaneous_double_movie() -> Movie:
    """Tight spheres on both sides of the minimal non-loose sphere."""
    return _through_connection(minimal_nonloose_sphere(), "simultaneous double")


def single_retro_movie() -> Movie:
    return _through_connection(single_retro_sphere(), "single retrogradient")


def convex_pair_movie() -> Movie:
    """Two-elliptic sphere, a cancelling pair created, then eliminated again."""
    a, b = two_elliptic_sphere(), augmented_two_elliptic_sphere()
    return Movie(
        (a, b, a),
        (
            MovieEvent(EventKind.PAIR_CREATION, elliptic="e-x", hyperbolic="h-x"),
            MovieEvent(EventKind.PAIR_ELIMINATION, elliptic="e-x", hyperbolic="h-x"),
        ),
        "convex pair",
    )


def closed_orbit_movie(holonomy: Holonomy = Holonomy.SEMISTABLE_ABOVE) -> Movie:
    """A closed orbit is born, splits into two, merges and dies again."""
    bare, semi = two_elliptic_sphere(), semistable_sphere(holonomy)
    pair = FoliationState(
        Surface.SPHERE, bare.singularities, (),
        (ClosedLeaf("c1", Holonomy.ATTRACTING), ClosedLeaf("c2", Holonomy.REPELLING)),
    )
    kw = dict(semistable="c0", semistable_holonomy=holonomy)
    return Movie(
        (bare, semi, pair, semi, bare),
        (
            MovieEvent(EventKind.CLOSED_ORBIT_BIRTH, **kw),
            MovieEvent(EventKind.CLOSED_ORBIT_BIRTH, created=("c1", "c2"), **kw),
            MovieEvent(EventKind.CLOSED_ORBIT_DEATH, created=("c1", "c2"), **kw),
            MovieEvent(EventKind.CLOSED_ORBIT_DEATH, **kw),
        ),
        f"closed orbit ({holonomy.value})",
    )


def _concat(first: Movie, second: Movie, name: str) -> Movie:
    if first.states[-1] != second.states[0]:
        raise ValueError("movies do not share the junction state")
    return Movie(first.states + second.states[1:], first.events + second.events, name)


def _reverse(m: Movie, name: str) -> Movie:
    return Movie(m.states[::-1], tuple(inverse_event(e) for e in m.events[::-1]), name)


def _with_pair_tail(m: Movie, name: str) -> Movie:
    """Append creation and elimination of a cancelling negative pair."""
    last = m.states[-1]
    gm_target = next(x.id for x in last.singularities if x.kind is E and x.sign < 0)
    src = next(x.id for x in last.singularities if x.kind is E and x.sign > 0)
    grown = FoliationState(
        Surface.SPHERE,
        last.singularities + (Singularity("e-x", -1, E), Singularity("h-x", -1, H)),
        last.separatrices + tuple(Separatrix(a, slot, b) for a, slot, b in _hyp("h-x", src, src, "e-x", gm_target)),
    )
    tail = Movie(
        (last, grown, last),
        (
            MovieEvent(EventKind.PAIR_CREATION, elliptic="e-x", hyperbolic="h-x"),
            MovieEvent(EventKind.PAIR_ELIMINATION, elliptic="e-x", hyperbolic="h-x"),
        ),
    )
    return _concat(m, tail, name)


def overtwisted_movie_corpus() -> list[Movie]:
    """Movies with tight ends and an overtwisted or undecided middle."""
    d1, d2 = double_resolution_movies()
    loops = [
        _concat(d1, _reverse(d2, ""), "double resolution loop 1"),
        _concat(d2, _reverse(d1, ""), "double resolution loop 2"),
    ]
    triple = [s.movie for s in enumerate_triple_resolutions(triple_sphere()).schedules]
    return [
        Movie(d1.states, d1.events, "double resolution 1"),
        Movie(d2.states, d2.events, "double resolution 2"),
        *loops,
        _with_pair_tail(d1, "double resolution 1 with pair"),
        _with_pair_tail(d2, "double resolution 2 with pair"),
        closed_orbit_movie(Holonomy.SEMISTABLE_ABOVE),
        closed_orbit_movie(Holonomy.SEMISTABLE_BELOW),
        *[Movie(m.states, m.events, f"triple schedule {i}") for i, m in enumerate(triple)],
    ]


# fronts ---------------------------------------------------------------------


def contractible_front() -> TorusFrontDiagram:
    """Standard tight unknot: one zig-zag, no crossings."""
    return TorusFrontDiagram((CuspEvent(1), CuspEvent(-1)), (0, 0), "tight-unknot")


def figure_eight_front() -> TorusFrontDiagram:
    """A contractible front with one kinked crossing and two cusp pairs."""
    return TorusFrontDiagram(
        (
            CrossingEvent("x", Role.OVER, 1), CuspEvent(1), CuspEvent(-1),
            CrossingEvent("x", Role.UNDER, 1), CuspEvent(1), CuspEvent(-1),
        ),
        (0, 0),
        "kinked-unknot",
    )


def front_corpus() -> dict[str, TorusFrontDiagram]:
    out = {
        "k11": linear_unknot(1, 1),
        "k12": linear_unknot(1, 2),
        "k21": linear_unknot(2, 1),
        "k31": linear_unknot(3, 1),
        "k10": linear_unknot(1, 0),
        "k01": linear_unknot(0, 1),
        "tight_unknot": contractible_front(),
        "kinked_unknot": figure_eight_front(),
    }
    return out


# grids ----------------------------------------------------------------------


def forbidden_grid() -> BifurcationGrid:
    return BifurcationGrid.from_rows([
        "1 1 W 2 2 2 W 1 1",
        "1 1 1 W 2 W 1 1 1",
        "1 1 1 1 W 1 1 1 1",
        "1 1 1 W 1 W 1 1 1",
        "1 1 W 1 1 1 W 1 1",
    ])


def legal_grids() -> list[BifurcationGrid]:
    rows = [
        ["1 1 1", "1 1 1"],
        ["1 W 2", "1 W 2", "1 W 2"],
        ["1 W 1", "1 W 1"],
        ["1 1 W 2 2", "1 1 W 2 2", "1 W 2 2 2"],
        ["1 W 2 W 1", "1 W 2 W 1", "1 W 2 W 1"],
        ["1 W 1 W 1", "1 1 W 1 1", "1 W 1 W 1"],
        ["1 W 2 W 1", "1 2 W 2 1", "1 W 1 W 1"],
        ["1 W 1 W 1", "1 1 W 1 1", "1 W 1 W 1", "1 W 1 W 1"],
        ["2 W 2 W 2", "2 2 W 2 2", "2 W 2 W 2"],
        ["1 W 3 W 1", "2 2 W 2 2", "1 W 3 W 1"],
        ["1 W 2 W 2", "1 1 W 2 2", "1 W 2 W 2"],
        ["1 1 W 2 2 2 W 1 1", "1 1 1 W 2 W 1 1 1", "1 1 1 W 2 W 1 1 1"],
        ["1 1 W 1 1 1 W 1 1", "1 1 1 W 1 W 1 1 1", "1 1 1 1 W 1 1 1 1", "1 1 1 W 1 W 1 1 1"],
        ["W 1 1", "1 W 1", "1 1 W"],
        ["1 1 W", "1 W 1", "W 1 1"],
        ["W 1 W", "1 W 1", "W 1 W"],
        ["1 W 1 1 W 1", "1 W 1 1 W 1"],
        ["3 3 3 3", "3 3 3 3"],
        ["1 W 2 2 W 1", "1 2 W W 2 1", "1 W 1 1 W 1"],
        ["1 W 1 W 1 1", "1 1 W 1 1 1", "1 W 1 W 1 1", "1 1 W 1 1 1", "1 W 1 W 1 1"],
    ]
    return [BifurcationGrid.from_rows(r) for r in rows]


# bundled corpus -------------------------------------------------------------


def _slug(name: str) -> str:
    return "_".join("".join(c if c.isalnum() else " " for c in name).split())


def corpus_documents() -> dict[str, object]:
    """File name to value for every document shipped in the corpus directory."""
    docs: dict[str, object] = {f"{k}.json": d for k, d in front_corpus().items()}
    docs.update({
        "two_elliptic.json": two_elliptic_sphere(),
        "minimal_nonloose.json": minimal_nonloose_sphere(),
        "single_retro.json": single_retro_sphere(),
        "separate_double.json": separate_double_sphere(),
        "triple.json": triple_sphere(),
        "trivial_triple.json": trivial_triple_sphere(),
        "semistable.json": semistable_sphere(),
        "normal_form_disc_3.json": normal_form_disc(3),
    })
    for m in overtwisted_movie_corpus():
        docs[f"movie_{_slug(m.name)}.json"] = m
    docs["movie_simultaneous_double.json"] = simultaneous_double_movie()
    docs["movie_single_retro.json"] = single_retro_movie()
    docs["movie_convex_pair.json"] = convex_pair_movie()
    docs["grid_forbidden.json"] = forbidden_grid()
    for i, g in enumerate(legal_grids()):
        docs[f"grid_legal_{i:02d}.json"] = g
    return docs


def write_corpus(directory) -> list[str]:
    root = Path(directory)
    root.mkdir(parents=True, exist_ok=True)
    names = []
    for name, value in sorted(corpus_documents().items()):
        (root / name).write_text(serialize(value), encoding="utf-8")
        names.append(name)
    return names
