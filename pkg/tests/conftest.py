import hypothesis.strategies as st
import pytest

from legunknot.front import CrossingEvent, CuspEvent, Role, TorusFrontDiagram

ACCEPTANCE_LINES: list[str] = []


@st.composite
def diagrams(draw, max_crossings=4, max_cusp_pairs=3, max_homology=4):
    """Random valid front words: paired crossings with consistent signs, even cusp count."""
    k = draw(st.integers(0, max_crossings))
    events = []
    for i in range(k):
        sign = draw(st.sampled_from((1, -1)))
        events += [CrossingEvent(f"c{i}", Role.OVER, sign), CrossingEvent(f"c{i}", Role.UNDER, sign)]
    cusps = 2 * draw(st.integers(0, max_cusp_pairs))
    events += [CuspEvent(draw(st.sampled_from((1, -1)))) for _ in range(cusps)]
    events = draw(st.permutations(events))
    a = draw(st.integers(-max_homology, max_homology))
    b = draw(st.integers(-max_homology, max_homology))
    return TorusFrontDiagram(tuple(events), (a, b))


@pytest.fixture
def acceptance_lines():
    return ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def sphere_pool():
    """Every sphere state reachable from the bundled figures, deduplicated."""
    from legunknot import figures
    from legunknot.foliation import Surface

    states = [
        figures.two_elliptic_sphere(),
        figures.augmented_two_elliptic_sphere(),
        figures.minimal_nonloose_sphere(),
        figures.single_retro_sphere(),
        figures.separate_double_sphere(),
        figures.triple_sphere(),
        figures.trivial_triple_sphere(),
        figures.semistable_sphere(),
    ]
    for m in figures.overtwisted_movie_corpus() + [
        figures.simultaneous_double_movie(),
        figures.single_retro_movie(),
        figures.convex_pair_movie(),
    ]:
        states += list(m.states)
    out = []
    for s in states:
        if s.surface is Surface.SPHERE and s not in out:
            out.append(s)
    return out


def expanded_sphere_pool(limit=400):
    """The figure pool closed under resolving connections and cancelling pairs."""
    from legunknot.foliation import (
        FoliationError,
        Kind,
        Side,
        eliminate_pair,
        resolve,
        retrogradient_connections,
        validate_state,
    )

    queue = sphere_pool()
    seen = list(queue)
    while queue and len(seen) < limit:
        s = queue.pop(0)
        if s.closed_leaves:
            continue
        nxt = []
        for c in retrogradient_connections(s):
            for side in Side:
                try:
                    nxt.append(resolve(s, {c: side}))
                except FoliationError:
                    pass
        ell = [x for x in s.singularities if x.kind is Kind.ELLIPTIC]
        hyp = [x for x in s.singularities if x.kind is Kind.HYPERBOLIC]
        for e in ell:
            for h in hyp:
                if e.sign == h.sign:
                    try:
                        nxt.append(eliminate_pair(s, e.id, h.id))
                    except FoliationError:
                        pass
        for t in nxt:
            if t not in seen and validate_state(t).ok:
                seen.append(t)
                queue.append(t)
    return seen
