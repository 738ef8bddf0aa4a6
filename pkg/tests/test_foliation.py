import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from legunknot import figures
from legunknot.foliation import (
    ON_BOUNDARY,
    FoliationError,
    Kind,
    RetroConnection,
    Separatrix,
    Side,
    Singularity,
    Surface,
    FoliationState,
    component_defect,
    components,
    connections_from,
    detect_nonloose_unknot,
    disc_rotation_number,
    dividing_components,
    eliminate_pair,
    graph_minus,
    graph_plus,
    is_convex,
    normal_form_disc,
    resolve,
    retrogradient_connections,
    split_boundary_hyperbolic,
    validate_state,
)

from .conftest import expanded_sphere_pool

POOL = expanded_sphere_pool()
OPEN = [s for s in POOL if not s.closed_leaves]
pool_states = st.sampled_from(OPEN)


def _uf_cycles(s, sign):
    """E - V + c for the sign's graph, built straight from the separatrix records."""
    smap = s.sing_map()
    verts = {x.id for x in s.singularities if x.sign == sign}
    parent = {v: v for v in verts}

    def find(v):
        while parent[v] != v:
            v = parent[v]
        return v

    edges = 0
    for sp in s.separatrices:
        owner = smap[sp.sing]
        if owner.sign != sign or sp.to not in verts:
            continue
        if owner.kind is Kind.HYPERBOLIC:
            wanted = ("stable1", "stable2") if sign > 0 else ("unstable1", "unstable2")
            if sp.slot not in wanted:
                continue
        elif sp.slot != "bd_leaf":
            continue
        edges += 1
        a, b = find(sp.sing), find(sp.to)
        if a != b:
            parent[a] = b
    comps = len({find(v) for v in verts})
    return edges - len(verts) + comps, comps


@given(pool_states)
def test_dividing_count_matches_both_graphs(s):
    plus, c_plus = _uf_cycles(s, 1)
    minus, c_minus = _uf_cycles(s, -1)
    assert plus == minus
    if is_convex(s):
        assert dividing_components(s) == plus + c_plus == minus + c_minus


def test_hand_counted_dividing_sets():
    assert dividing_components(figures.two_elliptic_sphere()) == 1
    s = figures.minimal_nonloose_sphere()
    a, b = retrogradient_connections(s)
    assert dividing_components(resolve(s, {a: Side.BEFORE, b: Side.BEFORE})) == 1
    assert dividing_components(resolve(s, {a: Side.AFTER, b: Side.AFTER})) == 1
    assert dividing_components(resolve(s, {a: Side.AFTER, b: Side.BEFORE})) == 3


@given(pool_states)
def test_detection_implies_two_connections(s):
    if detect_nonloose_unknot(s) is not None:
        assert not is_convex(s)
        assert len(retrogradient_connections(s)) == 2


@given(pool_states)
def test_defect_sum_equals_component_count(s):
    g = graph_minus(s)
    comps = components(g)
    if all(g.subgraph(c).number_of_edges() == len(c) - 1 for c in comps):
        total = sum(component_defect(s, c) + connections_from(s, c) for c in comps)
        assert total == len(comps)


@settings(max_examples=200)
@given(pool_states, st.data())
def test_elimination_removes_two_points(s, data):
    pairs = [
        (e.id, h.id)
        for e in s.singularities
        for h in s.singularities
        if e.kind is Kind.ELLIPTIC and h.kind is Kind.HYPERBOLIC and e.sign == h.sign
    ]
    if not pairs:
        return
    e, h = data.draw(st.sampled_from(pairs))
    try:
        out = eliminate_pair(s, e, h)
    except FoliationError:
        return
    assert len(out.singularities) == len(s.singularities) - 2
    assert sum(x.kind.index for x in out.singularities) == sum(x.kind.index for x in s.singularities)
    assert validate_state(out).ok


def test_single_retro_reduces_to_two_elliptic_sphere():
    s = figures.single_retro_sphere()
    (c,) = retrogradient_connections(s)
    before = resolve(s, {c: Side.BEFORE})
    out = eliminate_pair(eliminate_pair(before, "e+1", "h+"), "e-1", "h-")
    assert out.separatrices == () and out.closed_leaves == ()
    assert sorted((x.sign, x.kind) for x in out.singularities) == sorted(
        (x.sign, x.kind) for x in figures.two_elliptic_sphere().singularities
    )


def test_minimal_sphere_witness():
    s = figures.minimal_nonloose_sphere()
    w = detect_nonloose_unknot(s)
    assert w is not None
    assert len(w.connections) == 2
    assert w.negative_path == ("h-",)


def test_no_witness_on_convex_or_separate_states():
    assert detect_nonloose_unknot(figures.two_elliptic_sphere()) is None
    assert detect_nonloose_unknot(figures.separate_double_sphere()) is None
    assert detect_nonloose_unknot(figures.single_retro_sphere()) is None


def test_connection_labels():
    conns = retrogradient_connections(figures.minimal_nonloose_sphere())
    assert [c.label for c in conns] == ["h-.unstable1->h+.stable1", "h-.unstable2->h+.stable2"]
    assert conns[0] == RetroConnection("h-", "unstable1", "h+", "stable1")


@pytest.mark.parametrize("n", range(1, 11))
def test_normal_form_disc(n):
    d = normal_form_disc(n)
    assert validate_state(d).ok
    assert d.count(1, Kind.ELLIPTIC) == n
    assert d.count(-1, Kind.ELLIPTIC) == 1
    assert disc_rotation_number(d) == n - 1


def test_normal_form_disc_rejects_nonpositive():
    with pytest.raises(FoliationError):
        normal_form_disc(0)


def _boundary_disc(sign):
    """A disc whose boundary hyperbolic point ``h`` has its outgoing (positive) or incoming (negative) leaves on the boundary."""
    sinks = -sign
    sings = [
        Singularity("h", sign, Kind.HYPERBOLIC),
        Singularity("ea", sinks, Kind.ELLIPTIC),
        Singularity("eb", sinks, Kind.ELLIPTIC),
        Singularity("ec", sign, Kind.ELLIPTIC),
        Singularity("ei", sign, Kind.ELLIPTIC),
    ]
    along, across = ("unstable", "stable") if sign > 0 else ("stable", "unstable")
    seps = [
        Separatrix("h", f"{along}1", "ea"),
        Separatrix("h", f"{along}2", "eb"),
        Separatrix("h", f"{across}1", "ei"),
        Separatrix("h", f"{across}2", ON_BOUNDARY),
    ]
    return FoliationState(Surface.DISC, tuple(sings), tuple(seps), (), ("ea", "h", "eb", "ec"))


@pytest.mark.parametrize("sign", [1, -1])
def test_split_boundary_hyperbolic(sign):
    d = _boundary_disc(sign)
    assert validate_state(d).ok
    out = split_boundary_hyperbolic(d, "h")
    assert validate_state(out).ok
    assert out.sing("h") == Singularity("h", sign, Kind.ELLIPTIC)
    assert out.boundary == d.boundary
    assert not any(sp.sing == "h" for sp in out.separatrices)


def test_split_rejects_wrong_orientation():
    # in the normal form the boundary leaves of positive points are incoming
    with pytest.raises(FoliationError):
        split_boundary_hyperbolic(normal_form_disc(2), "h+0")
    with pytest.raises(FoliationError):
        split_boundary_hyperbolic(normal_form_disc(2), "h-1")
    with pytest.raises(FoliationError):
        split_boundary_hyperbolic(normal_form_disc(2), "e+0")
    with pytest.raises(FoliationError):
        split_boundary_hyperbolic(figures.minimal_nonloose_sphere(), "h+")


def _bad(seps, sings=None, surface=Surface.SPHERE):
    sings = sings or [Singularity("e+", 1, Kind.ELLIPTIC), Singularity("e-", -1, Kind.ELLIPTIC)]
    return validate_state(FoliationState(surface, tuple(sings), tuple(seps)))


def test_validation_messages():
    ok = _bad([])
    assert ok.ok
    h = Singularity("h", 1, Kind.HYPERBOLIC)
    r = _bad([Separatrix("h", "stable1", "e+")], [Singularity("e+", 1, Kind.ELLIPTIC), h])
    assert any("1 of 4 separatrix slots" in v for v in r.violations)
    three = [Singularity(f"e{i}", 1, Kind.ELLIPTIC) for i in range(3)]
    assert any("Euler count" in v for v in _bad([], three).violations)
    r = _bad([Separatrix("e+", "stable1", "e-")])
    assert any("carry no separatrix slots" in v for v in r.violations)
    r = _bad([Separatrix("h", "stable1", ON_BOUNDARY)], [Singularity("e+", 1, Kind.ELLIPTIC), h])
    assert not r.ok


def test_graphs_on_minimal_sphere():
    s = figures.minimal_nonloose_sphere()
    assert set(graph_plus(s).nodes) == {"e+1", "e+2", "h+"}
    assert len(components(graph_minus(s))) == 3
