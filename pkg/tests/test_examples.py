"""Worked examples for each module, checked against hand computation."""

import itertools

from legunknot import figures
from legunknot.classification import (
    TIGHT,
    XI_MINUS_ONE,
    ContactStructureId,
    StructureKind,
    admissible_pair,
    bennequin_check,
    classify_unknots,
    contactomorphism_action,
    lookup_label,
    swiatkowski_check,
    transverse_unknot_classes,
)
from legunknot.foliation import (
    FoliationState,
    Kind,
    Side,
    Singularity,
    Surface,
    component_defect,
    components,
    detect_nonloose_unknot,
    dividing_components,
    graph_minus,
    has_tight_neighborhood,
    resolve,
    retrogradient_connections,
    validate_state,
)
from legunknot.front import classical_invariants, linear_unknot, reverse_orientation, self_linking_pushoff
from legunknot.homotopy import QuadraticFormZ2, arf_brute_force, arf_invariant, evaluate_form, hopf_fibers
from legunknot.moves import hopf_pass, stabilize
from legunknot.movie import detect_nonloose_states


def test_self_linking_examples():
    assert self_linking_pushoff(linear_unknot(1, 1)) == 1
    assert self_linking_pushoff(linear_unknot(1, 0)) == -1
    assert self_linking_pushoff(figures.contractible_front()) == -1


def test_homology_swap_identity():
    for m, n in itertools.product(range(-5, 6), repeat=2):
        assert (-n) * (-m) == m * n and (-n) - (-m) == m - n


def test_reverse_k12():
    r = reverse_orientation(linear_unknot(1, 2))
    assert classical_invariants(r) == (2, 1)


def test_stabilization_examples():
    assert classical_invariants(stabilize(linear_unknot(1, 2), 1)) == classical_invariants(linear_unknot(1, 1))
    assert classical_invariants(stabilize(linear_unknot(1, 1), -1)) == (0, -1)


def test_hopf_pass_example():
    out = hopf_pass(linear_unknot(1, 1), "z1", -1)
    assert out.homology == (1, 0)
    assert classical_invariants(out) == (1, 0)


def test_admissibility_examples():
    assert admissible_pair(1, 0) and admissible_pair(-1, 0)
    assert not admissible_pair(0, 0)


def test_classification_examples():
    r = classify_unknots(XI_MINUS_ONE, -2, 1)
    assert (len(r.nonloose), len(r.loose)) == (0, 1)
    ot0 = ContactStructureId(StructureKind.OVERTWISTED, 0)
    r = classify_unknots(ot0, 2, 1)
    assert (len(r.nonloose), len(r.loose)) == (0, 1)


def test_inequality_examples():
    assert not bennequin_check(1, 0, 1)
    assert not bennequin_check(0, 1, 1)
    assert swiatkowski_check(5, 4, 1)
    assert bennequin_check(-1, 0, 1)


def test_action_examples():
    for n in range(1, 6):
        ctx = (XI_MINUS_ONE, n, n - 1)
        k = lookup_label(XI_MINUS_ONE, n, n - 1, f"K({n},1)")
        assert contactomorphism_action((0, 1), k, ctx).name == f"K(-1,-{n})"
        assert contactomorphism_action((1, 0), k, ctx) == k


def test_euler_count_example():
    s = FoliationState(
        Surface.SPHERE,
        (
            Singularity("a", 1, Kind.ELLIPTIC),
            Singularity("b", 1, Kind.ELLIPTIC),
            Singularity("c", -1, Kind.ELLIPTIC),
        ),
        (),
    )
    assert "Euler count 3 ≠ 2" in validate_state(s).violations


def test_connection_counts():
    assert len(retrogradient_connections(figures.minimal_nonloose_sphere())) == 2
    assert len(retrogradient_connections(figures.single_retro_sphere())) == 1


def test_cycle_state():
    s = figures.minimal_nonloose_sphere()
    a, b = retrogradient_connections(s)
    mixed = resolve(s, {a: Side.AFTER, b: Side.BEFORE})
    g = graph_minus(mixed)
    cyclic = [c for c in components(g) if g.subgraph(c).number_of_edges() >= len(c)]
    assert len(cyclic) == 1
    # the annulus around the cycle gives two curves, the isolated elliptic point one more
    assert dividing_components(mixed) == 3
    assert not has_tight_neighborhood(mixed)
    assert detect_nonloose_unknot(mixed) is None


def test_tree_state():
    s = figures.two_elliptic_sphere()
    assert dividing_components(s) == 1 and has_tight_neighborhood(s)


def test_component_defects():
    s = figures.minimal_nonloose_sphere()
    defects = sorted(component_defect(s, c) for c in components(graph_minus(s)))
    assert defects == [-1, 1, 1]
    w = detect_nonloose_unknot(s)
    assert component_defect(s, w.spine_component) == -1


def test_nonloose_states_in_movies():
    assert detect_nonloose_states(figures.simultaneous_double_movie()) == [1]
    for m in figures.double_resolution_movies():
        assert detect_nonloose_states(m) == []


def test_arf_examples():
    q0 = QuadraticFormZ2(1, (0, 0))
    assert evaluate_form(q0, (1, 1)) == 1
    q1 = QuadraticFormZ2(1, (1, 1))
    assert sum(evaluate_form(q1, v) for v in itertools.product((0, 1), repeat=2)) == 3
    assert arf_brute_force(q1) == 1
    assert arf_invariant(q0.direct_sum(q1)) == 1


def test_hopf_examples():
    assert hopf_fibers(1) == -1
    assert hopf_fibers(3) == 3


def test_transverse_in_tight():
    assert transverse_unknot_classes(TIGHT, -1) == 1
