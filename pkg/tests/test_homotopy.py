import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from legunknot.classification import StructureKind
from legunknot.homotopy import (
    QuadraticFormZ2,
    arf_brute_force,
    arf_formula,
    arf_invariant,
    evaluate_form,
    hopf_after_pi_lutz,
    hopf_fibers,
    intersection,
    structure_from_hopf,
)


def _vectors(g):
    return list(itertools.product((0, 1), repeat=2 * g))


def _oracle_value(values, v):
    linear = sum(x * q for x, q in zip(v, values))
    cross = sum(v[2 * i] * v[2 * i + 1] for i in range(len(v) // 2))
    return (linear + cross) % 2


def _oracle_pairing(x, y):
    return sum(x[2 * i] * y[2 * i + 1] + x[2 * i + 1] * y[2 * i] for i in range(len(x) // 2)) % 2


def _pack(v):
    return sum(b << i for i, b in enumerate(v))


@pytest.mark.parametrize("g", [1, 2, 3])
def test_arf_definitions_agree_exhaustively(g):
    for values in _vectors(g):
        q = QuadraticFormZ2(g, values)
        ones = sum(_oracle_value(values, v) for v in _vectors(g))
        majority = int(2 * ones > 2 ** (2 * g))
        assert arf_brute_force(q) == majority == arf_formula(q) == arf_invariant(q)


@pytest.mark.parametrize("g", [1, 2])
def test_quadratic_refinement(g):
    for values in _vectors(g):
        q = QuadraticFormZ2(g, values)
        for x, y in itertools.product(_vectors(g), repeat=2):
            s = tuple((a + b) % 2 for a, b in zip(x, y))
            lhs = (evaluate_form(q, s) + evaluate_form(q, x) + evaluate_form(q, y)) % 2
            assert lhs == _oracle_pairing(x, y) == intersection(_pack(x), _pack(y))


@given(st.integers(1, 6).flatmap(lambda g: st.tuples(st.just(g), st.lists(st.integers(0, 1), min_size=2 * g, max_size=2 * g))))
def test_evaluate_matches_oracle(case):
    g, values = case
    q = QuadraticFormZ2(g, values)
    for v in _vectors(min(g, 2)):
        v = tuple(v) + (0,) * (2 * g - len(v))
        assert evaluate_form(q, v) == _oracle_value(values, v) == evaluate_form(q, _pack(v))


@given(st.lists(st.integers(0, 1), min_size=2, max_size=8), st.lists(st.integers(0, 1), min_size=2, max_size=8))
def test_arf_additive_under_direct_sum(x, y):
    x, y = x[: len(x) // 2 * 2], y[: len(y) // 2 * 2]
    p, q = QuadraticFormZ2(len(x) // 2, x), QuadraticFormZ2(len(y) // 2, y)
    assert arf_invariant(p.direct_sum(q)) == (arf_invariant(p) + arf_invariant(q)) % 2


def test_formula_path_beyond_brute_force():
    q = QuadraticFormZ2(16, [1] * 32)
    assert arf_invariant(q) == 0
    with pytest.raises(ValueError):
        arf_brute_force(QuadraticFormZ2(9, [0] * 18))
    with pytest.raises(ValueError):
        arf_formula(QuadraticFormZ2(17, [0] * 34))


def test_form_validation():
    with pytest.raises(ValueError):
        QuadraticFormZ2(1, [1])
    with pytest.raises(ValueError):
        QuadraticFormZ2(1, [1, 2])
    with pytest.raises(ValueError):
        evaluate_form(QuadraticFormZ2(1, [0, 0]), [1, 0, 1])


@pytest.mark.parametrize("k", range(0, 11))
def test_hopf_fibers(k):
    assert hopf_fibers(k) == (k - 2) * k


def test_single_fiber_matches_lutz_twist():
    assert hopf_fibers(1) == hopf_after_pi_lutz(0, -1) == -1


def test_lutz_rejects_even_self_linking():
    with pytest.raises(ValueError):
        hopf_after_pi_lutz(0, 2)
    with pytest.raises(ValueError):
        hopf_fibers(-1)


def test_structure_from_hopf():
    assert structure_from_hopf(-1, True).admits_nonloose_unknots
    assert structure_from_hopf(0, False).kind is StructureKind.TIGHT
    with pytest.raises(ValueError):
        structure_from_hopf(3, False)
