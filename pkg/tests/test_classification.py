import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from legunknot.classification import (
    TIGHT,
    XI_MINUS_ONE,
    ContactStructureId,
    InadmissiblePair,
    StructureKind,
    action_kernel,
    admissible_pair,
    bennequin_check,
    classify_unknots,
    compose,
    contactomorphism_action,
    group_elements,
    lookup_label,
    mapping_class_group,
    swiatkowski_check,
    transverse_unknot_classes,
)


def ot(h):
    return ContactStructureId(StructureKind.OVERTWISTED, h)


def _expected_counts(tb, rot):
    """Geography of unknots in the structure with Hopf invariant -1."""
    loose = 1 if tb < 0 else 2
    nonloose = 2 if tb > 0 and abs(rot) == tb - 1 else 0
    return nonloose, loose


def _cells(lo=-6, hi=6):
    for tb in range(lo, hi + 1):
        for rot in range(-abs(tb) - 8, abs(tb) + 9):
            if admissible_pair(tb, rot):
                yield tb, rot


@pytest.mark.parametrize("tb,rot", list(_cells()))
def test_geography(tb, rot):
    res = classify_unknots(XI_MINUS_ONE, tb, rot)
    assert (len(res.nonloose), len(res.loose)) == _expected_counts(tb, rot)
    assert res.total == sum(_expected_counts(tb, rot))


@pytest.mark.parametrize("h", [-3, -2, 0, 1, 2, 5])
@pytest.mark.parametrize("tb,rot", [(-3, 0), (0, 1), (2, 1), (5, -4)])
def test_other_overtwisted_structures_only_loose(h, tb, rot):
    res = classify_unknots(ot(h), tb, rot)
    assert res.nonloose == () and len(res.loose) == 1


def test_inadmissible():
    with pytest.raises(InadmissiblePair):
        classify_unknots(XI_MINUS_ONE, 1, 1)


def test_tight_table():
    assert classify_unknots(TIGHT, -1, 0).total == 1
    assert classify_unknots(TIGHT, -4, 3).total == 1
    assert classify_unknots(TIGHT, -2, 3).total == 0
    assert classify_unknots(TIGHT, 1, 0).total == 0


def test_k11_pair_labels():
    res = classify_unknots(XI_MINUS_ONE, 1, 0)
    assert [c.name for c in res.nonloose] == ["K(1,1)", "K(-1,-1)"]
    assert all(not c.loose for c in res.nonloose)


def test_negative_rotation_labels():
    names = [c.name for c in classify_unknots(XI_MINUS_ONE, 3, -2).nonloose]
    assert names == ["K(1,3)", "K(-3,-1)"]


@pytest.mark.parametrize("tb,rot", list(_cells(-10, 10)))
def test_nonloose_cells_satisfy_bounds(tb, rot):
    if classify_unknots(XI_MINUS_ONE, tb, rot).nonloose:
        assert swiatkowski_check(tb, rot, 1)
        assert not bennequin_check(tb, rot, 1)


def test_structure_parse():
    assert ContactStructureId.parse("tight") == TIGHT
    assert ContactStructureId.parse("ot:-1") == XI_MINUS_ONE
    assert ot(4).label() == "ot:4"
    for bad in ("ot:", "ot:x", "loose", ""):
        with pytest.raises(ValueError):
            ContactStructureId.parse(bad)


def test_transverse_counts():
    assert transverse_unknot_classes(TIGHT, -1) == 1
    assert transverse_unknot_classes(TIGHT, 1) == 0
    assert transverse_unknot_classes(XI_MINUS_ONE, 3) == 1
    assert transverse_unknot_classes(XI_MINUS_ONE, 2) == 0


def test_mapping_class_groups():
    assert mapping_class_group(XI_MINUS_ONE).order == 4
    assert mapping_class_group(ot(3)).order == 2
    assert mapping_class_group(TIGHT).order == 1


def _all_classes(tb_max=4):
    for tb, rot in _cells(-tb_max, tb_max):
        for c in classify_unknots(XI_MINUS_ONE, tb, rot).all_classes():
            yield c, (XI_MINUS_ONE, tb, rot)


def test_identity_acts_trivially():
    for c, ctx in _all_classes():
        assert contactomorphism_action((0, 0), c, ctx) == c


def test_action_respects_composition():
    for (c, ctx), g, h in itertools.product(list(_all_classes()), group_elements(), group_elements()):
        lhs = contactomorphism_action(compose(g, h), c, ctx)
        rhs = contactomorphism_action(g, contactomorphism_action(h, c, ctx), ctx)
        assert lhs == rhs


def test_kappa_swaps_pairs():
    ctx = (XI_MINUS_ONE, 2, 1)
    k21 = lookup_label(XI_MINUS_ONE, 2, 1, "K(2,1)")
    assert contactomorphism_action((0, 1), k21, ctx).name == "K(-1,-2)"
    loose_a = lookup_label(XI_MINUS_ONE, 2, 1, "loose-A")
    assert contactomorphism_action((0, 1), loose_a, ctx).name == "loose-B"
    assert lookup_label(XI_MINUS_ONE, 2, 1, "nothing") is None


def test_action_kernel_is_d_direction():
    assert action_kernel() == ((0, 0), (1, 0))


def test_action_rejects_bad_input():
    c = lookup_label(XI_MINUS_ONE, 1, 0, "K(1,1)")
    with pytest.raises(ValueError):
        contactomorphism_action((2, 0), c, (XI_MINUS_ONE, 1, 0))
    with pytest.raises(ValueError):
        contactomorphism_action((0, 1), c, (ot(2), 1, 0))
    with pytest.raises(KeyError):
        contactomorphism_action((0, 1), c, (XI_MINUS_ONE, 3, 2))


@given(st.integers(-40, 40), st.integers(-40, 40))
def test_class_counts_never_exceed_four(tb, rot):
    if admissible_pair(tb, rot):
        assert classify_unknots(XI_MINUS_ONE, tb, rot).total in (1, 2, 4)
