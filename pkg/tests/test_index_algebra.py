import pytest

from wthpdk.index_algebra import (
    CANONICAL_INDICES,
    biv,
    canonical_position,
    epsilon_basis,
    epsilon_term,
    index_label,
    pair_sign,
    vec,
)


def test_canonical_order():
    labels = [index_label(x) for x in CANONICAL_INDICES]
    assert labels == ["v1", "v2", "v3", "v4", "[12]", "[13]", "[14]", "[23]", "[24]", "[34]"]


@pytest.mark.parametrize("idx, slot", [(vec(3), (3, 1)), (biv(1, 2), (5, 1)), (biv(2, 1), (5, -1)),
                                       (biv(4, 3), (10, -1)), (biv(2, 4), (9, 1))])
def test_positions_and_signs(idx, slot):
    assert canonical_position(idx) == slot


def test_pair_sign_zero_flag():
    assert [pair_sign(1, 2), pair_sign(2, 1), pair_sign(3, 3)] == [1, -1, 0]


def test_degenerate_bivector():
    with pytest.raises(ValueError):
        canonical_position(biv(2, 2))
    with pytest.raises(ValueError):
        epsilon_basis(vec(1), biv(2, 2))
    assert epsilon_term(vec(1), biv(2, 2)).is_zero()


def test_out_of_range_index():
    with pytest.raises(ValueError):
        vec(5)
    with pytest.raises(ValueError):
        biv(0, 1)


def test_reversed_bivector_flips_sign():
    assert epsilon_basis(vec(1), biv(2, 1)).nonzero_entries() == {(1, 5): -1}
    assert epsilon_basis(biv(3, 1), biv(4, 2)).nonzero_entries() == {(6, 9): 1}


def test_product_rule():
    A, B, D = vec(2), biv(1, 3), biv(3, 4)
    assert epsilon_basis(A, B) @ epsilon_basis(B, D) == epsilon_basis(A, D)
    assert (epsilon_basis(A, B) @ epsilon_basis(D, A)).is_zero()
