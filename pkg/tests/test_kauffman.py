import pytest

from colink.errors import DomainError
from colink.kauffman import PDCode, kauffman_unreduced_jones
from colink.laurent import LaurentPoly

# standard table codes, edges numbered along each oriented component
LEFT_TREFOIL = [(1, 4, 2, 5), (3, 6, 4, 1), (5, 2, 6, 3)]
FIGURE_EIGHT = [(4, 2, 5, 1), (8, 6, 1, 5), (6, 3, 7, 4), (2, 7, 3, 8)]
HOPF = [(4, 1, 3, 2), (2, 3, 1, 4)]


def test_components_and_signs():
    pd = PDCode(HOPF)
    assert pd.n_components() == 2
    assert pd.writhe() in (2, -2)
    assert len(PDCode(LEFT_TREFOIL).component_partition()) == 6


def test_bad_pd_rejected():
    with pytest.raises(DomainError):
        PDCode([(1, 2, 3)])
    with pytest.raises(DomainError):
        PDCode([(1, 2, 3, 3)])  # edge counts off


def test_left_trefoil_value():
    # unreduced Jones of the left-handed trefoil, classical value
    expected = LaurentPoly({-1: 1, -3: 1, -5: 1, -9: -1})
    assert kauffman_unreduced_jones(LEFT_TREFOIL) == expected


def test_figure_eight_value_and_symmetry():
    value = kauffman_unreduced_jones(FIGURE_EIGHT)
    assert value == value.bar()
    assert value == LaurentPoly({5: 1, -5: 1})


def test_kinked_unknot_normalizes():
    value = kauffman_unreduced_jones([(1, 1, 2, 2)])
    assert value == LaurentPoly({1: 1, -1: 1})
    value2 = kauffman_unreduced_jones([(1, 2, 2, 1)])
    assert value2 == LaurentPoly({1: 1, -1: 1})


def test_independent_of_crossing_order():
    import itertools

    base = kauffman_unreduced_jones(LEFT_TREFOIL)
    for perm in itertools.permutations(LEFT_TREFOIL):
        assert kauffman_unreduced_jones(list(perm)) == base
