import math
from fractions import Fraction

import pytest

from permsimple.enumeration import (
    CLASSES, census, census_cycle_types, count_b, count_c, count_equal_cycle_products,
    count_formula, count_g, count_t, fibonacci, intersection_census, s_asymptotic_check,
    sigma_by_census, sigma_triangle,
)
from permsimple.errors import BoundExceeded, DomainError

# exhaustive census rows (s, c, g, b, t, total), frozen after cross-checking formulas
CENSUS = {
    1: (1, 1, 1, 1, 1, 1),
    2: (2, 2, 2, 2, 2, 2),
    3: (0, 6, 6, 5, 6, 6),
    4: (2, 21, 18, 13, 20, 24),
    5: (6, 85, 70, 34, 72, 120),
    6: (46, 410, 300, 89, 272, 720),
    7: (338, 2366, 1806, 233, 1056, 5040),
    8: (2926, 16065, 9100, 610, 4160, 40320),
}


def test_triangle_rows():
    tri = sigma_triangle(5)
    assert [tri.row(n) for n in range(1, 6)] == [
        (1,), (1, 1), (1, 2, 2), (1, 3, 5, 4), (1, 4, 9, 12, 8)]
    assert tri(5, 7) == 0 and tri(0, 0) == 0


def test_triangle_sums_and_tails():
    tri = sigma_triangle(30)
    for n in range(1, 31):
        assert sum(tri.row(n)) == fibonacci(2 * n - 1)
        if n >= 2:
            assert tri.row(n)[-1] == 2 ** (n - 2)


@pytest.mark.parametrize("n", range(1, 8))
def test_triangle_by_length_census(n):
    assert sigma_by_census(n) == sigma_triangle(n).row(n)


@pytest.mark.parametrize("n", sorted(CENSUS))
def test_census_rows(n):
    rep = census(n)
    assert tuple(rep.as_row()) == CENSUS[n]
    assert rep.ratios["s"] == Fraction(rep.counts["s"], math.factorial(n))


def test_formulas_for_larger_n():
    assert [count_b(n) for n in (9, 10)] == [1597, 4181]
    assert count_t(9) == 16512 and count_c(9) == 125665 and count_g(9) == 37332
    assert count_formula("s", 5) is None


def test_formula_edge_cases():
    assert count_t(1) == 1
    assert count_equal_cycle_products(6, 2, 3) == 40
    with pytest.raises(DomainError):
        count_equal_cycle_products(5, 2, 3)
    with pytest.raises(DomainError):
        count_b(0)
    with pytest.raises(BoundExceeded):
        census(11, bound=10)


def test_cycle_type_census_matches_formulas():
    types = census_cycle_types(6)
    assert sum(types.values()) == 720
    c = sum(v for k, v in types.items() if len(k) <= 1)
    assert c == count_c(6)


def test_s_asymptotic_values():
    ratio, asym = s_asymptotic_check(6)
    assert ratio == Fraction(CENSUS[6][0], 720)
    assert asym == pytest.approx((1 - 4 / 6 + 2 / 30) / math.e ** 2)


def test_intersection_census_n6():
    assert intersection_census(6) == {"bc": 58, "bg": 41, "bs": 4, "bt": 47}


def test_classes_order():
    assert CLASSES == ("s", "c", "g", "b", "t")
