from fractions import Fraction as F

import pytest

from schubmc.polyring import (
    GradedSeries,
    Poly,
    YFrac,
    exp_linear,
    normalized_hirzebruch_coefficients,
    series_of_linear,
    todd_coefficients,
    unnormalized_hirzebruch_coefficients,
)


def test_yfrac_normalization_and_ops():
    a = YFrac([1, 2, 1], 1)  # (1+y)^2/(1+y)
    assert a == YFrac([1, 1])
    b = YFrac([0, 1])  # y
    assert (a * b).num == (0, 1, 1)
    assert a + b == YFrac([1, 2])
    assert (a - a) == YFrac([])
    assert a / YFrac([1, 1]) == YFrac([1])
    assert (YFrac([1]) / YFrac([1, 1])).k == 1
    assert YFrac([3, 3], 1) == YFrac([3])


def test_yfrac_inverse_limits():
    assert YFrac([2]).inverse() == YFrac([F(1, 2)])
    assert YFrac([1, 1]).inverse().k == 1
    with pytest.raises(ArithmeticError):
        YFrac([1, 2]).inverse()


def test_yfrac_evaluate():
    a = YFrac([1, 2])  # 1 + 2y
    assert a.evaluate(-1) == -1
    b = YFrac([1], 1)
    with pytest.raises(ZeroDivisionError):
        b.evaluate(-1)
    assert b.evaluate(0) == 1


def test_poly_arithmetic_and_division():
    x = Poly.variable(0, 2)
    y = Poly.variable(1, 2)
    p = (x + y) * (x - y)
    assert p == x * x - y * y
    assert p.divide_exact(x + y) == x - y
    assert p.divide_exact(x + Poly.const(1, 2)) is None
    assert p.degree() == 2
    assert p.homogeneous_component(2) == p
    assert (x * y).evaluate([F(2), F(3)]) == 6


def test_poly_substitution():
    x = Poly.variable(0, 2)
    y = Poly.variable(1, 2)
    p = x * x + y
    q = p.substitute_linear([y, x])
    assert q == y * y + x
    assert p.set_variable(1, 5) == x * x + Poly.const(5, 2)
    lifted = (x + Poly.const(1, 2)).set_variable(1, 0)
    assert lifted.drop_last_variable() == Poly.variable(0, 1) + Poly.const(1, 1)


def test_graded_series_matches_polynomials_below_cap():
    x = Poly.variable(0, 2)
    y = Poly.variable(1, 2)
    p = (x + y) ** 2 + x
    q = x * y + Poly.const(3, 2)
    cap = 6
    sp, sq = GradedSeries.from_poly(p, cap), GradedSeries.from_poly(q, cap)
    assert sp * sq == GradedSeries.from_poly(p * q, cap)
    assert sp + sq == GradedSeries.from_poly(p + q, cap)
    # truncation discards degrees above the cap
    tight = GradedSeries.from_poly(p, 1)
    assert 2 not in tight.comps


def test_graded_series_inverse_and_division():
    x = Poly.variable(0, 1)
    e = exp_linear(x, 7)
    em = exp_linear(-x, 7)
    assert e * em == GradedSeries.const(F(1), 7, 1)
    assert e * e.inverse() == GradedSeries.const(F(1), 7, 1)
    num = GradedSeries.from_poly(x * x * x + x * x, 5)
    q = num.divide_by_poly(x)
    assert q == GradedSeries.from_poly(x * x + x, 4)
    assert GradedSeries.from_poly(x + Poly.const(1, 1), 5).divide_by_poly(x) is None


@pytest.mark.parametrize("cap", [6, 8])
def test_todd_series_values(cap):
    td = todd_coefficients(cap)
    assert [c.evaluate(0) for c in td[:5]] == [1, F(1, 2), F(1, 12), 0, F(-1, 720)]
    un = unnormalized_hirzebruch_coefficients(cap)
    assert un[0] == YFrac([1, 1])
    assert [c.evaluate(-1) for c in un[:4]] == [0, 1, 0, 0]
    assert [c.evaluate(0) for c in un[:3]] == [1, F(1, 2), F(1, 12)]
    nm = normalized_hirzebruch_coefficients(cap)
    assert all(c.cleared() for c in nm)
    assert [c.evaluate(-1) for c in nm[:4]] == [1, 1, 0, 0]
    assert [c.evaluate(0) for c in nm[:3]] == [1, F(1, 2), F(1, 12)]


def test_series_of_linear_is_homogeneous():
    x = Poly.variable(0, 2)
    y = Poly.variable(1, 2)
    s = series_of_linear([YFrac([1]), YFrac([0, 1]), YFrac([2])], x + y, 4)
    assert s.component(1) == (x + y) * YFrac([0, 1])
    assert s.component(2) == (x + y) * (x + y) * YFrac([2])
    for d, comp in s.comps.items():
        assert comp.is_homogeneous(d)
