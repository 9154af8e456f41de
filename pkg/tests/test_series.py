import pytest

from galoispoints.fields import build_field
from galoispoints.series import LaurentSeries, SeriesError


@pytest.fixture()
def F9():
    return build_field(3, 2)


def series(ctx, offset, ints, prec):
    return LaurentSeries(ctx, offset, [ctx.from_base(c) for c in ints], prec)


def test_normalization_strips_leading_zeros(F9):
    s = series(F9, 0, [0, 0, 1, 2], 10)
    assert s.offset == 2
    assert s.valuation() == 2


def test_zero_series_has_no_valuation(F9):
    s = LaurentSeries.zero(F9, 8)
    assert s.valuation() is None
    assert s.is_zero_to_prec()


def test_add_and_mul_precision_rules(F9):
    a = series(F9, -2, [1, 1], 5)       # t^-2 + t^-1 + O(t^5)
    b = series(F9, 1, [2], 4)           # 2t + O(t^4)
    prod = a * b
    assert prod.offset == -1
    # prec = min(5 + 1, 4 + (-2)) = 2
    assert prod.prec == 2
    tot = a + b
    assert tot.prec == 4
    assert tot.coeff(-2) == F9.from_base(1)


def test_inverse_of_unit_series(F9):
    a = series(F9, 0, [1, 1], 6)        # 1 + t
    inv = a.inverse()
    one = a * inv
    assert one.valuation() == 0
    assert one.leading() == F9.one
    # 1/(1+t) = 1 - t + t^2 - ... mod 3
    assert inv.coeff(1) == F9.from_base(-1)
    assert inv.coeff(2) == F9.from_base(1)


def test_inverse_with_pole_offset(F9):
    a = series(F9, 2, [1], 9)           # t^2
    inv = a.inverse()
    assert inv.valuation() == -2


def test_pow_negative_exponent(F9):
    a = series(F9, 1, [1, 1], 7)        # t(1 + t)
    b = a.pow(-2)
    assert b.valuation() == -2
    check = b * a * a
    assert check.leading() == F9.one and check.valuation() == 0


def test_nth_root_square(F9):
    a = series(F9, 2, [1, 0, 1], 12)    # t^2 (1 + t^2)
    r = a.nth_root(2)
    assert r.valuation() == 1
    sq = r * r
    for n in range(2, min(sq.prec, a.prec)):
        assert sq.coeff(n) == a.coeff(n)


def test_nth_root_requires_valuation_divisibility(F9):
    a = series(F9, 1, [1], 9)
    with pytest.raises(SeriesError):
        a.nth_root(2)


def test_nth_root_rejects_p_divisible_order(F9):
    a = series(F9, 0, [1], 9)
    with pytest.raises(SeriesError):
        a.nth_root(3)


def test_coeff_beyond_precision_raises(F9):
    a = series(F9, 0, [1], 3)
    with pytest.raises(SeriesError):
        a.coeff(5)
