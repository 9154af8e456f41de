import random

import pytest

from galoispoints.fields import build_field
from galoispoints.poly import (BiPoly, PolyError, UniPoly, bi_exact_div,
                               bi_gcd_y, bi_squarefree_y, dehomogenize,
                               homogenize, resultant, resultant_uni,
                               resultant_x_biparam, resultant_y_param,
                               squarefree_part, uni_gcd, uni_pth_root)


def rand_bipoly(ctx, rng, max_deg=3):
    terms = {}
    for _ in range(rng.randrange(2, 7)):
        terms[(rng.randrange(max_deg + 1), rng.randrange(max_deg + 1))] = ctx.random(rng)
    bp = BiPoly(ctx, terms)
    return bp if not bp.is_zero() else BiPoly.const(ctx, ctx.one)


# ---------------------------------------------------------------------------
# resultants
# ---------------------------------------------------------------------------

def test_resultant_two_lines_is_proportional_to_x():
    F3 = build_field(3, 1)
    f = BiPoly.from_int_terms(F3, {(0, 1): 1, (1, 0): -1})     # y - x
    g = BiPoly.from_int_terms(F3, {(0, 1): 1, (1, 0): -2})     # y - 2x
    r = resultant(f, g, "y")
    assert r.degree() == 1 and r.coeffs[0] == F3.zero


def test_resultant_substitution_case():
    F3 = build_field(3, 1)
    f = BiPoly.from_int_terms(F3, {(0, 2): 1, (1, 0): -1})     # y^2 - x
    g = BiPoly.from_int_terms(F3, {(0, 1): 1, (0, 0): -1})     # y - 1
    r = resultant(f, g, "y")
    assert r.monic() == UniPoly.from_ints(F3, [-1, 1])          # x - 1


def test_resultant_degree_zero_in_eliminated_variable_rejected():
    F3 = build_field(3, 1)
    f = BiPoly.from_int_terms(F3, {(0, 2): 1, (1, 0): -1})
    g = BiPoly.from_int_terms(F3, {(1, 0): 1})
    with pytest.raises(PolyError):
        resultant(f, g, "y")


def test_family_eliminant_degree_and_evaluation_cross_check():
    # eliminating y from the (q, m) = (3, 2) model against y - t x^s gives a
    # degree-(q+1) eliminant; verified against univariate resultants at
    # 10 sample points
    F9 = build_field(3, 2)
    f = BiPoly.from_int_terms(F9, {(0, 2): 1, (3, 0): -1, (1, 0): -1})
    tval = F9.from_int(5)
    g = BiPoly(F9, {(0, 1): F9.one, (2, 0): F9.neg(tval)})      # y - t x^2
    r = resultant(f, g, "y")
    assert r.degree() == 4
    rng = random.Random(0)
    for _ in range(10):
        a = F9.random(rng)
        fu = UniPoly(F9, [u.eval(a) for u in f.coeffs_in_y()])
        gu = UniPoly(F9, [u.eval(a) for u in g.coeffs_in_y()])
        assert r.eval(a) == resultant_uni(fu, gu)


def test_parameterized_resultant_matches_specialization():
    F9 = build_field(3, 2)
    one = F9.one
    fterms = {(0, 2, 0): one, (3, 0, 0): F9.neg(one), (1, 0, 0): F9.neg(one)}
    gterms = {(0, 1, 0): one, (2, 0, 1): F9.neg(one)}           # y - T x^2
    R = resultant_y_param(fterms, gterms, F9)
    rng = random.Random(1)
    f = BiPoly.from_int_terms(F9, {(0, 2): 1, (3, 0): -1, (1, 0): -1})
    for _ in range(5):
        t0 = F9.random(rng)
        g = BiPoly(F9, {(0, 1): one, (2, 0): F9.neg(t0)})
        direct = resultant(f, g, "y")
        spec = UniPoly(F9, [
            _eval_param(R, i, t0, F9) for i in range(R.deg_x() + 1)])
        assert spec == direct


def _eval_param(R, i, t0, ctx):
    acc = ctx.zero
    for (ii, k), c in R.terms.items():
        if ii == i:
            acc = ctx.add(acc, ctx.mul(c, ctx.pow_(t0, k)))
    return acc


def test_biparam_resultant_matches_specialization():
    F25 = build_field(5, 2)
    one = F25.one
    # f(x, u) = x^2 - u, g(x, v) = x - v: Res_x = v^2 - u up to sign
    ft = {(2, 0): one, (0, 1): F25.neg(one)}
    gt = {(1, 0): one, (0, 1): F25.neg(one)}
    R = resultant_x_biparam(ft, gt, F25)
    rng = random.Random(2)
    for _ in range(10):
        u0, v0 = F25.random(rng), F25.random(rng)
        val = F25.zero
        for (i, k), c in R.terms.items():
            val = F25.add(val, F25.mul(c, F25.mul(F25.pow_(u0, i), F25.pow_(v0, k))))
        want = F25.sub(F25.mul(v0, v0), u0)
        assert (val == want) or (val == F25.neg(want))


# ---------------------------------------------------------------------------
# homogenization
# ---------------------------------------------------------------------------

def test_homogenize_cubic_example():
    F3 = build_field(3, 1)
    f = BiPoly.from_int_terms(F3, {(0, 2): 1, (3, 0): -1, (1, 0): -1})
    F = homogenize(f, 3)
    assert F.terms[(0, 2, 1)] == F3.one
    assert F.terms[(3, 0, 0)] == F3.neg(F3.one)
    assert F.terms[(1, 0, 2)] == F3.neg(F3.one)


def test_homogenize_rejects_too_small_degree():
    F3 = build_field(3, 1)
    f = BiPoly.from_int_terms(F3, {(0, 2): 1, (3, 0): -1})
    with pytest.raises(PolyError):
        homogenize(f, 2)


def test_homogenize_round_trip_on_20_random_polynomials():
    F25 = build_field(5, 2)
    rng = random.Random(3)
    for _ in range(20):
        f = rand_bipoly(F25, rng)
        F = homogenize(f, f.total_degree())
        assert dehomogenize(F, 2) == f


def test_higher_degree_homogenization_pads_z_powers():
    F9 = build_field(3, 2)
    f = BiPoly.from_int_terms(F9, {(0, 2): 1, (3, 0): -1, (1, 0): -1})
    F = homogenize(f, 4)
    assert (0, 2, 2) in F.terms and (3, 0, 1) in F.terms and (1, 0, 3) in F.terms


# ---------------------------------------------------------------------------
# squarefree parts
# ---------------------------------------------------------------------------

def test_squarefree_square_collapses():
    F3 = build_field(3, 1)
    f = UniPoly.from_ints(F3, [1, -2, 1])           # (x-1)^2
    assert squarefree_part(f) == UniPoly.from_ints(F3, [-1, 1])


def test_squarefree_pth_power_path():
    F3 = build_field(3, 1)
    f = UniPoly.from_ints(F3, [-1, 0, 0, 1])        # x^3 - 1 = (x-1)^3 over F_3
    assert squarefree_part(f) == UniPoly.from_ints(F3, [-1, 1])


def test_squarefree_keeps_irreducible():
    F3 = build_field(3, 1)
    f = UniPoly.from_ints(F3, [1, 0, 1])            # x^2 + 1, irreducible mod 3
    assert squarefree_part(f) == f.monic()


def test_squarefree_mixed_multiplicities():
    F5 = build_field(5, 1)
    a = UniPoly.from_ints(F5, [-1, 1])              # x - 1
    b = UniPoly.from_ints(F5, [2, 1])               # x + 2
    f = a * a * a * b * b
    sf = squarefree_part(f)
    assert sf == (a * b).monic()


def test_squarefree_output_has_constant_gcd_with_derivative():
    F5 = build_field(5, 1)
    rng = random.Random(4)
    for _ in range(10):
        coeffs = [F5.random(rng) for _ in range(5)] + [F5.one]
        f = UniPoly(F5, coeffs)
        sf = squarefree_part(f * f)
        if sf.degree() >= 1 and not sf.derivative().is_zero():
            assert uni_gcd(sf, sf.derivative()).degree() == 0


def test_uni_pth_root():
    F3 = build_field(3, 1)
    f = UniPoly.from_ints(F3, [1, 0, 0, 2, 0, 0, 1])   # g(x^3), g = x^2 + 2x + 1
    assert uni_pth_root(f) == UniPoly.from_ints(F3, [1, 2, 1])


# ---------------------------------------------------------------------------
# bivariate gcd and division
# ---------------------------------------------------------------------------

def test_bi_gcd_recovers_common_factor():
    F9 = build_field(3, 2)
    rng = random.Random(5)
    common = BiPoly.from_int_terms(F9, {(1, 1): 1, (0, 0): 1})
    a = common * rand_bipoly(F9, rng)
    b = common * rand_bipoly(F9, rng)
    g = bi_gcd_y(a, b)
    assert bi_exact_div(a, g) is not None
    # the common factor divides the gcd
    assert not bi_exact_div(g, common).is_zero() or g == common


def test_bi_squarefree_kills_squares():
    F9 = build_field(3, 2)
    f = BiPoly.from_int_terms(F9, {(1, 1): 1, (0, 0): 1})
    sq = f * f
    sf = bi_squarefree_y(sq)
    # squarefree part is f up to scalar
    q = bi_exact_div(sf, f)
    assert q.total_degree() == 0


def test_bi_exact_div_detects_non_divisor():
    F9 = build_field(3, 2)
    f = BiPoly.from_int_terms(F9, {(0, 2): 1, (1, 0): 1})
    g = BiPoly.from_int_terms(F9, {(0, 1): 1, (0, 0): 1})
    with pytest.raises(PolyError):
        bi_exact_div(f, g)
