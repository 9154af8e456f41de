import random

import pytest

from galoispoints.constants import ConstantError, make_family_constants
from galoispoints.curves import ProjPoint, infinity_point, make_curve
from galoispoints.fields import build_field
from galoispoints.ratmaps import (GroupError, RatMap, beta_numerator_identity,
                                  check_gb_properties, conjugate,
                                  gamma_selfmap_identity, group_intersection,
                                  lemma1_chain, make_G1, make_alpha, make_beta,
                                  make_gamma, make_gb, orbit_multiset)


@pytest.fixture(scope="module")
def fm_setup():
    cst = make_family_constants(3, 1, 2, "Fm")
    curve = make_curve("Fm", 3, 2, cst.ctx)
    return cst, curve


@pytest.fixture(scope="module")
def gr_setup():
    cst = make_family_constants(2, 1, 2, "Gr")
    curve = make_curve("Gr", 2, 2, cst.ctx)
    return cst, curve


# ---------------------------------------------------------------------------
# constants
# ---------------------------------------------------------------------------

def test_constants_translation_family_sizes(fm_setup):
    cst, _ = fm_setup
    assert len(cst.lambda_set) == 3
    assert len(cst.zeta_set) == 4
    ctx = cst.ctx
    assert ctx.add(ctx.pow_(cst.a_root, 3), cst.a_root) == ctx.one
    assert all(ctx.pow_(w, 2) == ctx.neg(ctx.one) for w in cst.omega_set)


def test_constants_reject_bad_divisor():
    with pytest.raises(ConstantError):
        make_family_constants(3, 1, 3, "Fm")       # 3 does not divide q+1 = 4


def test_constants_tower_family(gr_setup):
    cst, _ = gr_setup
    ctx = cst.ctx
    b, c = cst.b_root, cst.c_root
    assert b != ctx.zero
    assert ctx.pow_(b, 15) == ctx.one              # b = b^16 in F_16
    assert ctx.add(ctx.mul(c, c), c) == ctx.pow_(b, 5)
    assert len(cst.zeta_set) == 5


def test_constants_tower_family_odd_characteristic():
    cst = make_family_constants(3, 1, 2, "Gr")
    ctx = cst.ctx
    assert ctx.k == 8                              # working field F_3^8
    b = cst.b_root
    assert ctx.pow_(b, 80) == ctx.neg(ctx.one)     # b = -b^81
    assert ctx.add(ctx.pow_(cst.c_root, 3), cst.c_root) == ctx.pow_(b, 10)


# ---------------------------------------------------------------------------
# groups
# ---------------------------------------------------------------------------

def test_translation_group(fm_setup):
    cst, curve = fm_setup
    G1 = make_G1("thm1a", cst, curve)
    assert G1.order() == 3
    assert G1.is_latin_square()
    assert G1.has_inverses()
    assert G1.elements[0].is_identity()


def test_conjugate_group_same_order_and_latin(fm_setup):
    cst, curve = fm_setup
    G1 = make_G1("thm1a", cst, curve)
    alpha = make_alpha(curve)
    G2 = conjugate(G1, alpha, "h_inv_g_h")
    assert G2.order() == 3
    assert G2.is_latin_square()
    inter = group_intersection(G1, G2)
    assert len(inter) == 1 and inter[0].is_identity()
    assert len(group_intersection(G1, G1)) == G1.order()


def test_conjugation_by_identity_returns_same_elements(fm_setup):
    cst, curve = fm_setup
    G1 = make_G1("thm1a", cst, curve)
    ident = RatMap.identity(curve)
    G = conjugate(G1, ident, "h_inv_g_h")
    assert {g.signature() for g in G.elements} == {g.signature() for g in G1.elements}


def test_alpha_involution_and_interchange(fm_setup):
    cst, curve = fm_setup
    ctx = cst.ctx
    alpha = make_alpha(curve)
    assert alpha.compose(alpha).is_identity()
    P0 = ProjPoint.affine(ctx, ctx.zero, ctx.zero)
    Pinf = infinity_point(curve)
    assert alpha.evaluate(P0) == Pinf
    assert alpha.evaluate(Pinf) == P0
    # nonzero translation points go to their reciprocals
    lam = next(v for v in cst.lambda_set if v != ctx.zero)
    img = alpha.evaluate(ProjPoint.affine(ctx, lam, ctx.zero))
    assert img == ProjPoint.affine(ctx, ctx.inv(lam), ctx.zero)


def test_orbit_equality_for_W(fm_setup):
    cst, curve = fm_setup
    ctx = cst.ctx
    G1 = make_G1("thm1a", cst, curve)
    alpha = make_alpha(curve)
    G2 = conjugate(G1, alpha, "h_inv_g_h")
    P0 = ProjPoint.affine(ctx, ctx.zero, ctx.zero)
    Pinf = infinity_point(curve)
    W = sorted(set([Pinf.key()] + [ProjPoint.affine(ctx, lam, ctx.zero).key()
                                   for lam in cst.lambda_set]))
    assert sorted(set(orbit_multiset(G1, P0) + [Pinf.key()])) == W
    assert sorted(set(orbit_multiset(G2, Pinf) + [P0.key()])) == W


def test_group_rejects_missing_identity(fm_setup):
    cst, curve = fm_setup
    G1 = make_G1("thm1a", cst, curve)
    from galoispoints.ratmaps import AutGroup
    with pytest.raises(GroupError):
        AutGroup(curve, [g for g in G1.elements if not g.is_identity()])


# ---------------------------------------------------------------------------
# beta and the norm-form model
# ---------------------------------------------------------------------------

def test_beta_numerator_identity_all_legal_lambdas():
    cst = make_family_constants(5, 1, 2, "Fm")
    ctx = cst.ctx
    for lam in cst.lambda_set:
        if lam in (ctx.zero, ctx.one):
            continue
        assert beta_numerator_identity(5, lam, ctx)


def test_beta_on_norm_form(fm_setup):
    cst, _ = fm_setup
    em = make_curve("Em", 3, 2, cst.ctx)
    beta = make_beta(em, cst.beta_lambda)
    assert beta.maps_into(em)
    assert beta.verify_inverse()
    # beta fixes (1:0:1)
    ctx = cst.ctx
    P = ProjPoint.from_ints(ctx, 1, 0, 1)
    assert beta.evaluate(P) == P


def test_beta_rejects_bad_parameter(fm_setup):
    cst, _ = fm_setup
    em = make_curve("Em", 3, 2, cst.ctx)
    from galoispoints.ratmaps import MapError
    with pytest.raises(MapError):
        make_beta(em, cst.ctx.one)


# ---------------------------------------------------------------------------
# g_b and gamma
# ---------------------------------------------------------------------------

def test_gb_explicit_small_case(gr_setup):
    cst, _ = gr_setup
    ctx = cst.ctx
    b = cst.b_root
    g = make_gb(2, 2, b, ctx)
    # g_b(y) = b^4 y + b^8 y^2 in characteristic 2 with q = r = 2
    want = [ctx.zero, ctx.pow_(b, 4), ctx.pow_(b, 8)]
    assert g.coeffs == want


def test_gb_property4_fails_for_wrong_b(gr_setup):
    cst, _ = gr_setup
    ctx = cst.ctx
    # an element with b^15 != 1 in a larger field breaks the image identity
    big = build_field(2, 8)
    bad = next(v for v in big.elements()
               if v != big.zero and big.pow_(v, 15) != big.one)
    props = check_gb_properties(2, 2, bad, big, random.Random(0))
    assert not props["artin_schreier_image"]


def test_gb_properties_odd_characteristic():
    cst = make_family_constants(3, 1, 2, "Gr")
    props = check_gb_properties(3, 2, cst.b_root, cst.ctx, random.Random(0))
    assert all(props.values())


def test_gamma_identity_and_inverse(gr_setup):
    cst, curve = gr_setup
    gamma = make_gamma(curve, cst.b_root, cst.c_root, cst.c_prime)
    assert gamma_selfmap_identity(curve, cst.b_root, cst.c_root)
    assert gamma.maps_into(curve)
    assert gamma.verify_inverse()
    # composing gamma with its inverse is the identity both ways
    assert gamma.compose(gamma.inverse).is_identity()
    assert gamma.inverse.compose(gamma).is_identity()


def test_gamma_conjugates_fix_the_infinite_place(gr_setup):
    cst, curve = gr_setup
    from galoispoints.branches import Place
    gamma = make_gamma(curve, cst.b_root, cst.c_root, cst.c_prime)
    G1 = make_G1("thm2", cst, curve)
    G2 = conjugate(G1, gamma, "h_g_h_inv")
    pl = Place(curve, infinity_point(curve), "Q_inf")
    assert all(g.fixes_place(pl) for g in G1.elements)
    assert all(t.fixes_place(pl) for t in G2.elements)


def test_thm2_separation_witness(gr_setup):
    cst, curve = gr_setup
    ctx = cst.ctx
    gamma = make_gamma(curve, cst.b_root, cst.c_root, cst.c_prime)
    alpha0 = cst.lambda_set[0]
    R = ProjPoint.affine(ctx, alpha0, ctx.zero)
    gR = gamma.evaluate(R)
    assert gR == ProjPoint.affine(ctx, ctx.add(cst.c_root, alpha0), cst.b_root)
    G1 = make_G1("thm2", cst, curve)
    for g in G1.elements:
        if not g.is_identity():
            assert g.evaluate(gR) != gR


# ---------------------------------------------------------------------------
# the model chain
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("p,n,m", [(3, 1, 2), (5, 1, 2), (5, 1, 3)])
def test_lemma1_chain_verifies(p, n, m):
    cst = make_family_constants(p, n, m, "Fm")
    chain = lemma1_chain(cst)
    assert all(chain["checks"].values())


def test_lemma1_stage1_lands_on_shifted_model():
    cst = make_family_constants(5, 1, 2, "Fm")
    chain = lemma1_chain(cst)
    fbar = chain["curves"]["Fbar"]
    # y^m - x^q - x - 1 = 0
    assert fbar.affine.terms[(0, 0)] == cst.ctx.neg(cst.ctx.one)


def test_lemma1_composite_image_relation_for_32():
    cst = make_family_constants(3, 1, 2, "Fm")
    chain = lemma1_chain(cst)
    em = chain["curves"]["Em"]
    # final model y^2 = x^4 - 1
    assert em.affine.terms == {(0, 2): cst.ctx.one,
                               (4, 0): cst.ctx.neg(cst.ctx.one),
                               (0, 0): cst.ctx.one}
