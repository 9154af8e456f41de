import random

import pytest

from galoispoints.branches import Place
from galoispoints.constants import make_family_constants
from galoispoints.curves import ProjPoint, infinity_point, make_curve
from galoispoints.engine import (EngineError, build_embedding, classify_point,
                                 galois_certify, mobius_related,
                                 proposition_exclusion_suite,
                                 ramification_index, two_stage_eliminant)
from galoispoints.funcfield import FFElem, pick_oracle_field
from galoispoints.ratmaps import conjugate, make_G1, make_alpha


@pytest.fixture(scope="module")
def thm1a_32():
    cst = make_family_constants(3, 1, 2, "Fm")
    ctx = cst.ctx
    curve = make_curve("Fm", 3, 2, ctx)
    G1 = make_G1("thm1a", cst, curve)
    alpha = make_alpha(curve)
    G2 = conjugate(G1, alpha, "h_inv_g_h")
    f = FFElem.one(curve) / FFElem.y(curve)
    g = FFElem.x(curve).pow(2) / FFElem.y(curve)
    des = [("phi(P_inf)", "place", Place(curve, infinity_point(curve), "P_inf")),
           ("phi(P_0)", "place",
            Place(curve, ProjPoint.affine(ctx, ctx.zero, ctx.zero), "P_0"))]
    emb = build_embedding(curve, f, g, G1, G2, des, random.Random(0),
                          expected_degree=4)
    return cst, curve, G1, G2, f, g, emb


@pytest.fixture(scope="module")
def thm1a_53():
    cst = make_family_constants(5, 1, 3, "Fm")
    ctx = cst.ctx
    curve = make_curve("Fm", 5, 3, ctx)
    G1 = make_G1("thm1a", cst, curve)
    alpha = make_alpha(curve)
    G2 = conjugate(G1, alpha, "h_inv_g_h")
    f = FFElem.one(curve) / FFElem.y(curve)
    g = FFElem.x(curve).pow(2) / FFElem.y(curve)   # s = 2
    des = [("phi(P_inf)", "place", Place(curve, infinity_point(curve), "P_inf")),
           ("phi(P_0)", "place",
            Place(curve, ProjPoint.affine(ctx, ctx.zero, ctx.zero), "P_0"))]
    emb = build_embedding(curve, f, g, G1, G2, des, random.Random(0),
                          expected_degree=6)
    return cst, curve, G1, G2, f, g, emb


def test_image_degree_and_distinguished_points(thm1a_32):
    cst, curve, G1, G2, f, g, emb = thm1a_32
    ctx = curve.ctx
    assert emb.image_degree == 4
    pts = dict(emb.points)
    assert pts["phi(P_inf)"] == ProjPoint.from_ints(ctx, 0, 1, 0)
    assert pts["phi(P_0)"] == ProjPoint.from_ints(ctx, 1, 0, 0)
    assert dict(emb.classifications) == {"phi(P_inf)": "inner-smooth",
                                         "phi(P_0)": "inner-smooth"}


def test_eliminant_contains_image(thm1a_32):
    cst, curve, G1, G2, f, g, emb = thm1a_32
    from galoispoints.poly import _pseudo_rem_y
    assert _pseudo_rem_y(emb.eliminant, emb.image.affine).is_zero()


def test_mapped_points_vanish_on_image(thm1a_32):
    cst, curve, G1, G2, f, g, emb = thm1a_32
    assert emb.diagnostics["sample_vanishing"]
    assert emb.diagnostics["injectivity_pairs_distinct"]


def test_certificates_inner_case(thm1a_32):
    cst, curve, G1, G2, f, g, emb = thm1a_32
    oracle = pick_oracle_field(curve)
    c1 = galois_certify(curve, emb.phi, emb.image, emb.points[0][1], f, G1,
                        random.Random(0), oracle)
    assert c1.ok
    assert c1.evidence["extension_degree"] == 3
    assert c1.evidence["projection_degree_expected"] == 3     # d - 1 with d = 4
    c2 = galois_certify(curve, emb.phi, emb.image, emb.points[1][1], g, G2,
                        random.Random(0), oracle)
    assert c2.ok


def test_certificate_fails_for_wrong_group(thm1a_32):
    # projecting from the first center with the second group's function is
    # not invariant, so the certificate must fail closed
    cst, curve, G1, G2, f, g, emb = thm1a_32
    oracle = pick_oracle_field(curve)
    bad = galois_certify(curve, emb.phi, emb.image, emb.points[0][1], g, G1,
                         random.Random(0), oracle)
    assert not bad.ok


def test_classify_point_off_curve(thm1a_32):
    cst, curve, G1, G2, f, g, emb = thm1a_32
    ctx = curve.ctx
    # (1:1:1) does not satisfy the quartic image here
    pt = ProjPoint.from_ints(ctx, 1, 1, 1)
    if not emb.image.contains(pt):
        assert classify_point(emb.image, pt) == "outer"


def test_mobius_relation_positive_and_negative(thm1a_32):
    cst, curve, G1, G2, f, g, emb = thm1a_32
    ctx = curve.ctx
    # t and (t + 1)/t are Moebius-related; t and t^2 are not
    ok, coeffs = mobius_related(f, (f + FFElem.one(curve)) / f)
    assert ok
    ok2, _ = mobius_related(f, f * f)
    assert not ok2


def test_ramification_total_at_infinite_place(thm1a_32):
    cst, curve, G1, G2, f, g, emb = thm1a_32
    pl = Place(curve, infinity_point(curve), "P_inf")
    e = ramification_index(curve, emb.phi, emb.points[0][1], pl)
    assert e == 3


def test_ramification_partial_at_nondistinguished_point(thm1a_53):
    # (q, m) = (5, 3): the non-distinguished orbit points ramify with
    # index m - 1 = 2 < q = 5, so projection from them is not Galois
    cst, curve, G1, G2, f, g, emb = thm1a_53
    ctx = curve.ctx
    lam = next(v for v in cst.lambda_set if v != ctx.zero)
    P = ProjPoint.affine(ctx, lam, ctx.zero)
    img = emb.phi.evaluate(P)
    e = ramification_index(curve, emb.phi, img, Place(curve, P, "Q"))
    assert e == 2
    assert e < 5


def test_exclusion_suite_passes_53(thm1a_53):
    cst, curve, G1, G2, f, g, emb = thm1a_53
    suite = proposition_exclusion_suite(emb, cst, random.Random(0))
    assert suite["ok"]
    assert suite["tangent_multiplicity"] == 6
    assert all(row["e"] == 2 for row in suite["nondistinguished_ramification"])
    # with s = 2 the squaring map collides the four nonzero orbit points in
    # pairs, so the line at infinity meets the image there with multiplicity 2
    mults = dict(suite["z_section_multiplicities"])
    assert sum(mults.values()) == 6
    assert sorted(mults.values()) == [1, 1, 2, 2]


def test_exclusion_suite_rejects_smooth_cubic(thm1a_32):
    cst, curve, G1, G2, f, g, emb = thm1a_32
    with pytest.raises(EngineError):
        proposition_exclusion_suite(emb, cst, random.Random(0))


def test_two_stage_eliminant_vanishes_on_image_points(thm1a_32):
    cst, curve, G1, G2, f, g, emb = thm1a_32
    ctx = curve.ctx
    R = emb.eliminant
    rng = random.Random(3)
    from galoispoints.engine import sample_image_points
    pts, big, hom = sample_image_points(curve, emb.phi, 12, rng)
    Rbig = R.map_coeffs(hom.apply, big)
    assert all(Rbig.eval(u, v) == big.zero for (u, v) in pts)
