"""Acceptance gate: every exit criterion at its stated tolerance.

Arithmetic is exact, so every tolerance is exact equality.  Each criterion
prints one pass/fail line (run with ``pytest tests/test_acceptance.py -v -s``
to watch them).  The full statement grids are executed once in a session
fixture and shared across criteria.
"""

import random
import time

import pytest

from galoispoints.branches import Place, valuation
from galoispoints.constants import make_family_constants
from galoispoints.curves import infinity_point, make_curve
from galoispoints.funcfield import (FFElem, extension_degree_eliminant,
                                    extension_degree_fibers, normal_form,
                                    pick_oracle_field)
from galoispoints.poly import BiPoly
from galoispoints.ratmaps import (conjugate, make_G1, make_alpha, make_beta,
                                  make_gamma)
from galoispoints.runner import run_selector

PN = {2: (2, 1), 3: (3, 1), 5: (5, 1), 7: (7, 1), 8: (2, 3)}
GRID_FM = [(3, 2), (5, 2), (5, 3), (7, 2), (7, 4), (8, 3)]
GRID_GR = [(2, 2), (2, 3), (3, 2)]
GRID_PROP = [(5, 2), (5, 3), (7, 2), (7, 4), (8, 3)]

TARGET_SECONDS_THM1 = 60.0
TARGET_SECONDS_THM2 = 120.0


def _run(sel, q, mr):
    p, n = PN[q]
    kw = {"r": mr} if sel == "thm2" else {"m": mr}
    t0 = time.perf_counter()
    rep = run_selector(sel, p, n, **kw)[0]
    return rep, time.perf_counter() - t0


@pytest.fixture(scope="session")
def grid_runs():
    runs = {}
    for sel, grid in (("thm1a", GRID_FM), ("lemma1", GRID_FM),
                      ("thm1b", GRID_FM), ("thm2", GRID_GR),
                      ("prop1", GRID_PROP)):
        for (q, mr) in grid:
            runs[(sel, q, mr)] = _run(sel, q, mr)
    return runs


def _statuses(rep):
    return {c.name: c.status for c in rep.checks}


def _announce(tag, ok, detail=""):
    print(f"\nACCEPTANCE {tag}: {'PASS' if ok else 'FAIL'}  {detail}")
    assert ok, f"{tag} failed: {detail}"


def test_criterion_1_inner_galois_points(grid_runs):
    """Inner-Galois-points suite over the full grid, with the runtime target."""
    needed = ["alpha_selfmap", "G1_group", "trivial_intersection",
              "orbit_condition", "fixed_field_G1", "fixed_field_G2",
              "embedding_image", "distinguished_points", "inner_smooth",
              "galois_certificates"]
    detail = []
    ok = True
    for (q, m) in GRID_FM:
        rep, dt = grid_runs[("thm1a", q, m)]
        st = _statuses(rep)
        tuple_ok = rep.passed() and all(st.get(nm) == "pass" for nm in needed)
        tuple_ok = tuple_ok and dt < TARGET_SECONDS_THM1
        detail.append(f"(q={q},m={m}): {'ok' if tuple_ok else 'FAIL'} {dt:.1f}s")
        ok = ok and tuple_ok
    _announce("criterion 1 (two inner Galois points, 6 tuples)", ok, "; ".join(detail))


def test_criterion_2_model_chain(grid_runs):
    """The birational chain between the two plane families, same grid."""
    detail = []
    ok = True
    for (q, m) in GRID_FM:
        rep, dt = grid_runs[("lemma1", q, m)]
        st = _statuses(rep)
        tuple_ok = rep.passed() and st.get("mid_identity") == "pass" \
            and st.get("composite_birational") == "pass"
        detail.append(f"(q={q},m={m}): {'ok' if tuple_ok else 'FAIL'}")
        ok = ok and tuple_ok
    _announce("criterion 2 (model chain with inverse witness)", ok, "; ".join(detail))


def test_criterion_3_outer_galois_points(grid_runs):
    """Outer-Galois-points suite on the norm-form model over the full grid."""
    needed = ["beta_numerator", "beta_selfmap", "G1_transitive",
              "trivial_intersection", "orbit_condition", "embedding_image",
              "outer_points", "galois_certificates"]
    detail = []
    ok = True
    for (q, m) in GRID_FM:
        rep, dt = grid_runs[("thm1b", q, m)]
        st = _statuses(rep)
        tuple_ok = rep.passed() and all(st.get(nm) == "pass" for nm in needed)
        tuple_ok = tuple_ok and dt < TARGET_SECONDS_THM1
        detail.append(f"(q={q},m={m}): {'ok' if tuple_ok else 'FAIL'} {dt:.1f}s")
        ok = ok and tuple_ok
    _announce("criterion 3 (two outer Galois points, 6 tuples)", ok, "; ".join(detail))


def test_criterion_4_tower_family(grid_runs):
    """Tower-family suite over its grid, with the runtime target."""
    needed = ["constants", "gb_properties", "gamma_selfmap", "G1_group",
              "trivial_intersection", "divisor_condition", "embedding_image",
              "outer_points", "galois_certificates"]
    detail = []
    ok = True
    for (q, r) in GRID_GR:
        rep, dt = grid_runs[("thm2", q, r)]
        st = _statuses(rep)
        tuple_ok = rep.passed() and all(st.get(nm) == "pass" for nm in needed)
        tuple_ok = tuple_ok and dt < TARGET_SECONDS_THM2
        detail.append(f"(q={q},r={r}): {'ok' if tuple_ok else 'FAIL'} {dt:.1f}s")
        ok = ok and tuple_ok
    _announce("criterion 4 (tower family, 3 tuples)", ok, "; ".join(detail))


def test_criterion_5_exclusions(grid_runs):
    """The checkable exclusion suite away from the smooth cubic."""
    needed = ["orbit_image_is_z_section", "tangent_multiplicity",
              "total_ramification", "partial_ramification_elsewhere"]
    detail = []
    ok = True
    for (q, m) in GRID_PROP:
        rep, dt = grid_runs[("prop1", q, m)]
        st = _statuses(rep)
        tuple_ok = rep.passed() and all(st.get(nm) == "pass" for nm in needed)
        detail.append(f"(q={q},m={m}): {'ok' if tuple_ok else 'FAIL'}")
        ok = ok and tuple_ok
    _announce("criterion 5 (inner-point exclusions, 5 tuples)", ok, "; ".join(detail))


def test_criterion_6_degree_oracle_equivalence():
    """Eliminant and fiber-count degrees agree on every base function."""
    pairs = 0
    ok = True
    detail = []
    for (q, m) in GRID_FM:
        p, n = PN[q]
        cst = make_family_constants(p, n, m, "Fm")
        ctx = cst.ctx
        s = (q + 1) // m
        fm = make_curve("Fm", q, m, ctx)
        em = make_curve("Em", q, m, ctx)
        beta = make_beta(em, cst.beta_lambda)
        fns = [(fm, FFElem.one(fm) / FFElem.y(fm), q),
               (fm, FFElem.x(fm).pow(s) / FFElem.y(fm), q),
               (em, FFElem.y(em), q + 1),
               (em, beta.inverse.pullback(FFElem.y(em)), q + 1)]
        for curve, t, want in fns:
            d1 = extension_degree_eliminant(t)
            d2 = extension_degree_fibers(t, random.Random(0),
                                         oracle=pick_oracle_field(curve))
            agree = d1 == d2 == want
            ok = ok and agree
            pairs += 1
            if not agree:
                detail.append(f"{curve.family}(q={q},m={m}): {d1} vs {d2} want {want}")
    for (q, r) in GRID_GR:
        p, n = PN[q]
        cst = make_family_constants(p, n, r, "Gr")
        gr = make_curve("Gr", q, r, cst.ctx)
        gamma = make_gamma(gr, cst.b_root, cst.c_root, cst.c_prime)
        d = q ** r + 1
        for t in (FFElem.x(gr), gamma.inverse.pullback(FFElem.x(gr))):
            d1 = extension_degree_eliminant(t)
            d2 = extension_degree_fibers(t, random.Random(0),
                                         oracle=pick_oracle_field(gr))
            agree = d1 == d2 == d
            ok = ok and agree
            pairs += 1
            if not agree:
                detail.append(f"Gr(q={q},r={r}): {d1} vs {d2} want {d}")
    ok = ok and pairs >= 18
    _announce("criterion 6 (degree oracle equivalence)", ok,
              f"{pairs} function/curve pairs agreed" if ok else "; ".join(detail))


def test_criterion_7_property_suites():
    """Latin squares, the involution, contravariance, idempotence, stability."""
    failures = []

    # group tables over the full grid
    for (q, m) in GRID_FM:
        p, n = PN[q]
        cst = make_family_constants(p, n, m, "Fm")
        curve = make_curve("Fm", q, m, cst.ctx)
        G1 = make_G1("thm1a", cst, curve)
        alpha = make_alpha(curve)
        G2 = conjugate(G1, alpha, "h_inv_g_h")
        if not (G1.is_latin_square() and G2.is_latin_square()):
            failures.append(f"latin square (q={q},m={m})")
        if not alpha.compose(alpha).is_identity():
            failures.append(f"involution (q={q},m={m})")
    for (q, r) in GRID_GR:
        p, n = PN[q]
        cst = make_family_constants(p, n, r, "Gr")
        curve = make_curve("Gr", q, r, cst.ctx)
        G1 = make_G1("thm2", cst, curve)
        gamma = make_gamma(curve, cst.b_root, cst.c_root, cst.c_prime)
        G2 = conjugate(G1, gamma, "h_g_h_inv")
        if not (G1.is_latin_square() and G2.is_latin_square()):
            failures.append(f"latin square (q={q},r={r})")

    # pullback contravariance on 100 random pairs
    cst = make_family_constants(3, 1, 2, "Fm")
    curve = make_curve("Fm", 3, 2, cst.ctx)
    G1 = make_G1("thm1a", cst, curve)
    alpha = make_alpha(curve)
    G2 = conjugate(G1, alpha, "h_inv_g_h")
    pool = G1.elements + G2.elements + [alpha]
    func = FFElem.x(curve) + FFElem.y(curve)
    rng = random.Random(101)
    for i in range(100):
        g1 = pool[rng.randrange(len(pool))]
        g2 = pool[rng.randrange(len(pool))]
        if g1.compose(g2).pullback(func) != g2.pullback(g1.pullback(func)):
            failures.append(f"contravariance pair {i}")

    # normal-form idempotence on 100 random expressions
    ctx = cst.ctx
    rng = random.Random(103)
    done = 0
    while done < 100:
        num = BiPoly(ctx, {(rng.randrange(5), rng.randrange(5)): ctx.random(rng)
                           for _ in range(5)})
        den = BiPoly(ctx, {(rng.randrange(2), rng.randrange(2)): ctx.random(rng)
                           for _ in range(3)})
        if num.is_zero() or den.is_zero():
            continue
        try:
            e = normal_form(num, den, curve)
        except Exception:
            continue
        n2, d2 = e.as_num_den()
        if normal_form(n2, BiPoly.from_uni_x(d2), curve) != e:
            failures.append(f"idempotence #{done}")
        done += 1

    # branch valuation stability under precision doubling
    for fam, (q, mr) in (("Fm", (5, 2)), ("Gr", (2, 2))):
        p, n = PN[q]
        cstf = make_family_constants(p, n, mr, fam)
        cur = make_curve(fam, q, mr, cstf.ctx)
        pl = Place(cur, infinity_point(cur), "inf")
        fn = FFElem.x(cur) * FFElem.y(cur) + FFElem.one(cur)
        vals = {valuation(pl, fn, prec=4 * cur.degree),
                valuation(pl, fn, prec=8 * cur.degree),
                valuation(pl, fn, prec=16 * cur.degree)}
        if len(vals) != 1:
            failures.append(f"valuation stability {fam}")

    _announce("criterion 7 (property suites)", not failures,
              "zero failures" if not failures else "; ".join(failures))
