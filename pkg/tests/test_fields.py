import random

import pytest

from galoispoints.fields import (FieldCtx, FieldError, build_field, embed,
                                 find_roots, solve_additive)
from galoispoints.poly import UniPoly


def brute_force_smallest_irreducible(p, k):
    """Oracle: enumerate monic degree-k polynomials in canonical order and
    keep the first with no root pattern admitting a factorization."""
    def poly_mul(a, b):
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
        return out

    monics = {1: [], }
    for d in range(1, k):
        monics[d] = []
        for nn in range(p ** d):
            digs, t = [], nn
            for _ in range(d):
                digs.append(t % p)
                t //= p
            monics[d].append(digs + [1])

    def divides(small, big):
        big = list(big)
        ds = len(small) - 1
        for i in range(len(big) - 1, ds - 1, -1):
            c = big[i]
            if c:
                inv = pow(small[-1], p - 2, p)
                f = c * inv % p
                for j in range(ds + 1):
                    big[i - ds + j] = (big[i - ds + j] - f * small[j]) % p
        return all(c == 0 for c in big[:ds])

    for nn in range(p ** k):
        digs, t = [], nn
        for _ in range(k):
            digs.append(t % p)
            t //= p
        cand = digs + [1]
        if not any(divides(s, cand) for d in range(1, k // 2 + 1) for s in monics[d]):
            return tuple(cand)
    raise AssertionError("no irreducible found")


def test_prime_field_modulus_is_x():
    F3 = build_field(3, 1)
    assert F3.modulus == (0, 1)
    assert list(F3.elements()) == [0, 1, 2]


def test_f16_modulus_is_lex_smallest_quartic():
    # oracle: enumerate monic quartics over F_2 in canonical order
    expected = brute_force_smallest_irreducible(2, 4)
    F16 = build_field(2, 4)
    assert F16.modulus == expected
    assert F16.modulus == (1, 1, 0, 0, 1)   # x^4 + x + 1


def test_f9_frobenius_identity_on_random_elements():
    F9 = build_field(3, 2)
    rng = random.Random(7)
    for _ in range(20):
        a = F9.random(rng)
        assert F9.pow_(a, 9) == a


@pytest.mark.parametrize("p,k", [(2, 4), (3, 2), (5, 2), (7, 2), (2, 6), (3, 8)])
def test_frobenius_fixes_exactly_the_prime_field(p, k):
    F = build_field(p, k)
    fixed = [a for a in F.elements() if F.pow_(a, p) == a]
    assert len(fixed) == p


def test_build_field_deterministic_and_cached():
    a = build_field(3, 4)
    b = build_field(3, 4)
    assert a is b
    assert a.modulus == FieldCtx(3, 4).modulus


def test_build_field_rejects_composite_characteristic():
    with pytest.raises(FieldError):
        FieldCtx(6, 2)


def test_build_field_size_cap():
    with pytest.raises(FieldError):
        build_field(3, 16, size_cap=1000)


@pytest.mark.parametrize("p,k", [(2, 4), (3, 2), (5, 3), (2, 8)])
def test_field_axioms_on_random_triples(p, k):
    F = build_field(p, k)
    rng = random.Random(p * 100 + k)
    for _ in range(50):
        a, b, c = (F.random(rng) for _ in range(3))
        assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
        assert F.add(a, b) == F.add(b, a)
        assert F.mul(a, b) == F.mul(b, a)
        if a != F.zero:
            assert F.mul(a, F.inv(a)) == F.one


def test_backend_vector_matches_table_arithmetic():
    # same field, two backends: F_3^16 is vector, compare against embeds
    small = build_field(3, 2)
    big = build_field(3, 16)
    assert big.backend == "vector"
    hom = embed(small, big)
    rng = random.Random(0)
    for _ in range(25):
        a, b = small.random(rng), small.random(rng)
        assert hom.apply(small.mul(a, b)) == big.mul(hom.apply(a), hom.apply(b))
        assert hom.apply(small.add(a, b)) == big.add(hom.apply(a), hom.apply(b))


def test_field_elem_wrapper_operators():
    F = build_field(5, 2)
    a = F.elem(7)
    b = F.elem(11)
    assert (a + b) - b == a
    assert (a * b) / b == a
    assert a ** 24 == F.elem(1) or a == F.elem(0)
    assert -(-a) == a


# ---------------------------------------------------------------------------
# embeddings
# ---------------------------------------------------------------------------

def test_embed_f3_into_f9_is_identity_on_prime_field():
    F3, F9 = build_field(3, 1), build_field(3, 2)
    h = embed(F3, F9)
    for c in range(3):
        assert h.apply(F3.from_base(c)) == F9.from_base(c)


def test_embed_f4_into_f16_root_satisfies_modulus():
    F4, F16 = build_field(2, 2), build_field(2, 4)
    h = embed(F4, F16)
    want = UniPoly(F16, [F16.from_base(c) for c in F4.modulus])
    assert want.eval(h.root) == F16.zero


def test_embed_identity_map():
    F16 = build_field(2, 4)
    h = embed(F16, F16)
    rng = random.Random(1)
    for _ in range(20):
        a = F16.random(rng)
        assert h.apply(a) == a


def test_embed_respects_operations_on_100_random_pairs():
    F5, F125 = build_field(5, 1), build_field(5, 3)
    h = embed(F5, F125)
    rng = random.Random(2)
    for _ in range(100):
        a, b = F5.random(rng), F5.random(rng)
        assert h.apply(F5.add(a, b)) == F125.add(h.apply(a), h.apply(b))
        assert h.apply(F5.mul(a, b)) == F125.mul(h.apply(a), h.apply(b))


def test_embed_requires_divisible_degree():
    with pytest.raises(FieldError):
        embed(build_field(2, 3), build_field(2, 4))


def test_embed_preimage_round_trip_and_rejection():
    F4, F16 = build_field(2, 2), build_field(2, 4)
    h = embed(F4, F16)
    rng = random.Random(3)
    image = {h.apply(a) for a in F4.elements()}
    for _ in range(30):
        a = F4.random(rng)
        assert h.preimage(h.apply(a)) == a
    outside = next(v for v in F16.elements() if v not in image)
    with pytest.raises(FieldError):
        h.preimage(outside)


# ---------------------------------------------------------------------------
# roots
# ---------------------------------------------------------------------------

def test_find_roots_quartic_unity_in_f9():
    F9 = build_field(3, 2)
    f = UniPoly.from_ints(F9, [-1, 0, 0, 0, 1])    # z^4 - 1 with q = 3
    roots = find_roots(f)
    scan = sorted((a for a in F9.elements() if F9.pow_(a, 4) == F9.one),
                  key=F9.to_int)
    assert roots == scan
    assert len(roots) == 4


def test_find_roots_no_roots():
    F3 = build_field(3, 1)
    f = UniPoly.from_ints(F3, [1, 0, 1])          # x^2 + 1 over F_3
    assert find_roots(f) == []


def test_find_roots_linear():
    F9 = build_field(3, 2)
    c = F9.from_int(5)
    f = UniPoly(F9, [F9.neg(c), F9.one])
    assert find_roots(f) == [c]


def test_find_roots_zero_polynomial_rejected():
    F9 = build_field(3, 2)
    with pytest.raises(FieldError):
        find_roots(UniPoly.zero(F9))


@pytest.mark.parametrize("p,k", [(2, 6), (3, 4), (5, 2), (7, 2)])
def test_scan_and_split_root_finders_agree(p, k):
    F = build_field(p, k)
    rng = random.Random(p + k)
    for _ in range(8):
        coeffs = [F.random(rng) for _ in range(6)] + [F.one]
        f = UniPoly(F, coeffs)
        assert find_roots(f, "scan") == find_roots(f, "split")


# ---------------------------------------------------------------------------
# additive solver
# ---------------------------------------------------------------------------

def test_solve_additive_kernel_of_t3_plus_t_over_f9():
    F9 = build_field(3, 2)
    sols = solve_additive([(1, F9.one), (0, F9.one)], F9.zero, F9)
    scan = sorted((a for a in F9.elements()
                   if F9.add(F9.pow_(a, 3), a) == F9.zero), key=F9.to_int)
    assert sols == scan
    assert len(sols) == 3
    # the nonzero roots square to -1
    i = next(a for a in sols if a != F9.zero)
    assert F9.mul(i, i) == F9.neg(F9.one)


@pytest.mark.parametrize("p,n", [(2, 1), (3, 1), (5, 1), (7, 1), (2, 3)])
def test_kernel_of_tq_plus_t_has_size_q_in_fq2(p, n):
    q = p ** n
    F = build_field(p, 2 * n)
    sols = solve_additive([(n, F.one), (0, F.one)], F.zero, F)
    assert len(sols) == q


def test_solve_additive_affine_equation_in_f16():
    F16 = build_field(2, 4)
    b = next(a for a in F16.elements() if a != F16.zero)
    rhs = F16.pow_(b, 5)
    sols = solve_additive([(1, F16.one), (0, F16.one)], rhs, F16)
    scan = sorted((c for c in F16.elements()
                   if F16.add(F16.mul(c, c), c) == rhs), key=F16.to_int)
    assert sols == scan
    assert len(sols) == 2


@pytest.mark.parametrize("p,k", [(3, 2), (2, 4), (5, 2)])
def test_solve_additive_matches_exhaustive_scan(p, k):
    F = build_field(p, k)
    rng = random.Random(17)
    for _ in range(5):
        a1, a0 = F.random(rng), F.random(rng)
        if a1 == F.zero and a0 == F.zero:
            continue
        rhs = F.random(rng)
        sols = solve_additive([(1, a1), (0, a0)], rhs, F)
        scan = sorted((z for z in F.elements()
                       if F.add(F.mul(a1, F.pow_(z, p)), F.mul(a0, z)) == rhs),
                      key=F.to_int)
        assert sols == scan
