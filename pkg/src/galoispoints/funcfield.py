"""Function fields of the family curves: canonical elements and degrees.

An element of K(C) is stored in the canonical form sum_j c_j(x) y^j with
j < deg_y(F) and c_j in K(x), i.e. as a vector of reduced rational functions
over the quotient K(x)[y]/(F).  Equality is literal equality of the vectors,
so the normal form is idempotent by construction.

Degrees of subfield extensions [K(C):K(t)] are computed two independent
ways and must agree:

* eliminant: Res_y(F, N - T*D) for t = N/D, content in T dropped, bivariate
  squarefree part taken, degree read in x;
* fiber counting: for random values t0 in a large extension, the number of
  distinct curve points with t = t0 over the closure, obtained from the
  squarefree degree of a sheared resultant (a shear makes distinct points
  have distinct first coordinates, so no root collisions undercount).

The fiber count never overcounts, so the maximum over samples is compared
against the eliminant degree.
"""

from __future__ import annotations

import random

from .curves import PlaneCurve
from .fields import build_field, embed
from .poly import (BiPoly, PolyError, UniPoly, bi_squarefree_y, content_y,
                   divide_content_y, resultant, resultant_y_param,
                   squarefree_part, uni_gcd, uni_lcm)


class FFError(ValueError):
    pass


class RatFunc:
    """Reduced rational function in x: num/den, den monic, gcd(num, den)=1."""

    __slots__ = ("num", "den")

    def __init__(self, num: UniPoly, den: UniPoly, reduce: bool = True):
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if reduce:
            if num.is_zero():
                den = UniPoly.const(num.ctx, num.ctx.one)
            else:
                g = uni_gcd(num, den)
                if g.degree() > 0:
                    num = num // g
                    den = den // g
                lc = den.lc()
                if lc != den.ctx.one:
                    inv = den.ctx.inv(lc)
                    num = num.scale(inv)
                    den = den.scale(inv)
        self.num = num
        self.den = den

    @classmethod
    def from_poly(cls, p: UniPoly):
        return cls(p, UniPoly.const(p.ctx, p.ctx.one), reduce=False)

    @classmethod
    def zero(cls, ctx):
        return cls(UniPoly.zero(ctx), UniPoly.const(ctx, ctx.one), reduce=False)

    @classmethod
    def const(cls, ctx, c):
        return cls(UniPoly.const(ctx, c), UniPoly.const(ctx, ctx.one), reduce=False)

    def is_zero(self):
        return self.num.is_zero()

    def is_one(self):
        return self.den.degree() == 0 and self.num.degree() == 0 and \
            not self.num.is_zero() and self.num.coeffs[0] == self.num.ctx.one

    def __eq__(self, other):
        return (isinstance(other, RatFunc) and self.num == other.num
                and self.den == other.den)

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other):
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        num = self.num * other.den + other.num * self.den
        return RatFunc(num, self.den * other.den)

    def __neg__(self):
        return RatFunc(-self.num, self.den, reduce=False)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if self.is_zero() or other.is_zero():
            return RatFunc.zero(self.num.ctx)
        return RatFunc(self.num * other.num, self.den * other.den)

    def __truediv__(self, other):
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        if self.is_zero():
            return self
        return RatFunc(self.num * other.den, self.den * other.num)

    def __repr__(self):
        return f"({self.num})/({self.den})"


class FFElem:
    """Function-field element in canonical reduced form on a family curve."""

    __slots__ = ("curve", "coeffs", "_numden")

    def __init__(self, curve: PlaneCurve, coeffs):
        if not curve.monic_in_y():
            raise FFError("function-field arithmetic needs a curve monic in y")
        m = curve.deg_y_affine()
        coeffs = list(coeffs)
        if len(coeffs) > m:
            raise FFError("coefficient vector too long; reduce first")
        coeffs += [RatFunc.zero(curve.ctx)] * (m - len(coeffs))
        self.curve = curve
        self.coeffs = tuple(coeffs)
        self._numden = None

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, curve):
        return cls(curve, [])

    @classmethod
    def const(cls, curve, c):
        return cls(curve, [RatFunc.const(curve.ctx, c)])

    @classmethod
    def one(cls, curve):
        return cls.const(curve, curve.ctx.one)

    @classmethod
    def x(cls, curve):
        return cls(curve, [RatFunc.from_poly(UniPoly.x(curve.ctx))])

    @classmethod
    def y(cls, curve):
        ctx = curve.ctx
        return cls(curve, [RatFunc.zero(ctx), RatFunc.const(ctx, ctx.one)])

    @classmethod
    def from_bipoly(cls, curve, p: BiPoly):
        cols = [RatFunc.from_poly(u) for u in p.coeffs_in_y()]
        return cls._reduce_vec(curve, cols)

    @classmethod
    def _reduce_vec(cls, curve, cols):
        """Reduce a K(x)-coefficient vector in y modulo the curve equation."""
        m = curve.deg_y_affine()
        if len(cols) <= m:
            return cls(curve, cols)
        # y^m = (y^m - F_affine), a polynomial of y-degree < m
        ctx = curve.ctx
        red = curve.affine.coeffs_in_y()
        top = [RatFunc.from_poly(-u) for u in red[:-1]]  # -(lower part of F)
        cols = list(cols)
        for j in range(len(cols) - 1, m - 1, -1):
            c = cols[j]
            if c.is_zero():
                continue
            cols[j] = RatFunc.zero(ctx)
            for i, r in enumerate(top):
                if not r.is_zero():
                    cols[j - m + i] = cols[j - m + i] + c * r
        return cls(curve, cols[:m])

    # -- predicates ----------------------------------------------------------

    def is_zero(self):
        return all(c.is_zero() for c in self.coeffs)

    def is_constant(self):
        return all(c.is_zero() for c in self.coeffs[1:]) and \
            (self.coeffs[0].is_zero() or
             (self.coeffs[0].den.degree() == 0 and self.coeffs[0].num.degree() <= 0))

    def __eq__(self, other):
        return (isinstance(other, FFElem) and self.curve == other.curve
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.curve, self.coeffs))

    def __repr__(self):
        parts = [f"({c})*y^{j}" for j, c in enumerate(self.coeffs) if not c.is_zero()]
        return "FFElem(" + (" + ".join(parts) or "0") + ")"

    # -- arithmetic -----------------------------------------------------------

    def _check(self, other):
        if self.curve != other.curve:
            raise FFError("elements on different curves")

    def __add__(self, other):
        self._check(other)
        return FFElem(self.curve, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return FFElem(self.curve, [-a for a in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        ctx = self.curve.ctx
        m = self.curve.deg_y_affine()
        out = [RatFunc.zero(ctx) for _ in range(2 * m - 1)]
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return FFElem._reduce_vec(self.curve, out)

    def inv(self):
        """Inverse in K(x)[y]/(F) via the extended Euclidean algorithm."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in the function field")
        curve = self.curve
        ctx = curve.ctx
        fcols = [RatFunc.from_poly(u) for u in curve.affine.coeffs_in_y()]
        r0, r1 = fcols, list(self.coeffs)
        s0 = [RatFunc.zero(ctx)]
        s1 = [RatFunc.const(ctx, ctx.one)]
        while True:
            d1 = _vec_deg(r1)
            if d1 < 0:
                raise FFError("curve polynomial is reducible over K(x)")
            if d1 == 0:
                inv = RatFunc.const(ctx, ctx.one) / r1[0]
                return FFElem(curve, [c * inv for c in s1])
            q, r = _vec_divmod(r0, r1, ctx)
            r0, r1 = r1, r
            s0, s1 = s1, _vec_sub(s0, _vec_mul(q, s1, ctx), ctx)

    def __truediv__(self, other):
        return self * other.inv()

    def pow(self, e: int):
        if e < 0:
            return self.inv().pow(-e)
        r = FFElem.one(self.curve)
        b = self
        while e:
            if e & 1:
                r = r * b
            b = b * b
            e >>= 1
        return r

    # -- presentations ---------------------------------------------------------

    def as_num_den(self):
        """(N(x, y), D(x)) with N of y-degree < deg_y F and gcd-free of D."""
        if self._numden is not None:
            return self._numden
        ctx = self.curve.ctx
        den = UniPoly.const(ctx, ctx.one)
        for c in self.coeffs:
            if not c.is_zero():
                den = uni_lcm(den, c.den)
        cols = []
        for c in self.coeffs:
            if c.is_zero():
                cols.append(UniPoly.zero(ctx))
            else:
                cols.append(c.num * (den // c.den))
        num = BiPoly.from_coeffs_in_y(ctx, cols)
        self._numden = (num, den)
        return self._numden

    def eval_at(self, xv, yv):
        """Value at an affine point; raises ZeroDivisionError on a pole."""
        num, den = self.as_num_den()
        dv = den.eval(xv)
        ctx = self.curve.ctx
        if dv == ctx.zero:
            raise ZeroDivisionError("pole at the sample point")
        return ctx.div(num.eval(xv, yv), dv)

    def subst(self, xi: "FFElem", eta: "FFElem") -> "FFElem":
        """Composite self(xi, eta) as an element of xi's curve."""
        num, den = self.as_num_den()
        target = xi.curve
        nval = eval_bipoly_ff(num, xi, eta, target)
        dval = _eval_unipoly_ff(den, xi, target)
        if dval.is_zero():
            raise FFError("denominator collapses on the curve under substitution")
        return nval / dval

    def map_coeffs(self, hom, curve2) -> "FFElem":
        cols = [RatFunc(c.num.map_coeffs(hom.apply, curve2.ctx),
                        c.den.map_coeffs(hom.apply, curve2.ctx), reduce=False)
                for c in self.coeffs]
        return FFElem(curve2, cols)


def _vec_deg(v):
    for i in range(len(v) - 1, -1, -1):
        if not v[i].is_zero():
            return i
    return -1


def _vec_divmod(a, b, ctx):
    a = list(a)
    db = _vec_deg(b)
    lead = b[db]
    q = [RatFunc.zero(ctx) for _ in range(max(len(a) - db, 1))]
    da = _vec_deg(a)
    while da >= db:
        c = a[da] / lead
        q[da - db] = c
        for j in range(db + 1):
            a[da - db + j] = a[da - db + j] - c * b[j]
        da = _vec_deg(a)
    return q, a[:db] if db > 0 else [RatFunc.zero(ctx)]


def _vec_sub(a, b, ctx):
    n = max(len(a), len(b))
    out = []
    for i in range(n):
        x = a[i] if i < len(a) else RatFunc.zero(ctx)
        y = b[i] if i < len(b) else RatFunc.zero(ctx)
        out.append(x - y)
    return out


def _vec_mul(a, b, ctx):
    out = [RatFunc.zero(ctx) for _ in range(len(a) + len(b) - 1)]
    for i, x in enumerate(a):
        if x.is_zero():
            continue
        for j, y in enumerate(b):
            if not y.is_zero():
                out[i + j] = out[i + j] + x * y
    return out


def eval_bipoly_ff(p: BiPoly, xi: FFElem, eta: FFElem, curve) -> FFElem:
    cols = p.coeffs_in_y()
    acc = FFElem.zero(curve)
    for u in reversed(cols):
        inner = FFElem.zero(curve)
        for c in reversed(u.coeffs):
            inner = inner * xi + FFElem.const(curve, c)
        acc = acc * eta + inner
    return acc


def _eval_unipoly_ff(p: UniPoly, xi: FFElem, curve) -> FFElem:
    acc = FFElem.zero(curve)
    for c in reversed(p.coeffs):
        acc = acc * xi + FFElem.const(curve, c)
    return acc


# ---------------------------------------------------------------------------
# normal form entry point
# ---------------------------------------------------------------------------

def normal_form(num: BiPoly, den: BiPoly, curve: PlaneCurve) -> FFElem:
    """Canonical form of the rational expression num/den on the curve."""
    n = FFElem.from_bipoly(curve, num)
    d = FFElem.from_bipoly(curve, den)
    if d.is_zero():
        raise FFError("denominator vanishes identically on the curve")
    return n / d


# ---------------------------------------------------------------------------
# extension degrees
# ---------------------------------------------------------------------------

def extension_degree_eliminant(t: FFElem) -> int:
    """[K(C):K(t)] via Res_y(F, N - T*D) with content and squarefree cleanup."""
    if t.is_constant():
        raise FFError("extension degree of a constant")
    curve = t.curve
    num, den = t.as_num_den()
    F = curve.affine
    if num.deg_y() == 0:
        # t in K(x): composite of the y-cover and a rational map of lines
        n0 = num.coeffs_in_y()[0]
        return F.deg_y() * max(n0.degree(), den.degree())
    fterms = {(i, j, 0): c for (i, j), c in F.terms.items()}
    gterms = {(i, j, 0): c for (i, j), c in num.terms.items()}
    ctx = curve.ctx
    for i, c in enumerate(den.coeffs):
        if c != ctx.zero:
            key = (i, 0, 1)
            prev = gterms.get(key, ctx.zero)
            gterms[key] = ctx.sub(prev, c)
    work_ctx, hom = ctx, None
    while True:
        try:
            if hom is None:
                E = resultant_y_param(fterms, gterms, work_ctx)
            else:
                ft = {k: hom.apply(c) for k, c in fterms.items()}
                gt = {k: hom.apply(c) for k, c in gterms.items()}
                E = resultant_y_param(ft, gt, work_ctx)
            break
        except PolyError:
            work_ctx, hom = _extend(ctx, work_ctx)
    cont = content_y(E)
    if cont.degree() > 0:
        E = divide_content_y(E, cont)
    E = bi_squarefree_y(E)
    return E.deg_x()


def _extend(base, current):
    k = current.k + base.k if current is not base else 2 * base.k
    ctx2 = build_field(base.p, k)
    return ctx2, embed(base, ctx2)


def pick_oracle_field(curve: PlaneCurve, min_size=None):
    """Extension with >= 100*d^2 elements for the fiber-count oracle."""
    ctx = curve.ctx
    target = min_size or 100 * curve.degree * curve.degree
    k = ctx.k
    while ctx.p ** k < target:
        k += ctx.k
    big = build_field(ctx.p, k)
    return big, embed(ctx, big)


def extension_degree_fibers(t: FFElem, rng: random.Random, samples: int = 5,
                            oracle=None) -> int:
    """[K(C):K(t)] by counting closure points of random fibers t = t0.

    A shear w = x + theta*y separates the finitely many fiber points, the
    resultant in w has constant leading coefficient, and the squarefree
    degree counts distinct points exactly; base points of N/D are counted
    once and subtracted.  Undercounts (ramified fibers, shear collisions)
    are possible, overcounts are not, so the maximum over samples is taken.
    """
    if t.is_constant():
        raise FFError("extension degree of a constant")
    curve = t.curve
    big, hom = oracle or pick_oracle_field(curve)
    F = curve.affine.map_coeffs(hom.apply, big)
    num, den = t.as_num_den()
    N = num.map_coeffs(hom.apply, big)
    D = den.map_coeffs(hom.apply, big)
    best = 0
    for _ in range(samples):
        t0 = big.random(rng)
        theta = _good_shear(curve, big, rng)
        Fsh = _shear(F, theta)
        h = N - BiPoly.from_uni_x(D) * t0
        hsh = _shear(h, theta)
        E = resultant(Fsh, hsh, "y")
        if E.is_zero():
            raise FFError("fiber eliminant vanished identically")
        cnt = squarefree_part(E).degree() - _base_point_count(curve, big, N, D, theta)
        best = max(best, cnt)
    return best


def _shear(f: BiPoly, theta) -> BiPoly:
    ctx = f.ctx
    # x -> x - theta*y keeps y and makes distinct points differ in x
    px = BiPoly(ctx, {(1, 0): ctx.one, (0, 1): ctx.neg(theta)})
    py = BiPoly.y(ctx)
    return f.subst(px, py)

_BASE_COUNT_CACHE: dict = {}


def _good_shear(curve, big, rng):
    """theta making the top form of the curve y-monic after the shear."""
    top = {}
    d = curve.degree
    ctx = curve.ctx
    for (i, j), c in curve.affine.terms.items():
        if i + j == d:
            top[(i, j)] = c
    hom = embed(ctx, big)
    while True:
        theta = big.random(rng)
        acc = big.zero
        for (i, j), c in top.items():
            acc = big.add(acc, big.mul(hom.apply(c),
                                       big.pow_(big.neg(theta), i)))
        if acc != big.zero:
            return theta


def _base_point_count(curve, big, N, D, theta):
    Db = BiPoly.from_uni_x(D) if isinstance(D, UniPoly) else D
    if (Db.deg_x() <= 0 and Db.deg_y() <= 0) or (N.deg_x() <= 0 and N.deg_y() <= 0):
        return 0
    key = (curve, big, frozenset(N.terms.items()), frozenset(Db.terms.items()), theta)
    if key in _BASE_COUNT_CACHE:
        return _BASE_COUNT_CACHE[key]
    hom = embed(curve.ctx, big)
    F = curve.affine.map_coeffs(hom.apply, big)
    Fsh = _shear(F, theta)
    En = _sheared_eliminant(Fsh, _shear(N, theta))
    Ed = _sheared_eliminant(Fsh, _shear(Db, theta))
    g = uni_gcd(squarefree_part(En), squarefree_part(Ed))
    cnt = g.degree()
    _BASE_COUNT_CACHE[key] = cnt
    return cnt


def _sheared_eliminant(Fsh: BiPoly, h: BiPoly) -> UniPoly:
    """Eliminate y from (Fsh, h); handles y-free h by direct projection."""
    if h.deg_y() >= 1:
        return resultant(Fsh, h, "y")
    return h.coeffs_in_y()[0]


def extension_degree(t: FFElem, rng: random.Random | None = None,
                     oracle=None) -> int:
    """[K(C):K(t)] with the eliminant and fiber-count methods cross-checked."""
    rng = rng or random.Random(0)
    d1 = extension_degree_eliminant(t)
    d2 = extension_degree_fibers(t, rng, oracle=oracle)
    if d1 != d2:
        d2 = extension_degree_fibers(t, rng, oracle=oracle)
        if d1 != d2:
            raise FFError(f"extension degree methods disagree: {d1} vs {d2}")
    return d1


def pullback(rat_map, f: FFElem) -> FFElem:
    """f composed with the map: the contravariant action on functions."""
    return rat_map.pullback(f)


def verify_fixed_field(group, t: FFElem, rng: random.Random | None = None,
                       oracle=None):
    """Certify K(C)^G = K(t): G-invariance of t plus the degree count.

    Returns (ok, report) where report lists the two facts separately.
    """
    fixed = all(g.pullback(t) == t for g in group.elements)
    deg = extension_degree(t, rng=rng, oracle=oracle)
    ok = fixed and deg == group.order()
    report = {"invariant_under_group": fixed,
              "extension_degree": deg,
              "group_order": group.order()}
    return ok, report
