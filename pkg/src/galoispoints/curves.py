"""Projective plane curves for the two verified families and their models.

``make_curve`` builds the projective closure of

* ``Fm``:  y^m = x^q + x         (m | q+1, 2 <= m < q), degree q;
* ``Gr``:  y^(q^r+1) = x^q + x   (r >= 2), degree q^r + 1;
* ``Em``:  y^m = x^(q+1) - 1,    degree q + 1;

plus the two auxiliary models appearing in the chain between Fm and Em.
Every family polynomial is monic in y, which is what the function-field
layer relies on.  The projective degree is the total degree of the affine
equation; for Fm that is q (the plane model has a single point at infinity,
of multiplicity q - m when m < q - 1).
"""

from __future__ import annotations

from .fields import FieldCtx, build_field, embed, find_roots
from .poly import BiPoly, TernaryForm, UniPoly, homogenize, uni_gcd


class CurveError(ValueError):
    pass


class ProjPoint:
    """Point of P^2 over a FieldCtx, normalized so the first nonzero coord is 1."""

    __slots__ = ("ctx", "coords")

    def __init__(self, ctx: FieldCtx, coords):
        coords = list(coords)
        if len(coords) != 3:
            raise CurveError("projective point needs three coordinates")
        lead = next((c for c in coords if c != ctx.zero), None)
        if lead is None:
            raise CurveError("(0:0:0) is not a projective point")
        inv = ctx.inv(lead)
        self.ctx = ctx
        self.coords = tuple(ctx.mul(c, inv) for c in coords)

    @classmethod
    def affine(cls, ctx, x, y):
        return cls(ctx, [x, y, ctx.one])

    @classmethod
    def from_ints(cls, ctx, a, b, c):
        vals = [ctx.from_base(v) if isinstance(v, int) else v for v in (a, b, c)]
        return cls(ctx, vals)

    def __eq__(self, other):
        return (isinstance(other, ProjPoint) and self.ctx == other.ctx
                and self.coords == other.coords)

    def __hash__(self):
        return hash((self.ctx, self.coords))

    def __repr__(self):
        a, b, c = (self.ctx.to_int(v) for v in self.coords)
        return f"({a}:{b}:{c})"

    def key(self):
        return tuple(self.ctx.to_int(v) for v in self.coords)

    def is_affine(self):
        return self.coords[2] != self.ctx.zero

    def affine_xy(self):
        if not self.is_affine():
            raise CurveError("point at infinity has no affine coordinates")
        inv = self.ctx.inv(self.coords[2])
        return (self.ctx.mul(self.coords[0], inv), self.ctx.mul(self.coords[1], inv))

    def last_nonzero(self):
        for i in (2, 1, 0):
            if self.coords[i] != self.ctx.zero:
                return i
        raise CurveError("unreachable")

    def map_to(self, hom) -> "ProjPoint":
        return ProjPoint(hom.dst, [hom.apply(c) for c in self.coords])


class PlaneCurve:
    """Projective plane curve with its defining form and affine equation."""

    def __init__(self, ctx: FieldCtx, form: TernaryForm, family: str = "Other",
                 params: dict | None = None):
        self.ctx = ctx
        self.form = form
        self.degree = form.degree
        self.family = family
        self.params = dict(params or {})
        self.affine = form.dehomogenize(2)
        self._partials = None

    def __repr__(self):
        return f"PlaneCurve({self.family}, degree {self.degree}, {self.params})"

    def __eq__(self, other):
        return (isinstance(other, PlaneCurve) and self.ctx == other.ctx
                and self.form == other.form)

    def __hash__(self):
        return hash((self.ctx, frozenset(self.form.terms.items())))

    def deg_y_affine(self):
        return self.affine.deg_y()

    def monic_in_y(self):
        cols = self.affine.coeffs_in_y()
        top = cols[-1]
        return top.degree() == 0 and top.coeffs[0] == self.ctx.one

    def contains(self, pt: ProjPoint) -> bool:
        return self.form.eval(*pt.coords) == self.ctx.zero

    def partials(self):
        if self._partials is None:
            self._partials = tuple(self.form.partial(i) for i in range(3))
        return self._partials

    def is_smooth_at(self, pt: ProjPoint) -> bool:
        if not self.contains(pt):
            raise CurveError("point not on curve")
        return any(P.eval(*pt.coords) != self.ctx.zero for P in self.partials())

    def multiplicity_at(self, pt: ProjPoint) -> int:
        """Multiplicity of the curve at a plane point (0 if off the curve)."""
        ctx = self.ctx
        chart = pt.last_nonzero()
        f = self.form.dehomogenize(chart)
        if chart == 2:
            u0, w0 = pt.coords[0], pt.coords[1]
        elif chart == 1:
            u0, w0 = pt.coords[0], pt.coords[2]
        else:
            u0, w0 = pt.coords[1], pt.coords[2]
        g = f.subst(BiPoly(ctx, {(1, 0): ctx.one, (0, 0): u0}),
                    BiPoly(ctx, {(0, 1): ctx.one, (0, 0): w0}))
        if g.is_zero():
            raise CurveError("curve form vanished identically")
        return min(i + j for (i, j) in g.terms)

    def tangent_line_at(self, pt: ProjPoint) -> TernaryForm:
        ctx = self.ctx
        grads = [P.eval(*pt.coords) for P in self.partials()]
        if all(g == ctx.zero for g in grads):
            raise CurveError("no tangent line at a singular point")
        terms = {(1, 0, 0): grads[0], (0, 1, 0): grads[1], (0, 0, 1): grads[2]}
        return TernaryForm(ctx, 1, {k: v for k, v in terms.items() if v != ctx.zero})

    def map_to(self, hom) -> "PlaneCurve":
        return PlaneCurve(hom.dst, self.form.map_coeffs(hom.apply, hom.dst),
                          self.family, self.params)

    def random_affine_points(self, ctx_ext, hom, rng, count, avoid=()):
        """Affine points over an extension field, deterministic given rng.

        ``hom`` embeds the curve field into ``ctx_ext``; returns a list of
        (x, y) raw-value pairs on the curve avoiding the given x-values.
        """
        from .poly import UniPoly
        aff = self.affine.map_coeffs(hom.apply, ctx_ext)
        cols = aff.coeffs_in_y()
        pts = []
        seen = set()
        avoid = set(avoid)
        attempts = 0
        while len(pts) < count:
            attempts += 1
            if attempts > 400 * count:
                raise CurveError("could not sample enough curve points")
            xv = ctx_ext.random(rng)
            if xv in avoid:
                continue
            spec = UniPoly(ctx_ext, [u.eval(xv) for u in cols])
            if spec.degree() < 1:
                continue
            method = "split" if ctx_ext.order > 512 else None
            for yv in find_roots(spec, method=method):
                if (xv, yv) not in seen:
                    seen.add((xv, yv))
                    pts.append((xv, yv))
        return pts


# ---------------------------------------------------------------------------
# the curve families
# ---------------------------------------------------------------------------

def validate_family_params(family: str, q: int, mr: int):
    if family in ("Fm", "Em", "Fbar", "Mid"):
        m = mr
        if m < 2 or m >= q:
            raise CurveError(f"m={m} violates 2 <= m < q for q={q}")
        if (q + 1) % m:
            raise CurveError(f"m={m} does not divide q+1={q + 1}")
    elif family == "Gr":
        if mr < 2:
            raise CurveError(f"r={mr} violates r >= 2")
    else:
        raise CurveError(f"unknown family {family}")


def make_curve(family: str, q: int, mr: int, ctx: FieldCtx) -> PlaneCurve:
    """Projective closure of the named affine family curve over ctx."""
    validate_family_params(family, q, mr)
    one = 1
    if family == "Fm":
        m = mr
        aff = {(0, m): one, (q, 0): -one, (1, 0): -one}
        params = {"q": q, "m": m, "s": (q + 1) // m}
    elif family == "Gr":
        r = mr
        aff = {(0, q ** r + 1): one, (q, 0): -one, (1, 0): -one}
        params = {"q": q, "r": r}
    elif family == "Em":
        m = mr
        aff = {(0, m): one, (q + 1, 0): -one, (0, 0): one}
        params = {"q": q, "m": m, "s": (q + 1) // m}
    elif family == "Fbar":
        m = mr
        aff = {(0, m): one, (q, 0): -one, (1, 0): -one, (0, 0): -one}
        params = {"q": q, "m": m, "s": (q + 1) // m}
    else:  # Mid: the intermediate model y^m = x^(q+1) + x^q + x
        m = mr
        aff = {(0, m): one, (q + 1, 0): -one, (q, 0): -one, (1, 0): -one}
        params = {"q": q, "m": m, "s": (q + 1) // m}
    bp = BiPoly.from_int_terms(ctx, aff)
    form = homogenize(bp, bp.total_degree())
    curve = PlaneCurve(ctx, form, family, params)
    assert curve.monic_in_y()
    return curve


def infinity_point(curve: PlaneCurve) -> ProjPoint:
    """The unique point of the family curve on the line Z=0."""
    ctx = curve.ctx
    if curve.family in ("Fm", "Fbar"):
        return ProjPoint(ctx, [ctx.zero, ctx.one, ctx.zero])
    if curve.family == "Gr":
        return ProjPoint(ctx, [ctx.one, ctx.zero, ctx.zero])
    if curve.family in ("Em", "Mid"):
        return ProjPoint(ctx, [ctx.zero, ctx.one, ctx.zero])
    raise CurveError("no canonical infinite point for this curve")


# ---------------------------------------------------------------------------
# singular locus
# ---------------------------------------------------------------------------

def singular_locus(curve: PlaneCurve, search_ctx: FieldCtx) -> list:
    """All points with coordinates in search_ctx where F and its partials vanish.

    Points at infinity are enumerated from the top form; affine candidates
    come from resultant elimination rather than a full plane scan.
    """
    base = curve.ctx
    if search_ctx == base:
        hom = embed(base, base)
    else:
        hom = embed(base, search_ctx)
    ctx = search_ctx
    form = curve.form.map_coeffs(hom.apply, ctx)
    partials = [form.partial(i) for i in range(3)]

    def is_singular(pt):
        return (form.eval(*pt.coords) == ctx.zero
                and all(P.eval(*pt.coords) == ctx.zero for P in partials))

    found = []
    # points at infinity: Z = 0
    zform = {}
    for (i, j, k), c in form.terms.items():
        if k == 0:
            zform[j] = ctx.add(zform.get(j, ctx.zero), c)
    zpoly = UniPoly(ctx, [zform.get(j, ctx.zero) for j in range(max(zform) + 1)]) \
        if zform else UniPoly.zero(ctx)
    # candidates (1 : t : 0) with zpoly-like vanishing, plus (0 : 1 : 0)
    cands = []
    if not zpoly.is_zero():
        for t in find_roots(zpoly):
            cands.append(ProjPoint(ctx, [ctx.one, t, ctx.zero]))
    pt010 = ProjPoint(ctx, [ctx.zero, ctx.one, ctx.zero])
    if form.eval(*pt010.coords) == ctx.zero:
        cands.append(pt010)
    for pt in cands:
        if is_singular(pt):
            found.append(pt)

    # affine candidates
    f = form.dehomogenize(2)
    fx = f.derivative_x()
    fy = f.derivative_y()
    if fx.is_zero() and fy.is_zero():
        raise CurveError("defining polynomial is a p-th power")
    xcands = _affine_x_candidates(f, fx, fy, ctx)
    one = ctx.one
    for xv in xcands:
        fs = UniPoly(ctx, [u.eval(xv) for u in f.coeffs_in_y()])
        if fs.is_zero():
            raise CurveError("curve contains a vertical line")
        g = fs
        for h in (fx, fy):
            if h.is_zero():
                continue
            hs = UniPoly(ctx, [u.eval(xv) for u in h.coeffs_in_y()])
            if hs.is_zero():
                continue
            g = uni_gcd(g, hs)
        for yv in find_roots(g) if g.degree() >= 1 else []:
            pt = ProjPoint(ctx, [xv, yv, one])
            if is_singular(pt):
                found.append(pt)
    uniq = []
    for pt in sorted(found, key=ProjPoint.key):
        if not uniq or uniq[-1] != pt:
            uniq.append(pt)
    return uniq


def _affine_x_candidates(f, fx, fy, ctx):
    """x-values that can support an affine singular point."""
    cand_polys = []
    for h in (fx, fy):
        if h.is_zero():
            continue
        if h.deg_y() == 0:
            cand_polys.append(h.coeffs_in_y()[0])
        elif f.deg_y() >= 1:
            cand_polys.append(_resultant_extending(f, h, ctx))
    cand_polys = [p for p in cand_polys if not p.is_zero()]
    if not cand_polys:
        return []
    g = cand_polys[0]
    for p in cand_polys[1:]:
        g = uni_gcd(g, p)
    if g.degree() < 1:
        return []
    return find_roots(g)


def _resultant_extending(f, h, ctx):
    """Resultant in y, computed over an extension if ctx is too small.

    The coefficients lie in ctx either way, so the result maps back."""
    from .poly import PolyError, resultant
    try:
        return resultant(f, h, "y")
    except PolyError:
        pass
    k = ctx.k
    for mult in (2, 3, 4):
        big = build_field(ctx.p, k * mult)
        hom = embed(ctx, big)
        try:
            r = resultant(f.map_coeffs(hom.apply, big),
                          h.map_coeffs(hom.apply, big), "y")
            return r.map_coeffs(hom.preimage, ctx)
        except PolyError:
            continue
    raise CurveError("could not compute the singular-locus eliminant")
