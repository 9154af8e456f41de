"""Branch parametrizations of plane-curve points and the valuations they carry.

A place of the smooth model is realized as a truncated parametrization
(x(t), y(t)) of the unique branch at a (possibly singular) plane point.
Smooth centers are lifted with Hensel/Newton iteration; singular centers go
through a Newton-polygon step: a unimodular monomial substitution turns the
single edge into a simple-root Hensel problem.  Multibranch situations
(several edges, or several distinct edge-polynomial roots) are reported as
hard errors, never silently resolved -- the family curves here are unibranch
at every center we expand.

Valuations are read off the parametrization; the engine doubles precision
until the computed order is stable across two precisions, and any coefficient
appearing below the tracked precision is exact, so a stable answer is exact.
"""

from __future__ import annotations

from .curves import PlaneCurve, ProjPoint
from .fields import find_roots
from .poly import BiPoly, TernaryForm, UniPoly, root_multiplicity
from .series import LaurentSeries


class BranchError(ValueError):
    pass


class MultibranchError(BranchError):
    """The Newton polygon produced more than one branch at the center."""


def _ext_gcd_int(a, b):
    if b == 0:
        return a, 1, 0
    g, x, y = _ext_gcd_int(b, a % b)
    return g, y, x - (a // b) * y


class BranchExpansion:
    """Truncated local parametrization of the branch at a center point.

    ``u_series``/``w_series`` parametrize the chart-local coordinates
    (translated so the center is the origin); ``x_series``/``y_series`` are
    the global affine coordinates X/Z and Y/Z along the branch.
    """

    def __init__(self, curve, center, chart, u_series, w_series, prec, cert):
        self.curve = curve
        self.center = center
        self.chart = chart
        self.u_series = u_series
        self.w_series = w_series
        self.prec = prec
        self.cert = cert            # notes from the Newton polygon run
        ctx = curve.ctx
        u0, w0 = _chart_center(center, chart)
        a = u_series + LaurentSeries.const(ctx, u0, u_series.prec)
        b = w_series + LaurentSeries.const(ctx, w0, w_series.prec)
        if chart == 2:
            self.x_series, self.y_series = a, b
        elif chart == 1:
            binv = b.inverse()
            self.x_series, self.y_series = a * binv, binv
        else:
            binv = b.inverse()
            self.x_series, self.y_series = binv, a * binv

    def __repr__(self):
        return f"BranchExpansion(center={self.center}, chart={self.chart}, N={self.prec})"


class Place:
    """A point of the smooth model: a labeled branch of the plane curve."""

    def __init__(self, curve: PlaneCurve, center: ProjPoint, label: str, prec: int = 0):
        self.curve = curve
        self.center = center
        self.label = label
        self._cache = {}
        self._default_prec = prec or 4 * max(curve.degree, 1)

    def branch(self, prec: int | None = None) -> BranchExpansion:
        prec = prec or self._default_prec
        if prec not in self._cache:
            self._cache[prec] = branch_expand(self.curve, self.center, prec)
        return self._cache[prec]

    def __repr__(self):
        return f"Place({self.label} at {self.center})"

    def __eq__(self, other):
        return (isinstance(other, Place) and self.curve == other.curve
                and self.center == other.center)

    def __hash__(self):
        return hash((self.curve, self.center))


def _chart_center(center: ProjPoint, chart: int):
    ctx = center.ctx
    inv = ctx.inv(center.coords[chart])
    if chart == 2:
        return ctx.mul(center.coords[0], inv), ctx.mul(center.coords[1], inv)
    if chart == 1:
        return ctx.mul(center.coords[0], inv), ctx.mul(center.coords[2], inv)
    return ctx.mul(center.coords[1], inv), ctx.mul(center.coords[2], inv)


def _local_equation(curve: PlaneCurve, center: ProjPoint, chart: int) -> BiPoly:
    ctx = curve.ctx
    f = curve.form.dehomogenize(chart)
    u0, w0 = _chart_center(center, chart)
    return f.subst(BiPoly(ctx, {(1, 0): ctx.one, (0, 0): u0}),
                   BiPoly(ctx, {(0, 1): ctx.one, (0, 0): w0}))


def hensel_series(h: BiPoly, b0, prec: int) -> LaurentSeries:
    """Power series b(a) with h(a, b(a)) = 0, b(0) = b0, d h/d b (0,b0) a unit.

    Newton iteration on truncated series; quadratic convergence makes the
    precision doubling loop cheap.
    """
    ctx = h.ctx
    hb = h.derivative_y()
    t = LaurentSeries.t_power(ctx, 1, prec)
    b = LaurentSeries.const(ctx, b0, prec)
    dh0 = _eval_series(hb, t, b)
    if dh0.is_zero_to_prec() or dh0.valuation() != 0:
        raise BranchError("Hensel step needs a simple root")
    reached = 1
    while reached < prec:
        val = _eval_series(h, t, b)
        der = _eval_series(hb, t, b)
        b = (b - val * der.inverse()).truncate(prec)
        reached *= 2
    check = _eval_series(h, t, b)
    if not check.is_zero_to_prec():
        raise BranchError("Hensel iteration failed to converge")
    return b


def _eval_series(f: BiPoly, a: LaurentSeries, b: LaurentSeries) -> LaurentSeries:
    """Evaluate a bivariate polynomial on a pair of series (Horner in y)."""
    ctx = f.ctx
    prec = min(a.prec, b.prec)
    cols = f.coeffs_in_y()
    acc = None
    for u in reversed(cols):
        inner = None
        for c in reversed(u.coeffs):
            if inner is not None:
                inner = inner * a
            term = LaurentSeries.const(ctx, c, inner.prec if inner is not None else prec)
            inner = term if inner is None else inner + term
        if inner is None:
            inner = LaurentSeries.zero(ctx, prec)
        acc = inner if acc is None else acc * b + inner
    return acc if acc is not None else LaurentSeries.zero(ctx, prec)


def newton_polygon(h: BiPoly):
    """Lower-left Newton polygon edges of a polynomial vanishing at the origin.

    Returns a list of edges, each a list of consecutive lattice support
    points from the w-axis end to the u-axis end.
    """
    pts = sorted(h.terms.keys())
    if not pts:
        raise BranchError("zero polynomial has no Newton polygon")
    if (0, 0) in h.terms:
        raise BranchError("center is not on the curve")
    # lower hull of the support in the (i, j) plane, facing the origin
    pts_sorted = sorted(set(pts), key=lambda ij: (ij[0], ij[1]))
    hull = []
    for pnt in pts_sorted:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            cross = (x2 - x1) * (pnt[1] - y1) - (pnt[0] - x1) * (y2 - y1)
            if cross <= 0:
                hull.pop()
            else:
                break
        hull.append(pnt)
    # keep the strictly descending part, from min-i end to the first min-j point
    edges = []
    for a, b in zip(hull, hull[1:]):
        if b[1] < a[1]:
            edges.append((a, b))
        else:
            break
    if not edges:
        raise BranchError("no descending Newton polygon edge at this center")
    return edges


def _expand_at_origin(h: BiPoly, prec: int, depth: int = 0):
    """Parametrize the unique branch of h at (0, 0).

    Returns (u(t), w(t), cert_notes).  Raises MultibranchError when the
    polygon or its edge polynomial splits.
    """
    ctx = h.ctx
    if depth > 16:
        raise BranchError("Newton polygon recursion exceeded depth cap")
    lin_u = h.terms.get((1, 0), ctx.zero)
    lin_w = h.terms.get((0, 1), ctx.zero)
    if lin_w != ctx.zero:
        w = hensel_series(h, ctx.zero, prec)
        u = LaurentSeries.t_power(ctx, 1, prec)
        return u, w, [f"smooth center, Hensel in w (depth {depth})"]
    if lin_u != ctx.zero:
        u = hensel_series(h.swap_vars(), ctx.zero, prec)
        w = LaurentSeries.t_power(ctx, 1, prec)
        return u, w, [f"smooth center, Hensel in u (depth {depth})"]

    edges = newton_polygon(h)
    if len(edges) > 1:
        raise MultibranchError(f"{len(edges)} Newton polygon edges at center")
    (i0, j0), (i1, j1) = edges[0]
    di, dj = i1 - i0, j0 - j1
    g = _gcd_int(di, dj)
    delta_i, delta_j = di // g, dj // g
    L = g
    # edge polynomial psi(z) = sum_l c_(P0 + l*(delta_i, -delta_j)) z^(L - l)
    psi = [ctx.zero] * (L + 1)
    for l in range(L + 1):
        c = h.terms.get((i0 + l * delta_i, j0 - l * delta_j), ctx.zero)
        psi[L - l] = c
    psi_poly = UniPoly(ctx, psi)
    roots = find_roots(psi_poly)
    if not roots:
        raise BranchError("edge polynomial has no root in the working field; extend")
    if len(roots) > 1:
        raise MultibranchError("edge polynomial has several distinct roots")
    s0 = roots[0]
    if s0 == ctx.zero:
        raise BranchError("unexpected zero root of edge polynomial")

    # unimodular substitution u = t^delta_j s^A, w = t^delta_i s^B
    gg, B, negA = _ext_gcd_int(delta_j, delta_i)
    A = -negA
    assert delta_j * B - delta_i * A == 1
    nu = min(i * delta_j + j * delta_i for (i, j) in h.terms)
    fexps = [i * A + j * B for (i, j) in h.terms]
    mu = min(fexps)
    terms = {}
    for (i, j), c in h.terms.items():
        key = (i * delta_j + j * delta_i - nu, i * A + j * B - mu)
        terms[key] = ctx.add(terms.get(key, ctx.zero), c)
    h1 = BiPoly(ctx, terms)

    # simple root: finish with Hensel on s(t); multiple root: recurse
    h1_at0 = UniPoly(ctx, [h1.terms.get((0, j), ctx.zero)
                           for j in range(h1.deg_y() + 1)])
    mult = root_multiplicity(h1_at0, s0)
    cert = [f"single edge ({i0},{j0})->({i1},{j1}), lattice length {L}, "
            f"root multiplicity {mult} (depth {depth})"]
    inner_prec = prec + abs(nu) + L * (abs(A) + abs(B)) + 4
    if mult == 1:
        shifted = h1.subst(BiPoly(ctx, {(1, 0): ctx.one}),
                           BiPoly(ctx, {(0, 1): ctx.one, (0, 0): s0}))
        sser = hensel_series(shifted, ctx.zero, inner_prec) + \
            LaurentSeries.const(ctx, s0, inner_prec)
        t_u, t_w = LaurentSeries.t_power(ctx, delta_j, inner_prec + delta_j), \
            LaurentSeries.t_power(ctx, delta_i, inner_prec + delta_i)
        u = t_u * sser.pow(A)
        w = t_w * sser.pow(B)
        return u.truncate(prec + delta_j), w.truncate(prec + delta_i), cert
    h2 = h1.subst(BiPoly(ctx, {(1, 0): ctx.one}),
                  BiPoly(ctx, {(0, 1): ctx.one, (0, 0): s0}))
    t_in, s_in, sub_cert = _expand_at_origin(h2, inner_prec, depth + 1)
    sser = s_in + LaurentSeries.const(ctx, s0, s_in.prec)
    u = t_in.pow(delta_j) * sser.pow(A)
    w = t_in.pow(delta_i) * sser.pow(B)
    return u.truncate(prec), w.truncate(prec), cert + sub_cert


def _gcd_int(a, b):
    while b:
        a, b = b, a % b
    return a


def branch_expand(curve: PlaneCurve, center: ProjPoint, prec: int | None = None) -> BranchExpansion:
    """Truncated branch parametrization at a unibranch center.

    Deterministic in (curve, center, prec); raises MultibranchError for
    centers with several branches and BranchError when the curve does not
    pass through the center.
    """
    ctx = curve.ctx
    if prec is None:
        prec = 4 * max(curve.degree, 1)
    if not curve.contains(center):
        raise BranchError(f"center {center} not on curve")
    chart = center.last_nonzero()
    h = _local_equation(curve, center, chart)
    u, w, cert = _expand_at_origin(h, prec)
    res = _eval_series(h, u, w)
    if not res.is_zero_to_prec():
        raise BranchError("parametrization does not satisfy the curve equation")
    return BranchExpansion(curve, center, chart, u, w, prec, cert)


# ---------------------------------------------------------------------------
# valuations and intersection multiplicities
# ---------------------------------------------------------------------------

MAX_PRECISION_FACTOR = 64


def valuation(place: Place, f, prec: int | None = None) -> int:
    """Order of vanishing of a function-field element along the branch.

    ``f`` is an FFElem on the place's curve.  Doubles precision until the
    computed order is stable across two successive precisions.
    """
    if f.is_zero():
        raise BranchError("valuation of the zero function")
    num, den = f.as_num_den()
    curve = place.curve
    n = prec or 4 * max(curve.degree, 1)
    cap = MAX_PRECISION_FACTOR * max(curve.degree, 1) * 8
    prev = None
    while n <= cap:
        br = place.branch(n)
        vn = _series_ord(num, br)
        vd = _series_ord(den_bipoly(den, curve), br)
        if vn is not None and vd is not None:
            v = vn - vd
            if prev == v:
                return v
            prev = v
        else:
            prev = None
        n *= 2
    raise BranchError("valuation did not stabilize below the precision cap")


def den_bipoly(den: UniPoly, curve) -> BiPoly:
    return BiPoly.from_uni_x(den)


def _series_ord(poly: BiPoly, br: BranchExpansion):
    s = _eval_series(poly, br.x_series, br.y_series)
    return s.valuation()


def series_of(poly: BiPoly, br: BranchExpansion) -> LaurentSeries:
    return _eval_series(poly, br.x_series, br.y_series)


def intersection_multiplicity(curve: PlaneCurve, line: TernaryForm, point: ProjPoint,
                              prec: int | None = None) -> int:
    """Intersection multiplicity of the curve and a line at a unibranch point."""
    ctx = curve.ctx
    if line.degree != 1:
        raise BranchError("second form must be a line")
    if not curve.contains(point):
        raise BranchError("point not on the curve")
    if line.eval(*point.coords) != ctx.zero:
        raise BranchError("point not on the line")
    n = prec or 4 * max(curve.degree, 1)
    cap = MAX_PRECISION_FACTOR * max(curve.degree, 1) * 8
    prev = None
    while n <= cap:
        br = branch_expand(curve, point, n)
        lam = line.dehomogenize(br.chart)
        s = _eval_series(lam, *_chart_series(br))
        v = s.valuation()
        if v is not None:
            if prev == v:
                return v
            prev = v
        n *= 2
    raise BranchError("intersection multiplicity did not stabilize")


def _chart_series(br: BranchExpansion):
    ctx = br.curve.ctx
    u0, w0 = _chart_center(br.center, br.chart)
    a = br.u_series + LaurentSeries.const(ctx, u0, br.u_series.prec)
    b = br.w_series + LaurentSeries.const(ctx, w0, br.w_series.prec)
    return a, b


def evaluate_map_at_branch(components, br: BranchExpansion) -> ProjPoint:
    """Limit point of a projective map (three BiPolys in x, y) along a branch."""
    ctx = br.curve.ctx
    series = [_eval_series(c, br.x_series, br.y_series) for c in components]
    vals = [s.valuation() for s in series]
    if all(v is None for v in vals):
        raise BranchError("map components all vanish to precision along branch")
    mu = min(v for v in vals if v is not None)
    coords = []
    for s, v in zip(series, vals):
        if v is None or v > mu:
            coords.append(ctx.zero)
        else:
            coords.append(s.leading())
    return ProjPoint(ctx, coords)
