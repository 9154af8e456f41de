"""Exact univariate and bivariate polynomial arithmetic over a FieldCtx.

Univariate polynomials are dense coefficient lists (raw field values,
little-endian); bivariate polynomials are sparse ``{(i, j): coeff}`` maps
for monomials x^i y^j.  This is the elimination kernel: gcds, Sylvester
resultants and squarefree parts with the characteristic-p corner cases
(p-th power coefficients) handled exactly.
"""

from __future__ import annotations

from .fields import FieldCtx


class PolyError(ValueError):
    pass


class UniPoly:
    """Dense univariate polynomial; leading coefficient nonzero unless zero."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: FieldCtx, coeffs):
        self.ctx = ctx
        coeffs = list(coeffs)
        while coeffs and coeffs[-1] == ctx.zero:
            coeffs.pop()
        self.coeffs = coeffs

    # -- constructors --------------------------------------------------

    @classmethod
    def zero(cls, ctx):
        return cls(ctx, [])

    @classmethod
    def const(cls, ctx, c):
        return cls(ctx, [c])

    @classmethod
    def x(cls, ctx):
        return cls(ctx, [ctx.zero, ctx.one])

    @classmethod
    def from_ints(cls, ctx, ints):
        return cls(ctx, [ctx.from_base(c) for c in ints])

    # -- basics ---------------------------------------------------------

    def is_zero(self):
        return not self.coeffs

    def degree(self):
        return len(self.coeffs) - 1

    def lc(self):
        if not self.coeffs:
            return self.ctx.zero
        return self.coeffs[-1]

    def __eq__(self, other):
        return (isinstance(other, UniPoly) and self.ctx == other.ctx
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.ctx, tuple(self.coeffs)))

    def __repr__(self):
        if self.is_zero():
            return "UniPoly(0)"
        terms = [f"{self.ctx.to_int(c)}*x^{i}" for i, c in enumerate(self.coeffs) if c != self.ctx.zero]
        return "UniPoly(" + " + ".join(terms) + ")"

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        ctx = self.ctx
        a, b = self.coeffs, other.coeffs
        out = []
        for i in range(n):
            x = a[i] if i < len(a) else ctx.zero
            y = b[i] if i < len(b) else ctx.zero
            out.append(ctx.add(x, y))
        return UniPoly(ctx, out)

    def __neg__(self):
        return UniPoly(self.ctx, [self.ctx.neg(c) for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        ctx = self.ctx
        if isinstance(other, UniPoly):
            if self.is_zero() or other.is_zero():
                return UniPoly.zero(ctx)
            out = [ctx.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                if a != ctx.zero:
                    for j, b in enumerate(other.coeffs):
                        if b != ctx.zero:
                            out[i + j] = ctx.add(out[i + j], ctx.mul(a, b))
            return UniPoly(ctx, out)
        return UniPoly(ctx, [ctx.mul(c, other) for c in self.coeffs])

    def scale(self, c):
        return UniPoly(self.ctx, [self.ctx.mul(a, c) for a in self.coeffs])

    def shift(self, n):
        """Multiply by x^n."""
        if self.is_zero():
            return self
        return UniPoly(self.ctx, [self.ctx.zero] * n + self.coeffs)

    def monic(self):
        if self.is_zero():
            return self
        inv = self.ctx.inv(self.lc())
        return self.scale(inv)

    def divmod(self, other):
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        ctx = self.ctx
        rem = list(self.coeffs)
        db = other.degree()
        inv = ctx.inv(other.lc())
        if len(rem) - 1 < db:
            return UniPoly.zero(ctx), UniPoly(ctx, rem)
        quot = [ctx.zero] * (len(rem) - db)
        for i in range(len(rem) - 1, db - 1, -1):
            c = rem[i]
            if c == ctx.zero:
                continue
            q = ctx.mul(c, inv)
            quot[i - db] = q
            for j in range(db + 1):
                rem[i - db + j] = ctx.sub(rem[i - db + j], ctx.mul(q, other.coeffs[j]))
        return UniPoly(ctx, quot), UniPoly(ctx, rem)

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def mulmod(self, other, mod):
        return (self * other) % mod

    def powmod(self, e, mod):
        r = UniPoly.const(self.ctx, self.ctx.one)
        b = self % mod
        while e:
            if e & 1:
                r = r.mulmod(b, mod)
            b = b.mulmod(b, mod)
            e >>= 1
        return r

    def pow(self, e):
        r = UniPoly.const(self.ctx, self.ctx.one)
        b = self
        while e:
            if e & 1:
                r = r * b
            b = b * b
            e >>= 1
        return r

    def eval(self, a):
        ctx = self.ctx
        acc = ctx.zero
        for c in reversed(self.coeffs):
            acc = ctx.add(ctx.mul(acc, a), c)
        return acc

    def derivative(self):
        ctx = self.ctx
        out = []
        for i in range(1, len(self.coeffs)):
            out.append(ctx.mul(self.coeffs[i], ctx.from_base(i)))
        return UniPoly(ctx, out)

    def compose_linear(self, a, b):
        """Evaluate at (a*x + b): used for deterministic shears."""
        ctx = self.ctx
        lin = UniPoly(ctx, [b, a])
        acc = UniPoly.zero(ctx)
        for c in reversed(self.coeffs):
            acc = acc * lin + UniPoly.const(ctx, c)
        return acc

    def map_coeffs(self, fn, new_ctx=None):
        return UniPoly(new_ctx or self.ctx, [fn(c) for c in self.coeffs])


def uni_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    while not b.is_zero():
        a, b = b, a % b
    if a.is_zero():
        return a
    return a.monic()


def uni_lcm(a: UniPoly, b: UniPoly) -> UniPoly:
    if a.is_zero() or b.is_zero():
        return UniPoly.zero(a.ctx)
    return ((a * b) // uni_gcd(a, b)).monic()


def uni_ext_gcd(a: UniPoly, b: UniPoly):
    """(g, s, t) with s*a + t*b = g, g monic (or zero)."""
    ctx = a.ctx
    one = UniPoly.const(ctx, ctx.one)
    zero = UniPoly.zero(ctx)
    r0, r1 = a, b
    s0, s1 = one, zero
    t0, t1 = zero, one
    while not r1.is_zero():
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero():
        return r0, s0, t0
    inv = ctx.inv(r0.lc())
    return r0.scale(inv), s0.scale(inv), t0.scale(inv)


def root_multiplicity(f: UniPoly, r) -> int:
    """Multiplicity of r as a root of f (0 if not a root)."""
    ctx = f.ctx
    mult = 0
    lin = UniPoly(ctx, [ctx.neg(r), ctx.one])
    while not f.is_zero():
        q, rem = f.divmod(lin)
        if not rem.is_zero():
            break
        mult += 1
        f = q
    return mult


def uni_pth_root(f: UniPoly) -> UniPoly:
    """p-th root of a polynomial that is a p-th power (perfect base field)."""
    ctx = f.ctx
    p = ctx.p
    out = [ctx.zero] * (f.degree() // p + 1)
    for i, c in enumerate(f.coeffs):
        if c != ctx.zero:
            if i % p:
                raise PolyError("polynomial is not a p-th power")
            out[i // p] = ctx.pth_root(c)
    return UniPoly(ctx, out)


def squarefree_part(f: UniPoly) -> UniPoly:
    """Product of the distinct irreducible factors of f, monic.

    Handles the inseparable case f = g(x^p) by recursing on p-th roots.
    """
    if f.is_zero():
        raise PolyError("zero polynomial")
    if f.degree() == 0:
        return UniPoly.const(f.ctx, f.ctx.one)
    fp = f.derivative()
    if fp.is_zero():
        return squarefree_part(uni_pth_root(f))
    d = uni_gcd(f, fp)
    w = (f // d).monic()          # product of factors with exponent prime to p
    # strip every factor of w from d, what remains is a p-th power part
    rest = d
    g = uni_gcd(rest, w)
    while g.degree() > 0:
        rest = (rest // g).monic()
        g = uni_gcd(rest, w)
    if rest.degree() == 0:
        return w
    return uni_lcm(w, squarefree_part(uni_pth_root(rest))).monic()


# ---------------------------------------------------------------------------
# bivariate polynomials
# ---------------------------------------------------------------------------

class BiPoly:
    """Sparse bivariate polynomial, monomial map (i, j) -> coeff for x^i y^j."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: FieldCtx, terms):
        self.ctx = ctx
        if isinstance(terms, dict):
            items = terms.items()
        else:
            items = terms
        clean = {}
        for (i, j), c in items:
            if c != ctx.zero:
                key = (i, j)
                if key in clean:
                    c = ctx.add(clean[key], c)
                    if c == ctx.zero:
                        del clean[key]
                        continue
                clean[key] = c
        self.terms = clean

    # -- constructors ----------------------------------------------------

    @classmethod
    def zero(cls, ctx):
        return cls(ctx, {})

    @classmethod
    def const(cls, ctx, c):
        return cls(ctx, {(0, 0): c})

    @classmethod
    def x(cls, ctx):
        return cls(ctx, {(1, 0): ctx.one})

    @classmethod
    def y(cls, ctx):
        return cls(ctx, {(0, 1): ctx.one})

    @classmethod
    def from_int_terms(cls, ctx, int_terms):
        return cls(ctx, {ij: ctx.from_base(c) for ij, c in int_terms.items()})

    # -- basics -----------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def total_degree(self):
        if not self.terms:
            return -1
        return max(i + j for i, j in self.terms)

    def deg_x(self):
        if not self.terms:
            return -1
        return max(i for i, _ in self.terms)

    def deg_y(self):
        if not self.terms:
            return -1
        return max(j for _, j in self.terms)

    def __eq__(self, other):
        return (isinstance(other, BiPoly) and self.ctx == other.ctx
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.ctx, frozenset(self.terms.items())))

    def __repr__(self):
        if self.is_zero():
            return "BiPoly(0)"
        parts = [f"{self.ctx.to_int(c)}*x^{i}*y^{j}"
                 for (i, j), c in sorted(self.terms.items())]
        return "BiPoly(" + " + ".join(parts) + ")"

    def __add__(self, other):
        ctx = self.ctx
        out = dict(self.terms)
        for key, c in other.terms.items():
            if key in out:
                s = ctx.add(out[key], c)
                if s == ctx.zero:
                    del out[key]
                else:
                    out[key] = s
            else:
                out[key] = c
        res = BiPoly.__new__(BiPoly)
        res.ctx = ctx
        res.terms = out
        return res

    def __neg__(self):
        res = BiPoly.__new__(BiPoly)
        res.ctx = self.ctx
        res.terms = {k: self.ctx.neg(c) for k, c in self.terms.items()}
        return res

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        ctx = self.ctx
        if isinstance(other, BiPoly):
            out = {}
            for (i1, j1), c1 in self.terms.items():
                for (i2, j2), c2 in other.terms.items():
                    key = (i1 + i2, j1 + j2)
                    v = ctx.mul(c1, c2)
                    if key in out:
                        s = ctx.add(out[key], v)
                        if s == ctx.zero:
                            del out[key]
                        else:
                            out[key] = s
                    else:
                        out[key] = v
            res = BiPoly.__new__(BiPoly)
            res.ctx = ctx
            res.terms = out
            return res
        res = BiPoly.__new__(BiPoly)
        res.ctx = ctx
        res.terms = {}
        for key, c in self.terms.items():
            v = ctx.mul(c, other)
            if v != ctx.zero:
                res.terms[key] = v
        return res

    def pow(self, e):
        r = BiPoly.const(self.ctx, self.ctx.one)
        b = self
        while e:
            if e & 1:
                r = r * b
            b = b * b
            e >>= 1
        return r

    def eval(self, xv, yv):
        # Horner in y with cached powers of x
        ctx = self.ctx
        by_j = {}
        for (i, j), c in self.terms.items():
            by_j.setdefault(j, []).append((i, c))
        xpow = {0: ctx.one}
        dx = self.deg_x()
        cur = ctx.one
        for i in range(1, dx + 1):
            cur = ctx.mul(cur, xv)
            xpow[i] = cur
        acc = ctx.zero
        for j in range(max(by_j) + 1 if by_j else 0, -1, -1):
            acc = ctx.mul(acc, yv)
            for i, c in by_j.get(j, ()):
                acc = ctx.add(acc, ctx.mul(c, xpow[i]))
        return acc

    def eval_y(self, yv) -> UniPoly:
        """Specialize y, returning a univariate polynomial in x."""
        ctx = self.ctx
        out = [ctx.zero] * (self.deg_x() + 1)
        for (i, j), c in self.terms.items():
            out[i] = ctx.add(out[i], ctx.mul(c, ctx.pow_(yv, j)))
        return UniPoly(ctx, out)

    def eval_x(self, xv) -> UniPoly:
        ctx = self.ctx
        out = [ctx.zero] * (self.deg_y() + 1)
        for (i, j), c in self.terms.items():
            out[j] = ctx.add(out[j], ctx.mul(c, ctx.pow_(xv, i)))
        return UniPoly(ctx, out)

    def coeffs_in_y(self) -> list:
        """List of UniPoly in x: coefficient of y^j at index j."""
        ctx = self.ctx
        dy = self.deg_y()
        rows = [dict() for _ in range(dy + 1)]
        for (i, j), c in self.terms.items():
            rows[j][i] = c
        out = []
        for row in rows:
            if row:
                n = max(row) + 1
                out.append(UniPoly(ctx, [row.get(i, ctx.zero) for i in range(n)]))
            else:
                out.append(UniPoly.zero(ctx))
        return out

    def coeffs_in_x(self) -> list:
        ctx = self.ctx
        dx = self.deg_x()
        rows = [dict() for _ in range(dx + 1)]
        for (i, j), c in self.terms.items():
            rows[i][j] = c
        out = []
        for row in rows:
            if row:
                n = max(row) + 1
                out.append(UniPoly(ctx, [row.get(j, ctx.zero) for j in range(n)]))
            else:
                out.append(UniPoly.zero(ctx))
        return out

    @classmethod
    def from_coeffs_in_y(cls, ctx, unis):
        terms = {}
        for j, u in enumerate(unis):
            for i, c in enumerate(u.coeffs):
                if c != ctx.zero:
                    terms[(i, j)] = c
        return cls(ctx, terms)

    @classmethod
    def from_uni_x(cls, u: UniPoly):
        return cls(u.ctx, {(i, 0): c for i, c in enumerate(u.coeffs) if c != u.ctx.zero})

    @classmethod
    def from_uni_y(cls, u: UniPoly):
        return cls(u.ctx, {(0, j): c for j, c in enumerate(u.coeffs) if c != u.ctx.zero})

    def subst(self, px: "BiPoly", py: "BiPoly") -> "BiPoly":
        """Substitute x -> px, y -> py (both BiPoly)."""
        ctx = self.ctx
        acc = BiPoly.zero(ctx)
        # Horner over y, inner Horner over x
        cols = self.coeffs_in_y()
        for u in reversed(cols):
            inner = BiPoly.zero(ctx)
            for c in reversed(u.coeffs):
                inner = inner * px + BiPoly.const(ctx, c)
            acc = acc * py + inner
        return acc

    def swap_vars(self):
        return BiPoly(self.ctx, {(j, i): c for (i, j), c in self.terms.items()})

    def map_coeffs(self, fn, new_ctx=None):
        return BiPoly(new_ctx or self.ctx, {k: fn(c) for k, c in self.terms.items()})

    def derivative_x(self):
        ctx = self.ctx
        return BiPoly(ctx, {(i - 1, j): ctx.mul(c, ctx.from_base(i))
                            for (i, j), c in self.terms.items() if i})

    def derivative_y(self):
        ctx = self.ctx
        return BiPoly(ctx, {(i, j - 1): ctx.mul(c, ctx.from_base(j))
                            for (i, j), c in self.terms.items() if j})


# ---------------------------------------------------------------------------
# content, primitive parts and gcds of bivariate polynomials (w.r.t. y)
# ---------------------------------------------------------------------------

def content_y(f: BiPoly) -> UniPoly:
    """gcd in K[x] of the coefficients of f viewed in K[x][y]."""
    g = UniPoly.zero(f.ctx)
    for u in f.coeffs_in_y():
        if not u.is_zero():
            g = uni_gcd(g, u) if not g.is_zero() else u.monic()
            if g.degree() == 0:
                break
    return g if not g.is_zero() else UniPoly.zero(f.ctx)


def divide_content_y(f: BiPoly, c: UniPoly) -> BiPoly:
    cols = [u // c if not u.is_zero() else u for u in f.coeffs_in_y()]
    return BiPoly.from_coeffs_in_y(f.ctx, cols)


def primitive_part_y(f: BiPoly) -> BiPoly:
    if f.is_zero():
        return f
    c = content_y(f)
    if c.degree() <= 0:
        return f
    return divide_content_y(f, c)


def _pseudo_rem_y(a: BiPoly, b: BiPoly) -> BiPoly:
    """Pseudo-remainder of a by b in K[x][y] (b's y-leading coeff scaling)."""
    ctx = a.ctx
    db = b.deg_y()
    lb = b.coeffs_in_y()[db]
    lb_b = BiPoly.from_uni_x(lb)
    r = a
    while not r.is_zero() and r.deg_y() >= db:
        dr = r.deg_y()
        lr = r.coeffs_in_y()[dr]
        shift = BiPoly(ctx, {(i, dr - db): c for i, c in enumerate(lr.coeffs)
                             if c != ctx.zero})
        r = r * lb_b - b * shift
        if not r.is_zero() and r.deg_y() == dr:
            raise PolyError("pseudo-division failed to reduce degree")
    return r


def bi_gcd_y(a: BiPoly, b: BiPoly) -> BiPoly:
    """gcd of bivariate polynomials via a primitive PRS in K[x][y]."""
    ctx = a.ctx
    if a.is_zero():
        return b
    if b.is_zero():
        return a
    ca, cb = content_y(a), content_y(b)
    cg = uni_gcd(ca, cb) if not (ca.is_zero() or cb.is_zero()) else UniPoly.const(ctx, ctx.one)
    pa, pb = primitive_part_y(a), primitive_part_y(b)
    if pa.deg_y() < pb.deg_y():
        pa, pb = pb, pa
    while True:
        if pb.is_zero():
            g = pa
            break
        if pb.deg_y() == 0:
            g = BiPoly.const(ctx, ctx.one)
            break
        r = _pseudo_rem_y(pa, pb)
        pa, pb = pb, primitive_part_y(r) if not r.is_zero() else r
    g = primitive_part_y(g)
    out = g * BiPoly.from_uni_x(cg)
    # normalize: leading coefficient (lex on (j, i)) made 1
    lead = max(out.terms, key=lambda ij: (ij[1], ij[0]))
    return out * ctx.inv(out.terms[lead])


def bi_gcd_many(polys) -> BiPoly:
    polys = [p for p in polys if not p.is_zero()]
    if not polys:
        raise PolyError("gcd of zero polynomials")
    g = polys[0]
    for q in polys[1:]:
        if g.total_degree() == 0:
            break
        if g.deg_y() == 0 and q.deg_y() == 0:
            g = BiPoly.from_uni_x(uni_gcd(g.coeffs_in_y()[0], q.coeffs_in_y()[0]))
        else:
            g = bi_gcd_y(g, q)
    return g


def bi_divides(d: BiPoly, f: BiPoly) -> bool:
    """True iff d divides f, by pseudo-division in K[x][y] (d nonzero)."""
    if f.is_zero():
        return True
    if d.is_zero():
        return False
    if d.deg_y() == 0:
        cols = f.coeffs_in_y()
        du = d.coeffs_in_y()[0]
        return all(u.is_zero() or (u % du).is_zero() for u in cols)
    r = _pseudo_rem_y(f, d)
    if r.is_zero():
        # lc^k * f = q*d; d primitive in y divides f up to content
        return True
    return False


def bi_exact_div(f: BiPoly, d: BiPoly) -> BiPoly:
    """Exact division f/d in K[x,y]; raises PolyError if not exact.

    Performed in K(x)[y] with rational-function coefficients, then cleared.
    """
    from .funcfield import RatFunc  # late import: RatFunc lives with K(x) tools
    ctx = f.ctx
    if d.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    if d.deg_y() == 0:
        du = d.coeffs_in_y()[0]
        cols = []
        for u in f.coeffs_in_y():
            if u.is_zero():
                cols.append(u)
                continue
            q, r = u.divmod(du)
            if not r.is_zero():
                raise PolyError("not an exact division")
            cols.append(q)
        return BiPoly.from_coeffs_in_y(ctx, cols)
    fc = [RatFunc.from_poly(u) for u in f.coeffs_in_y()]
    dc = [RatFunc.from_poly(u) for u in d.coeffs_in_y()]
    # long division in y over K(x)
    qd = len(fc) - len(dc)
    if qd < 0:
        raise PolyError("not an exact division")
    quot = [RatFunc.zero(ctx) for _ in range(qd + 1)]
    rem = list(fc)
    dlead = dc[-1]
    for i in range(len(rem) - 1, len(dc) - 2, -1):
        c = rem[i]
        if c.is_zero():
            continue
        q = c / dlead
        quot[i - (len(dc) - 1)] = q
        for j in range(len(dc)):
            rem[i - (len(dc) - 1) + j] = rem[i - (len(dc) - 1) + j] - q * dc[j]
    if any(not r.is_zero() for r in rem):
        raise PolyError("not an exact division")
    # clear denominators; must come out polynomial for an exact division
    den = UniPoly.const(ctx, ctx.one)
    for q in quot:
        den = uni_lcm(den, q.den) if not q.is_zero() else den
    cols = []
    for q in quot:
        if q.is_zero():
            cols.append(UniPoly.zero(ctx))
        else:
            cols.append(q.num * (den // q.den))
    if den.degree() > 0:
        raise PolyError("not an exact division")
    inv = ctx.inv(den.coeffs[0])
    cols = [u.scale(inv) for u in cols]
    return BiPoly.from_coeffs_in_y(ctx, cols)


def bi_squarefree_y(f: BiPoly) -> BiPoly:
    """Squarefree part of a bivariate polynomial (radical up to scalar)."""
    ctx = f.ctx
    if f.is_zero():
        raise PolyError("zero polynomial")
    cont = content_y(f)
    pp = primitive_part_y(f)
    out = BiPoly.from_uni_x(squarefree_part(cont)) if cont.degree() > 0 else BiPoly.const(ctx, ctx.one)
    if pp.deg_y() == 0:
        return out
    dfy = pp.derivative_y()
    if dfy.is_zero():
        # pp is a polynomial in y^p with p-th power coefficients
        p = ctx.p
        terms = {}
        for (i, j), c in pp.terms.items():
            if j % p or i % p:
                # mixed case: take gcd route via derivative in x instead
                dfx = pp.derivative_x()
                if dfx.is_zero():
                    raise PolyError("inseparable in both variables unexpectedly")
                g = bi_gcd_y(pp, dfx)
                return out * bi_squarefree_y(_bi_quotient(pp, g))
            terms[(i // p, j // p)] = ctx.pth_root(c)
        return out * bi_squarefree_y(BiPoly(ctx, terms))
    g = bi_gcd_y(pp, dfy)
    if g.total_degree() == 0:
        return out * pp
    return out * bi_squarefree_y(_bi_quotient(pp, g))


def _bi_quotient(f: BiPoly, g: BiPoly) -> BiPoly:
    return bi_exact_div(f, g)


# ---------------------------------------------------------------------------
# resultants
# ---------------------------------------------------------------------------

def sylvester_det_field(rows, ctx):
    """Determinant of a square matrix of raw field values (Gaussian)."""
    n = len(rows)
    m = [list(r) for r in rows]
    det = ctx.one
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] != ctx.zero), None)
        if piv is None:
            return ctx.zero
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = ctx.neg(det)
        det = ctx.mul(det, m[c][c])
        inv = ctx.inv(m[c][c])
        for i in range(c + 1, n):
            if m[i][c] != ctx.zero:
                f = ctx.mul(m[i][c], inv)
                m[i] = [ctx.sub(x, ctx.mul(f, y)) for x, y in zip(m[i], m[c])]
    return det


def resultant_uni(f: UniPoly, g: UniPoly):
    """Resultant of two univariate polynomials (raw field value)."""
    ctx = f.ctx
    if f.is_zero() or g.is_zero():
        return ctx.zero
    n, m = f.degree(), g.degree()
    if n == 0:
        return ctx.pow_(f.coeffs[0], m)
    if m == 0:
        return ctx.pow_(g.coeffs[0], n)
    size = n + m
    rows = []
    fc = list(reversed(f.coeffs))
    gc = list(reversed(g.coeffs))
    for i in range(m):
        rows.append([ctx.zero] * i + fc + [ctx.zero] * (size - n - 1 - i))
    for i in range(n):
        rows.append([ctx.zero] * i + gc + [ctx.zero] * (size - m - 1 - i))
    return sylvester_det_field(rows, ctx)


def resultant_bi(f: BiPoly, g: BiPoly, eliminate: str = "y") -> BiPoly:
    """Sylvester resultant of f and g w.r.t. one variable.

    The result is returned as a BiPoly in the remaining variable only
    (y-degree 0 if eliminating y).  Computed by evaluation-interpolation:
    the remaining variable is specialized at enough points, the univariate
    resultants are computed over the field, and the answer is recovered by
    Lagrange interpolation.  Falls back to an extension field if the base
    field is too small to supply distinct sample points.
    """
    if eliminate == "x":
        r = resultant_bi(f.swap_vars(), g.swap_vars(), "y")
        return r.swap_vars()
    ctx = f.ctx
    if f.is_zero() or g.is_zero():
        raise PolyError("resultant of a zero polynomial")
    dyf, dyg = f.deg_y(), g.deg_y()
    if dyf == 0 or dyg == 0:
        raise PolyError("degree-zero input in the eliminated variable")
    # degree bound of Res_y(f, g) in x
    bound = f.deg_x() * dyg + g.deg_x() * dyf
    npts = bound + 1
    if ctx.order < npts:
        raise PolyError("field too small for resultant interpolation; extend first")
    fcols = f.coeffs_in_y()
    gcols = g.coeffs_in_y()
    xs, vals = [], []
    for n in range(npts):
        xv = ctx.from_int(n)
        fspec = [u.eval(xv) for u in fcols]
        gspec = [u.eval(xv) for u in gcols]
        xs.append(xv)
        vals.append(_sylvester_det_fixed(ctx, fspec, gspec, dyf, dyg))
    poly = _lagrange(ctx, xs, vals)
    return BiPoly.from_uni_x(poly)


def _sylvester_det_fixed(ctx, fspec, gspec, dyf, dyg):
    """Sylvester determinant with the generic (dyf, dyg) shape.

    Leading coefficients are allowed to vanish at the sample point; the
    matrix shape stays that of the bivariate degrees, which is what makes
    the determinant agree with the resultant polynomial evaluated there.
    """
    size = dyf + dyg
    fc = list(reversed(fspec))
    gc = list(reversed(gspec))
    rows = []
    for i in range(dyg):
        rows.append([ctx.zero] * i + fc + [ctx.zero] * (size - dyf - 1 - i))
    for i in range(dyf):
        rows.append([ctx.zero] * i + gc + [ctx.zero] * (size - dyg - 1 - i))
    return sylvester_det_field(rows, ctx)


def _lagrange(ctx, xs, vals) -> UniPoly:
    n = len(xs)
    # Newton's divided differences, exact over the field
    coef = list(vals)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            num = ctx.sub(coef[i], coef[i - 1])
            den = ctx.sub(xs[i], xs[i - j])
            coef[i] = ctx.div(num, den)
    poly = UniPoly.zero(ctx)
    for i in range(n - 1, -1, -1):
        poly = poly * UniPoly(ctx, [ctx.neg(xs[i]), ctx.one]) + UniPoly.const(ctx, coef[i])
    return poly


def resultant(f: BiPoly, g: BiPoly, eliminate: str = "y") -> UniPoly:
    """Resultant as a univariate polynomial in the surviving variable."""
    r = resultant_bi(f, g, eliminate)
    if eliminate == "y":
        cols = r.coeffs_in_y()
        return cols[0] if cols else UniPoly.zero(f.ctx)
    cols = r.coeffs_in_x()
    return cols[0] if cols else UniPoly.zero(f.ctx)


def resultant_y_param(fterms: dict, gterms: dict, ctx) -> BiPoly:
    """Res_y of polynomials in (x, y, T), T a transcendental parameter.

    Terms are ``{(i, j, k): coeff}`` for x^i y^j T^k.  Eliminates y and
    returns the result as a BiPoly whose x-slot is x and whose y-slot is T.
    Uses a sample grid with the fixed generic Sylvester shape; raises
    PolyError when the field has too few sample values (extend and retry).
    """
    dyf = max(j for (_, j, _) in fterms)
    dyg = max(j for (_, j, _) in gterms)
    if dyf == 0 or dyg == 0:
        raise PolyError("degree-zero input in the eliminated variable")
    dxf = max(i for (i, _, _) in fterms)
    dxg = max(i for (i, _, _) in gterms)
    dtf = max(k for (_, _, k) in fterms)
    dtg = max(k for (_, _, k) in gterms)
    bx = dxf * dyg + dxg * dyf
    bt = dtf * dyg + dtg * dyf
    if ctx.order < max(bx, bt) + 1:
        raise PolyError("field too small for parameterized resultant; extend first")
    xs = [ctx.from_int(n) for n in range(bx + 1)]
    ts = [ctx.from_int(n) for n in range(bt + 1)]
    cols = []
    for tv in ts:
        vals = []
        tpow = [ctx.one]
        for _ in range(max(dtf, dtg)):
            tpow.append(ctx.mul(tpow[-1], tv))
        for xv in xs:
            xpow = [ctx.one]
            for _ in range(max(dxf, dxg)):
                xpow.append(ctx.mul(xpow[-1], xv))
            fspec = [ctx.zero] * (dyf + 1)
            for (i, j, k), c in fterms.items():
                fspec[j] = ctx.add(fspec[j], ctx.mul(c, ctx.mul(xpow[i], tpow[k])))
            gspec = [ctx.zero] * (dyg + 1)
            for (i, j, k), c in gterms.items():
                gspec[j] = ctx.add(gspec[j], ctx.mul(c, ctx.mul(xpow[i], tpow[k])))
            vals.append(_sylvester_det_fixed(ctx, fspec, gspec, dyf, dyg))
        cols.append(_lagrange(ctx, xs, vals))
    # interpolate each x-coefficient across the T samples
    out = {}
    max_xdeg = max((c.degree() for c in cols), default=-1)
    for i in range(max_xdeg + 1):
        vals = [c.coeffs[i] if i <= c.degree() else ctx.zero for c in cols]
        tp = _lagrange(ctx, ts, vals)
        for k, cc in enumerate(tp.coeffs):
            if cc != ctx.zero:
                out[(i, k)] = cc
    return BiPoly(ctx, out)


def resultant_x_biparam(fterms: dict, gterms: dict, ctx) -> BiPoly:
    """Res_x of f(x, u) and g(x, v); result as a BiPoly in (u, v).

    Terms are ``{(e_x, e_u): coeff}`` and ``{(e_x, e_v): coeff}``.  Same
    grid-evaluation scheme as resultant_y_param.
    """
    dxf = max(i for (i, _) in fterms)
    dxg = max(i for (i, _) in gterms)
    if dxf == 0 or dxg == 0:
        raise PolyError("degree-zero input in the eliminated variable")
    duf = max(k for (_, k) in fterms)
    dvg = max(k for (_, k) in gterms)
    bu = duf * dxg
    bv = dvg * dxf
    if ctx.order < max(bu, bv) + 1:
        raise PolyError("field too small for parameterized resultant; extend first")
    us = [ctx.from_int(n) for n in range(bu + 1)]
    vs = [ctx.from_int(n) for n in range(bv + 1)]
    fspecs = []
    for uv in us:
        upow = [ctx.one]
        for _ in range(duf):
            upow.append(ctx.mul(upow[-1], uv))
        spec = [ctx.zero] * (dxf + 1)
        for (i, k), c in fterms.items():
            spec[i] = ctx.add(spec[i], ctx.mul(c, upow[k]))
        fspecs.append(spec)
    gspecs = []
    for vv in vs:
        vpow = [ctx.one]
        for _ in range(dvg):
            vpow.append(ctx.mul(vpow[-1], vv))
        spec = [ctx.zero] * (dxg + 1)
        for (i, k), c in gterms.items():
            spec[i] = ctx.add(spec[i], ctx.mul(c, vpow[k]))
        gspecs.append(spec)
    cols = []
    for gspec in gspecs:
        vals = [_sylvester_det_fixed(ctx, fspec, gspec, dxf, dxg) for fspec in fspecs]
        cols.append(_lagrange(ctx, us, vals))
    out = {}
    max_udeg = max((c.degree() for c in cols), default=-1)
    for i in range(max_udeg + 1):
        vals = [c.coeffs[i] if i <= c.degree() else ctx.zero for c in cols]
        vp = _lagrange(ctx, vs, vals)
        for k, cc in enumerate(vp.coeffs):
            if cc != ctx.zero:
                out[(i, k)] = cc
    return BiPoly(ctx, out)


# ---------------------------------------------------------------------------
# homogenization
# ---------------------------------------------------------------------------

class TernaryForm:
    """Homogeneous form in (X, Y, Z), sparse map (i, j, k) -> coeff."""

    __slots__ = ("ctx", "degree", "terms")

    def __init__(self, ctx, degree, terms):
        self.ctx = ctx
        self.degree = degree
        self.terms = {ijk: c for ijk, c in terms.items() if c != ctx.zero}
        for (i, j, k) in self.terms:
            if i + j + k != degree:
                raise PolyError("non-homogeneous term")

    def __eq__(self, other):
        return (isinstance(other, TernaryForm) and self.ctx == other.ctx
                and self.degree == other.degree and self.terms == other.terms)

    def __repr__(self):
        parts = [f"{self.ctx.to_int(c)}*X^{i}Y^{j}Z^{k}"
                 for (i, j, k), c in sorted(self.terms.items())]
        return "TernaryForm(" + " + ".join(parts) + ")"

    def eval(self, X, Y, Z):
        ctx = self.ctx
        acc = ctx.zero
        for (i, j, k), c in self.terms.items():
            t = ctx.mul(c, ctx.mul(ctx.pow_(X, i),
                                   ctx.mul(ctx.pow_(Y, j), ctx.pow_(Z, k))))
            acc = ctx.add(acc, t)
        return acc

    def partial(self, var: int) -> "TernaryForm":
        ctx = self.ctx
        out = {}
        for (i, j, k), c in self.terms.items():
            e = (i, j, k)[var]
            if e:
                key = tuple(v - (1 if t == var else 0) for t, v in enumerate((i, j, k)))
                v = ctx.mul(c, ctx.from_base(e))
                if v != ctx.zero:
                    out[key] = ctx.add(out.get(key, ctx.zero), v)
        return TernaryForm(ctx, self.degree - 1, out)

    def dehomogenize(self, chart: int) -> BiPoly:
        """Affine polynomial on the chart where coordinate ``chart`` is 1.

        Chart 2 (Z=1) keeps (x, y) = (X, Y); chart 1 (Y=1) gives (X, Z);
        chart 0 (X=1) gives (Y, Z).
        """
        ctx = self.ctx
        out = {}
        for (i, j, k), c in self.terms.items():
            if chart == 2:
                key = (i, j)
            elif chart == 1:
                key = (i, k)
            else:
                key = (j, k)
            out[key] = ctx.add(out.get(key, ctx.zero), c)
        return BiPoly(ctx, out)

    def map_coeffs(self, fn, new_ctx=None):
        return TernaryForm(new_ctx or self.ctx, self.degree,
                           {k: fn(c) for k, c in self.terms.items()})


def homogenize(f: BiPoly, degree: int) -> TernaryForm:
    """Lift an affine polynomial in (x, y) to a degree-d form in (X, Y, Z)."""
    d = f.total_degree()
    if degree < d:
        raise PolyError(f"degree {degree} below total degree {d}")
    terms = {}
    for (i, j), c in f.terms.items():
        terms[(i, j, degree - i - j)] = c
    return TernaryForm(f.ctx, degree, terms)


def dehomogenize(F: TernaryForm, chart: int = 2) -> BiPoly:
    return F.dehomogenize(chart)
