"""Exact arithmetic in finite fields F_{p^k} and the solvers built on it.

Every field is realized as F_p[T]/(modulus) where the modulus is the
lexicographically smallest monic irreducible of its degree, so repeated
construction is reproducible bit for bit.  For speed, elements are plain
Python values (ints for table-backed fields, digit tuples for large odd
characteristic) and all arithmetic goes through the owning ``FieldCtx``;
the ``FieldElem`` wrapper exists for convenience at API boundaries.

Three backends are selected automatically:

* ``table`` -- discrete-log/Zech tables, fields up to ``TABLE_MAX`` elements;
* ``gf2`` -- carry-less packed-int arithmetic for larger char-2 fields;
* ``vector`` -- generic dense-vector arithmetic for larger odd-char fields.

All three share one canonical integer encoding (sum of digit_i * p^i), which
is what sorting, hashing and report serialization use.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

TABLE_MAX = 1 << 18
SCAN_MAX = 1 << 12
DEFAULT_SIZE_CAP = 1 << 32


class FieldError(ValueError):
    pass


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _factorize(n: int) -> dict:
    out = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


# ---------------------------------------------------------------------------
# raw F_p[T] helpers on digit lists (little-endian), used during construction
# ---------------------------------------------------------------------------

def _fp_poly_mul(a, b, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return out


def _fp_poly_rem(a, mod, p):
    # mod is monic
    a = list(a)
    k = len(mod) - 1
    for i in range(len(a) - 1, k - 1, -1):
        c = a[i]
        if c:
            a[i] = 0
            for j in range(k):
                a[i - k + j] = (a[i - k + j] - c * mod[j]) % p
    out = a[:k]
    out += [0] * (k - len(out))
    return out


def _fp_poly_deg(a):
    d = len(a) - 1
    while d >= 0 and a[d] == 0:
        d -= 1
    return d


def _fp_poly_gcd(a, b, p):
    a, b = list(a), list(b)
    while _fp_poly_deg(b) >= 0:
        da, db = _fp_poly_deg(a), _fp_poly_deg(b)
        if da < db:
            a, b = b, a
            continue
        inv = pow(b[db], p - 2, p)
        while da >= db >= 0:
            c = a[da] * inv % p
            for j in range(db + 1):
                a[da - db + j] = (a[da - db + j] - c * b[j]) % p
            da = _fp_poly_deg(a)
        a, b = b, a
    return a


def _fp_powmod_x(e_base_p_exp, mod, p):
    """x^(p^e) reduced mod the monic polynomial ``mod``."""
    k = len(mod) - 1
    cur = [0, 1][:max(k, 1)]
    cur += [0] * (k - len(cur))
    if k == 1:
        cur = _fp_poly_rem([0, 1], mod, p)
    for _ in range(e_base_p_exp):
        out = [1] + [0] * (k - 1)
        base = list(cur)
        e = p
        while e:
            if e & 1:
                out = _fp_poly_rem(_fp_poly_mul(out, base, p), mod, p)
            base = _fp_poly_rem(_fp_poly_mul(base, base, p), mod, p)
            e >>= 1
        cur = out
    return cur


def _fp_is_irreducible(mod, p):
    """Rabin's criterion for a monic polynomial over F_p."""
    k = len(mod) - 1
    if k <= 0:
        return False
    if k == 1:
        return True
    xk = _fp_powmod_x(k, mod, p)
    x1 = _fp_poly_rem([0, 1], mod, p)
    if xk != x1:
        return False
    for ell in _factorize(k):
        h = _fp_powmod_x(k // ell, mod, p)
        diff = [(h[i] - x1[i]) % p for i in range(k)]
        g = _fp_poly_gcd(list(mod), diff, p)
        if _fp_poly_deg(g) != 0:
            return False
    return True


def _lex_smallest_irreducible(p, k):
    """Monic irreducible of degree k with the smallest canonical encoding."""
    for n in range(p ** k):
        digits, t = [], n
        for _ in range(k):
            digits.append(t % p)
            t //= p
        cand = digits + [1]
        if _fp_is_irreducible(cand, p):
            return tuple(cand)
    raise FieldError(f"no irreducible of degree {k} over F_{p}")  # unreachable


# ---------------------------------------------------------------------------
# field contexts
# ---------------------------------------------------------------------------

class FieldCtx:
    """Arithmetic context for F_{p^k}; operates on raw element values.

    Values are ints (canonical encoding) for the ``table`` and ``gf2``
    backends and digit tuples for the ``vector`` backend.  ``to_int`` /
    ``from_int`` convert to the canonical encoding in all cases.
    """

    def __init__(self, p: int, k: int, size_cap: int = DEFAULT_SIZE_CAP):
        if not _is_prime(p):
            raise FieldError(f"{p} is not prime")
        if k < 1:
            raise FieldError("extension degree must be >= 1")
        order = p ** k
        if order > size_cap:
            raise FieldError(f"field size {p}^{k} exceeds cap {size_cap}")
        self.p = p
        self.k = k
        self.order = order
        self.modulus = _lex_smallest_irreducible(p, k)
        if order <= TABLE_MAX:
            self.backend = "table"
        elif p == 2:
            self.backend = "gf2"
        else:
            self.backend = "vector"
        self._init_backend()

    # -- construction ------------------------------------------------------

    def _init_backend(self):
        p, k = self.p, self.k
        if self.backend == "vector":
            self.zero = tuple([0] * k)
            self.one = tuple([1] + [0] * (k - 1))
            return
        self.zero = 0
        self.one = 1
        if self.backend == "gf2":
            self._modbits = sum(1 << i for i, c in enumerate(self.modulus) if c)
            return
        # table backend: find a generator, build exp/log (+ Zech for odd p)
        n1 = self.order - 1
        prime_divs = list(_factorize(n1))
        if p == 2:
            self._modbits = sum(1 << i for i, c in enumerate(self.modulus) if c)
            mulf = self._packed_mul2
            powf = self._packed_pow2
            to_int = lambda v: v
            from_int = lambda n: n
        else:
            mulf = lambda a, b: self._vec_mul(a, b)
            powf = lambda a, e: self._vec_pow(a, e)
            to_int = self._vec_to_int
            from_int = self._int_to_vec
        gen = None
        start = p if self.k > 1 else 1
        for cand in range(start, self.order):
            v = from_int(cand)
            if all(powf(v, n1 // ell) != from_int(1) for ell in prime_divs):
                gen = cand
                break
        gval = from_int(gen)
        exp = [0] * (2 * n1)
        log = [None] * self.order
        cur = from_int(1)
        for i in range(n1):
            v = to_int(cur)
            exp[i] = v
            exp[i + n1] = v
            log[v] = i
            cur = mulf(cur, gval)
        self._exp = exp
        self._log = log
        self.generator = gen
        if p > 2:
            zech = [None] * n1
            for d in range(n1):
                v = exp[d]
                c0 = v % p
                w = v - c0 + ((c0 + 1) % p)
                zech[d] = log[w] if w else None
            self._zech = zech
            self._half = n1 // 2

    def _packed_mul2(self, a, b):
        r = 0
        while b:
            if b & 1:
                r ^= a
            a <<= 1
            b >>= 1
        mb = self._modbits
        k = self.k
        while r.bit_length() > k:
            r ^= mb << (r.bit_length() - 1 - k)
        return r

    def _packed_pow2(self, a, e):
        r = 1
        while e:
            if e & 1:
                r = self._packed_mul2(r, a)
            a = self._packed_mul2(a, a)
            e >>= 1
        return r

    # raw vector helpers used by construction and the vector backend
    def _int_to_vec(self, n):
        p, k = self.p, self.k
        digits = []
        for _ in range(k):
            digits.append(n % p)
            n //= p
        return tuple(digits)

    def _vec_to_int(self, vec):
        n = 0
        for d in reversed(vec):
            n = n * self.p + d
        return n

    def _vec_mul(self, a, b):
        return tuple(_fp_poly_rem(_fp_poly_mul(list(a), list(b), self.p),
                                  list(self.modulus), self.p))

    def _vec_pow(self, a, e):
        r = self._int_to_vec(1)
        while e:
            if e & 1:
                r = self._vec_mul(r, a)
            a = self._vec_mul(a, a)
            e >>= 1
        return r

    # -- identity ----------------------------------------------------------

    def __eq__(self, other):
        return (isinstance(other, FieldCtx)
                and (self.p, self.k, self.modulus) == (other.p, other.k, other.modulus))

    def __hash__(self):
        return hash((self.p, self.k, self.modulus))

    def __repr__(self):
        return f"FieldCtx(p={self.p}, k={self.k})"

    def describe(self) -> dict:
        return {"p": self.p, "k": self.k, "order": self.order,
                "modulus": list(self.modulus)}

    # -- arithmetic --------------------------------------------------------

    def add(self, a, b):
        if self.backend == "table":
            if self.p == 2:
                return a ^ b
            if a == 0:
                return b
            if b == 0:
                return a
            la, lb = self._log[a], self._log[b]
            if la > lb:
                la, lb = lb, la
            z = self._zech[lb - la]
            return 0 if z is None else self._exp[la + z]
        if self.backend == "gf2":
            return a ^ b
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def neg(self, a):
        if self.p == 2:
            return a
        if self.backend == "table":
            return 0 if a == 0 else self._exp[self._log[a] + self._half]
        return tuple((-x) % self.p for x in a)

    def sub(self, a, b):
        if self.p == 2:
            return a ^ b
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self.backend == "table":
            if a == 0 or b == 0:
                return 0
            return self._exp[self._log[a] + self._log[b]]
        if self.backend == "gf2":
            if a == 0 or b == 0:
                return 0
            r = 0
            x = a
            while b:
                if b & 1:
                    r ^= x
                x <<= 1
                b >>= 1
            mb = self._modbits
            k = self.k
            while r.bit_length() > k:
                r ^= mb << (r.bit_length() - 1 - k)
            return r
        return self._vec_mul(a, b)

    def inv(self, a):
        if a == self.zero:
            raise ZeroDivisionError("inverse of zero field element")
        if self.backend == "table":
            return self._exp[self.order - 1 - self._log[a]]
        return self.pow_(a, self.order - 2)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow_(self, a, e):
        if e < 0:
            return self.pow_(self.inv(a), -e)
        if self.backend == "table":
            if a == 0:
                return 0 if e else 1
            return self._exp[(self._log[a] * e) % (self.order - 1)]
        r = self.one
        while e:
            if e & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            e >>= 1
        return r

    def frob(self, a):
        return self.pow_(a, self.p)

    def pth_root(self, a):
        return self.pow_(a, self.p ** (self.k - 1))

    def nth_root(self, a, n):
        """Deterministic n-th root (smallest canonical), or None."""
        if a == self.zero:
            return self.zero
        if self.backend == "table":
            la = self._log[a]
            n1 = self.order - 1
            g = _gcd(n % n1 if n % n1 else n1, n1)
            if la % g:
                return None
            # solve n*x = la mod n1; smallest root value among the g solutions
            nn = (n % n1) // g
            x0 = (la // g) * pow(nn, -1, n1 // g) % (n1 // g)
            best = None
            for j in range(g):
                v = self._exp[(x0 + j * (n1 // g)) % n1]
                if best is None or v < best:
                    best = v
            return best
        roots = [r for r in self.elements() if self.pow_(r, n) == a]
        return min(roots, key=self.to_int) if roots else None

    # -- conversions and iteration -----------------------------------------

    def to_int(self, a) -> int:
        if self.backend == "vector":
            return self._vec_to_int(a)
        return a

    def from_int(self, n: int):
        if self.backend == "vector":
            return self._int_to_vec(n)
        return n

    def from_base(self, c: int):
        """Embed an integer from the prime field F_p."""
        c %= self.p
        if self.backend == "vector":
            return tuple([c] + [0] * (self.k - 1))
        return c

    def to_vec(self, a) -> tuple:
        if self.backend == "vector":
            return a
        return self._int_to_vec(a)

    def from_vec(self, digits):
        digits = tuple(d % self.p for d in digits)
        if self.backend == "vector":
            return digits
        return self._vec_to_int(digits)

    def elements(self):
        for n in range(self.order):
            yield self.from_int(n)

    def random(self, rng: random.Random):
        return self.from_int(rng.randrange(self.order))

    def elem(self, n: int) -> "FieldElem":
        return FieldElem(self, self.from_int(n) if isinstance(n, int) else n)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


@dataclass(frozen=True)
class FieldElem:
    """Convenience wrapper pairing a raw value with its context."""
    ctx: FieldCtx
    val: object

    def _coerce(self, other):
        if isinstance(other, FieldElem):
            if other.ctx != self.ctx:
                raise FieldError("elements from different fields")
            return other.val
        if isinstance(other, int):
            return self.ctx.from_base(other)
        raise TypeError(other)

    def __add__(self, other):
        return FieldElem(self.ctx, self.ctx.add(self.val, self._coerce(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElem(self.ctx, self.ctx.sub(self.val, self._coerce(other)))

    def __rsub__(self, other):
        return FieldElem(self.ctx, self.ctx.sub(self._coerce(other), self.val))

    def __mul__(self, other):
        return FieldElem(self.ctx, self.ctx.mul(self.val, self._coerce(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldElem(self.ctx, self.ctx.div(self.val, self._coerce(other)))

    def __neg__(self):
        return FieldElem(self.ctx, self.ctx.neg(self.val))

    def __pow__(self, e):
        return FieldElem(self.ctx, self.ctx.pow_(self.val, e))

    def __eq__(self, other):
        if isinstance(other, int):
            return self.val == self.ctx.from_base(other)
        return (isinstance(other, FieldElem) and self.ctx == other.ctx
                and self.val == other.val)

    def __hash__(self):
        return hash((self.ctx, self.val))

    def __repr__(self):
        return f"<{self.ctx.to_int(self.val)} in F_{self.ctx.p}^{self.ctx.k}>"


# ---------------------------------------------------------------------------
# field construction cache
# ---------------------------------------------------------------------------

_FIELD_CACHE: dict = {}


def build_field(p: int, k: int, size_cap: int = DEFAULT_SIZE_CAP) -> FieldCtx:
    """Deterministic F_{p^k}; repeated calls return the identical context."""
    key = (p, k)
    ctx = _FIELD_CACHE.get(key)
    if ctx is None:
        ctx = FieldCtx(p, k, size_cap=size_cap)
        _FIELD_CACHE[key] = ctx
    elif ctx.order > size_cap:
        raise FieldError(f"field size {p}^{k} exceeds cap {size_cap}")
    return ctx


# ---------------------------------------------------------------------------
# homomorphisms between fields with src.k | dst.k
# ---------------------------------------------------------------------------

class FieldHom:
    """Ring homomorphism F_{p^j} -> F_{p^k} fixing F_p (j | k).

    The source generator is sent to the smallest root of the source modulus
    in the destination, so the embedding is deterministic.
    """

    def __init__(self, src: FieldCtx, dst: FieldCtx):
        if src.p != dst.p:
            raise FieldError("characteristics differ")
        if dst.k % src.k:
            raise FieldError(f"degree {src.k} does not divide {dst.k}")
        self.src = src
        self.dst = dst
        from .poly import UniPoly  # local import to avoid a cycle
        modpoly = UniPoly(dst, [dst.from_base(c) for c in src.modulus])
        roots = find_roots(modpoly)
        if not roots:
            raise FieldError("internal fault: no root of source modulus found")
        self.root = roots[0]
        self._powers = [dst.one]
        for _ in range(src.k - 1):
            self._powers.append(dst.mul(self._powers[-1], self.root))
        # F_p-matrix of the embedding, columns = vec(root^i), for preimages
        self._cols = [dst.to_vec(pw) for pw in self._powers]

    def apply(self, a):
        digits = self.src.to_vec(a)
        out = self.dst.zero
        for d, pw in zip(digits, self._powers):
            if d:
                out = self.dst.add(out, self.dst.mul(self.dst.from_base(d), pw))
        return out

    def preimage(self, b):
        """Solve apply(a) = b; raises FieldError if b is not in the image."""
        p = self.src.p
        rows = self.dst.k
        cols = self.src.k
        mat = [[self._cols[j][i] for j in range(cols)] for i in range(rows)]
        rhs = list(self.dst.to_vec(b))
        piv_cols = []
        r = 0
        for c in range(cols):
            piv = next((i for i in range(r, rows) if mat[i][c]), None)
            if piv is None:
                continue
            mat[r], mat[piv] = mat[piv], mat[r]
            rhs[r], rhs[piv] = rhs[piv], rhs[r]
            inv = pow(mat[r][c], p - 2, p)
            mat[r] = [x * inv % p for x in mat[r]]
            rhs[r] = rhs[r] * inv % p
            for i in range(rows):
                if i != r and mat[i][c]:
                    f = mat[i][c]
                    mat[i] = [(x - f * y) % p for x, y in zip(mat[i], mat[r])]
                    rhs[i] = (rhs[i] - f * rhs[r]) % p
            piv_cols.append(c)
            r += 1
        sol = [0] * cols
        for i, c in enumerate(piv_cols):
            sol[c] = rhs[i]
        for i in range(r, rows):
            if rhs[i]:
                raise FieldError("value not in the image of the embedding")
        out = self.src.from_vec(sol)
        if self.apply(out) != b:
            raise FieldError("value not in the image of the embedding")
        return out


_HOM_CACHE: dict = {}


def embed(src: FieldCtx, dst: FieldCtx) -> FieldHom:
    key = (src.p, src.k, dst.p, dst.k)
    hom = _HOM_CACHE.get(key)
    if hom is None or hom.src != src or hom.dst != dst:
        hom = FieldHom(src, dst)
        _HOM_CACHE[key] = hom
    return hom


# ---------------------------------------------------------------------------
# root finding
# ---------------------------------------------------------------------------

def find_roots(f, method: str | None = None) -> list:
    """All distinct roots of a univariate polynomial in its own field.

    Exhaustive scan for small fields, distinct-degree + equal-degree
    splitting above SCAN_MAX; both paths re-verify every root by evaluation
    and return values sorted by canonical encoding.  ``method`` can force
    "scan" or "split" (the property suite cross-checks them on overlap
    sizes; scanning huge fields per call is what the threshold avoids).
    """
    ctx = f.ctx
    if f.is_zero():
        raise FieldError("zero polynomial has every element as a root")
    if f.degree() == 0:
        return []
    if method is None:
        method = "scan" if ctx.order <= SCAN_MAX else "split"
    if method == "scan":
        roots = [a for a in ctx.elements() if f.eval(a) == ctx.zero]
    elif method == "split":
        roots = _cz_roots(f)
    else:
        raise FieldError(f"unknown root-finding method {method}")
    for r in roots:
        assert f.eval(r) == ctx.zero
    return sorted(roots, key=ctx.to_int)


def _cz_roots(f):
    from .poly import UniPoly, uni_gcd
    ctx = f.ctx
    f = f.monic()
    # x^order - x mod f via iterated p-th powers
    x = UniPoly(ctx, [ctx.zero, ctx.one])
    h = x
    for _ in range(ctx.k):
        h = h.powmod(ctx.p, f)
    g = uni_gcd(f, h - x)
    if g.degree() == 0:
        return []
    rng = random.Random(0xC0FFEE ^ ctx.order)
    roots = []
    stack = [g.monic()]
    while stack:
        cur = stack.pop()
        if cur.degree() == 1:
            roots.append(ctx.neg(cur.coeffs[0]))
            continue
        while True:
            r = ctx.random(rng)
            if ctx.p == 2:
                scale = ctx.random(rng)
                if scale == ctx.zero:
                    continue
                probe = UniPoly(ctx, [r, scale])
                acc = probe
                tr = probe
                for _ in range(ctx.k - 1):
                    tr = tr.mulmod(tr, cur)
                    acc = acc + tr
                cand = uni_gcd(cur, acc)
            else:
                probe = UniPoly(ctx, [r, ctx.one])
                powed = probe.powmod((ctx.order - 1) // 2, cur)
                cand = uni_gcd(cur, powed - UniPoly(ctx, [ctx.one]))
            if 0 < cand.degree() < cur.degree():
                cand = cand.monic()
                stack.append(cand)
                stack.append((cur // cand).monic())
                break
    return roots


# ---------------------------------------------------------------------------
# additive (p-linearized) solver
# ---------------------------------------------------------------------------

def solve_additive(terms, rhs, ctx: FieldCtx) -> list:
    """All x in ctx with sum a_i * x^(p^i) = rhs, via F_p-linear algebra.

    ``terms`` is a list of (i, a_i) pairs describing L(T) = sum a_i T^{p^i}.
    Returns a sorted list; its size is 0 or p^dim(ker L).
    """
    p, k = ctx.p, ctx.k
    cols = []
    for j in range(k):
        e = ctx.from_vec([1 if i == j else 0 for i in range(k)])
        img = ctx.zero
        for i, a in terms:
            img = ctx.add(img, ctx.mul(a, ctx.pow_(e, p ** i)))
        cols.append(ctx.to_vec(img))
    mat = [[cols[j][i] for j in range(k)] for i in range(k)]
    vec = list(ctx.to_vec(rhs))
    # row-reduce [mat | vec]
    piv_of_col = {}
    r = 0
    for c in range(k):
        piv = next((i for i in range(r, k) if mat[i][c]), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        vec[r], vec[piv] = vec[piv], vec[r]
        inv = pow(mat[r][c], p - 2, p)
        mat[r] = [x * inv % p for x in mat[r]]
        vec[r] = vec[r] * inv % p
        for i in range(k):
            if i != r and mat[i][c]:
                f = mat[i][c]
                mat[i] = [(x - f * y) % p for x, y in zip(mat[i], mat[r])]
                vec[i] = (vec[i] - f * vec[r]) % p
        piv_of_col[c] = r
        r += 1
    for i in range(r, k):
        if vec[i]:
            return []
    particular = [0] * k
    for c, row in piv_of_col.items():
        particular[c] = vec[row]
    free_cols = [c for c in range(k) if c not in piv_of_col]
    basis = []
    for fc in free_cols:
        v = [0] * k
        v[fc] = 1
        for c, row in piv_of_col.items():
            v[c] = (-mat[row][fc]) % p
        basis.append(v)
    sols = []
    idx = [0] * len(basis)
    total = p ** len(basis)
    for n in range(total):
        t = n
        v = list(particular)
        for b in basis:
            c = t % p
            t //= p
            if c:
                v = [(x + c * y) % p for x, y in zip(v, b)]
        sols.append(ctx.from_vec(v))
    return sorted(set(sols), key=ctx.to_int)
