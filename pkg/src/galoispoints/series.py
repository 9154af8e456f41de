"""Truncated Laurent series with explicit precision tracking.

A series is ``sum coeffs[i] * t^(offset+i)`` with every stored coefficient
exact, plus the guarantee that all coefficients below ``prec`` are known.
The zero-so-far series is represented with an empty coefficient list and
``offset == prec``.  Precision propagates pessimistically through products
and inverses, which is what makes branch valuations trustworthy: any
leading coefficient that appears below ``prec`` is exact.
"""

from __future__ import annotations

from .fields import FieldCtx


class SeriesError(ValueError):
    pass


class LaurentSeries:
    __slots__ = ("ctx", "offset", "coeffs", "prec")

    def __init__(self, ctx: FieldCtx, offset: int, coeffs, prec: int):
        self.ctx = ctx
        coeffs = list(coeffs)
        # trim above precision
        if offset + len(coeffs) > prec:
            coeffs = coeffs[:max(0, prec - offset)]
        # normalize leading zeros
        while coeffs and coeffs[0] == ctx.zero:
            coeffs.pop(0)
            offset += 1
        while coeffs and coeffs[-1] == ctx.zero:
            coeffs.pop()
        if not coeffs:
            offset = prec
        self.offset = offset
        self.coeffs = coeffs
        self.prec = prec

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, ctx, prec):
        return cls(ctx, prec, [], prec)

    @classmethod
    def const(cls, ctx, c, prec):
        return cls(ctx, 0, [c], prec)

    @classmethod
    def t_power(cls, ctx, n, prec):
        return cls(ctx, n, [ctx.one], prec)

    # -- predicates ---------------------------------------------------------

    def is_zero_to_prec(self):
        return not self.coeffs

    def valuation(self):
        """Exact order of the series, or None if zero to precision."""
        if not self.coeffs:
            return None
        return self.offset

    def coeff(self, n):
        if n >= self.prec:
            raise SeriesError(f"coefficient t^{n} beyond precision {self.prec}")
        i = n - self.offset
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.ctx.zero

    def leading(self):
        if not self.coeffs:
            raise SeriesError("series is zero to precision")
        return self.coeffs[0]

    def __repr__(self):
        if not self.coeffs:
            return f"O(t^{self.prec})"
        ts = [f"{self.ctx.to_int(c)}*t^{self.offset + i}"
              for i, c in enumerate(self.coeffs) if c != self.ctx.zero]
        return " + ".join(ts) + f" + O(t^{self.prec})"

    def __eq__(self, other):
        return (isinstance(other, LaurentSeries) and self.ctx == other.ctx
                and self.offset == other.offset and self.coeffs == other.coeffs
                and self.prec == other.prec)

    # -- arithmetic ----------------------------------------------------------

    def truncate(self, prec):
        return LaurentSeries(self.ctx, self.offset, list(self.coeffs), min(prec, self.prec))

    def __add__(self, other):
        ctx = self.ctx
        prec = min(self.prec, other.prec)
        if not self.coeffs:
            return other.truncate(prec)
        if not other.coeffs:
            return self.truncate(prec)
        off = min(self.offset, other.offset)
        ln = max(self.offset + len(self.coeffs), other.offset + len(other.coeffs)) - off
        out = [ctx.zero] * ln
        for i, c in enumerate(self.coeffs):
            out[self.offset - off + i] = c
        for i, c in enumerate(other.coeffs):
            j = other.offset - off + i
            out[j] = ctx.add(out[j], c)
        return LaurentSeries(ctx, off, out, prec)

    def __neg__(self):
        return LaurentSeries(self.ctx, self.offset,
                             [self.ctx.neg(c) for c in self.coeffs], self.prec)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        ctx = self.ctx
        if not self.coeffs or not other.coeffs:
            # zero-to-prec times anything stays zero to the combined precision
            if not self.coeffs and not other.coeffs:
                return LaurentSeries.zero(ctx, self.prec + other.prec)
            z, f = (self, other) if not self.coeffs else (other, self)
            return LaurentSeries.zero(ctx, z.prec + f.offset)
        prec = min(self.prec + other.offset, other.prec + self.offset)
        off = self.offset + other.offset
        ln = min(len(self.coeffs) + len(other.coeffs) - 1, prec - off)
        out = [ctx.zero] * ln
        for i, a in enumerate(self.coeffs):
            if a == ctx.zero or i >= ln:
                continue
            jmax = min(len(other.coeffs), ln - i)
            for j in range(jmax):
                b = other.coeffs[j]
                if b != ctx.zero:
                    out[i + j] = ctx.add(out[i + j], ctx.mul(a, b))
        return LaurentSeries(ctx, off, out, prec)

    def scale(self, c):
        if c == self.ctx.zero:
            return LaurentSeries.zero(self.ctx, self.prec)
        return LaurentSeries(self.ctx, self.offset,
                             [self.ctx.mul(a, c) for a in self.coeffs], self.prec)

    def shift(self, n):
        """Multiply by t^n."""
        return LaurentSeries(self.ctx, self.offset + n, list(self.coeffs), self.prec + n)

    def inverse(self):
        ctx = self.ctx
        if not self.coeffs:
            raise SeriesError("cannot invert a series that is zero to precision")
        m = self.prec - self.offset       # known length of the unit part
        u = self.coeffs + [ctx.zero] * (m - len(self.coeffs))
        inv0 = ctx.inv(u[0])
        v = [ctx.zero] * m
        v[0] = inv0
        for n in range(1, m):
            acc = ctx.zero
            for i in range(1, n + 1):
                if i < len(u) and u[i] != ctx.zero and v[n - i] != ctx.zero:
                    acc = ctx.add(acc, ctx.mul(u[i], v[n - i]))
            v[n] = ctx.neg(ctx.mul(acc, inv0))
        return LaurentSeries(ctx, -self.offset, v, m - self.offset)

    def pow(self, e: int):
        if e < 0:
            return self.inverse().pow(-e)
        if e == 0:
            return LaurentSeries.const(self.ctx, self.ctx.one, self.prec - self.offset)
        r = None
        b = self
        while e:
            if e & 1:
                r = b if r is None else r * b
            e >>= 1
            if e:
                b = b * b
        return r

    def nth_root(self, n: int):
        """Deterministic n-th root for p not dividing n; valuation must split."""
        ctx = self.ctx
        if not self.coeffs:
            raise SeriesError("no root of a series that is zero to precision")
        if n % ctx.p == 0:
            raise SeriesError("n-th root with p | n is not supported")
        if self.offset % n:
            raise SeriesError("valuation not divisible by root order")
        m = self.prec - self.offset
        c0 = self.coeffs[0]
        r0 = ctx.nth_root(c0, n)
        if r0 is None:
            raise SeriesError("leading coefficient has no n-th root in the field")
        unit = LaurentSeries(ctx, 0, self.coeffs, m)
        g = LaurentSeries(ctx, 0, [r0], m)
        ninv = ctx.inv(ctx.from_base(n % ctx.p))
        reached = 1
        while reached < m:
            # Newton step: g <- g - (g^n - unit)/(n g^(n-1))
            gn1 = g.pow(n - 1)
            err = (gn1 * g - unit).truncate(m)
            corr = (err * gn1.inverse()).scale(ninv)
            g = (g - corr).truncate(m)
            reached *= 2
        return LaurentSeries(ctx, 0, g.coeffs, m).shift(self.offset // n)
