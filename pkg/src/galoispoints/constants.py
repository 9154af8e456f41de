"""Defining constants for the two curve families, found in explicit subfields.

The verification engine works over finite subfields of the algebraic
closure; each run picks the smallest extension F_{q^K} whose elements
satisfy every root condition the run needs, and records the degrees used.

* translation family (mode ``Fm``): the additive roots of T^q + T, the
  (q+1)-st roots of unity, a root of a^q + a = 1 and the roots of w^m = -1
  all live in F_{q^2};
* scaling family (mode ``Gr``): b with b = (-1)^(r-1) b^(q^(2r)) lives in
  F_{q^(2r)} (odd characteristic with r even needs F_{q^(4r)}); c with
  c^q + c = b^(q^r + 1) is searched by linear algebra, over every candidate
  b in deterministic order, extending the field only if no candidate admits
  a solution.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .fields import (DEFAULT_SIZE_CAP, FieldCtx, build_field, find_roots,
                     solve_additive)
from .poly import UniPoly


class ConstantError(ValueError):
    pass


DEFAULT_EXT_CAP = 64


@dataclass
class FamilyConstants:
    mode: str                 # "Fm" or "Gr"
    p: int
    n: int
    q: int
    mr: int                   # m for Fm, r for Gr
    ctx: FieldCtx
    ext_degrees: dict = field(default_factory=dict)
    lambda_set: list = field(default_factory=list)
    zeta_set: list = field(default_factory=list)
    a_root: object = None
    omega_set: list = field(default_factory=list)
    beta_lambda: object = None
    b_root: object = None
    c_root: object = None
    c_prime: object = None

    def describe(self) -> dict:
        ctx = self.ctx
        out = {"mode": self.mode, "p": self.p, "n": self.n, "q": self.q,
               ("m" if self.mode == "Fm" else "r"): self.mr,
               "field": ctx.describe(), "ext_degrees": dict(self.ext_degrees),
               "lambda_set": [ctx.to_int(v) for v in self.lambda_set],
               "zeta_set": [ctx.to_int(v) for v in self.zeta_set]}
        if self.mode == "Fm":
            out["a_root"] = ctx.to_int(self.a_root)
            out["omega_set"] = [ctx.to_int(v) for v in self.omega_set]
            out["beta_lambda"] = ctx.to_int(self.beta_lambda)
        else:
            out["b"] = ctx.to_int(self.b_root)
            out["c"] = ctx.to_int(self.c_root)
            out["c_prime"] = ctx.to_int(self.c_prime)
        return out


def gb_value(q, r, b, ctx, arg):
    """g_b evaluated at a field value: sum (-1)^i b^(q^(i+r)) arg^(q^i)."""
    acc = ctx.zero
    for i in range(r):
        term = ctx.mul(ctx.pow_(b, q ** (i + r)), ctx.pow_(arg, q ** i))
        if i % 2:
            term = ctx.neg(term)
        acc = ctx.add(acc, term)
    return acc


def make_family_constants(p: int, n: int, mr: int, mode: str,
                          ext_cap: int = DEFAULT_EXT_CAP,
                          size_cap: int = DEFAULT_SIZE_CAP) -> FamilyConstants:
    """Locate all constants for one parameter tuple, re-verifying each."""
    q = p ** n
    if mode == "Fm":
        m = mr
        if m < 2 or m >= q or (q + 1) % m:
            raise ConstantError(
                f"m={m} must divide q+1={q + 1} with 2 <= m < q={q}")
        K = 2
        if K > ext_cap:
            raise ConstantError("extension cap exceeded")
        ctx = build_field(p, n * K, size_cap=size_cap)
        out = FamilyConstants(mode, p, n, q, m, ctx)
        out.ext_degrees["working_over_base"] = K
        out.ext_degrees["working_over_prime"] = n * K
        one = ctx.one
        out.lambda_set = solve_additive([(n, one), (0, one)], ctx.zero, ctx)
        if len(out.lambda_set) != q:
            raise ConstantError("additive root set of T^q + T has wrong size")
        for lam in out.lambda_set:
            assert ctx.add(ctx.pow_(lam, q), lam) == ctx.zero
        out.zeta_set = find_roots(_cyclo(ctx, q + 1))
        if len(out.zeta_set) != q + 1:
            raise ConstantError("(q+1)-st roots of unity set has wrong size")
        a_candidates = solve_additive([(n, one), (0, one)], one, ctx)
        if not a_candidates:
            raise ConstantError("no root of a^q + a = 1 in the working field")
        out.a_root = a_candidates[0]
        assert ctx.add(ctx.pow_(out.a_root, q), out.a_root) == one
        out.omega_set = find_roots(
            UniPoly(ctx, [one] + [ctx.zero] * (m - 1) + [one]))
        if len(out.omega_set) != m:
            raise ConstantError("root set of w^m = -1 has wrong size")
        pool = [lam for lam in out.lambda_set if lam not in (ctx.zero, one)]
        if not pool:
            raise ConstantError("no translation root outside {0, 1}")
        out.beta_lambda = pool[0]
        return out

    if mode != "Gr":
        raise ConstantError(f"unknown mode {mode}")
    r = mr
    if r < 2:
        raise ConstantError(f"r={r} must be >= 2")
    base_K = 2 * r if (p == 2 or r % 2 == 1) else 4 * r
    K = base_K
    eps_plus = (r - 1) % 2 == 0   # b = + b^(q^(2r)) when r is odd
    while True:
        if K > ext_cap:
            raise ConstantError("extension cap exceeded while searching for b, c")
        ctx = build_field(p, n * K, size_cap=size_cap)
        one = ctx.one
        sign = one if eps_plus else ctx.neg(one)
        bset = solve_additive([(2 * r * n, one), (0, ctx.neg(sign))], ctx.zero, ctx)
        found = None
        for b in bset:
            if b == ctx.zero:
                continue
            rhs = ctx.pow_(b, q ** r + 1)
            cs = solve_additive([(n, one), (0, one)], rhs, ctx)
            if cs:
                cnonzero = [c for c in cs if c != ctx.zero]
                if cnonzero:
                    found = (b, cnonzero[0])
                    break
        if found:
            break
        K += base_K
    b, c = found
    out = FamilyConstants(mode, p, n, q, r, ctx)
    out.ext_degrees["working_over_base"] = K
    out.ext_degrees["working_over_prime"] = n * K
    out.b_root = b
    out.c_root = c
    out.c_prime = ctx.add(ctx.neg(c), gb_value(q, r, b, ctx, b))
    # re-verify the defining identities by direct substitution
    lhs = ctx.pow_(b, q ** (2 * r))
    if not eps_plus:
        lhs = ctx.neg(lhs)
    if lhs != b or b == ctx.zero:
        raise ConstantError("b fails its defining identity")
    if ctx.add(ctx.pow_(c, q), c) != ctx.pow_(b, q ** r + 1):
        raise ConstantError("c fails its defining identity")
    out.zeta_set = find_roots(_cyclo(ctx, q ** r + 1))
    if len(out.zeta_set) != q ** r + 1:
        raise ConstantError("scaling root-of-unity set has wrong size")
    out.lambda_set = solve_additive([(n, one), (0, one)], ctx.zero, ctx)
    if len(out.lambda_set) != q:
        raise ConstantError("additive root set of T^q + T has wrong size")
    return out


def _cyclo(ctx, nth):
    one = ctx.one
    coeffs = [ctx.neg(one)] + [ctx.zero] * (nth - 1) + [one]
    return UniPoly(ctx, coeffs)
