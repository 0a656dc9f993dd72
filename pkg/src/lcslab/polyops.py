"""Polynomial operations built on the kernel backend.

Everything here is exact arithmetic over the integers.  The GCD tries the
evaluate/reconstruct/verify heuristic first (coprime inputs, the common
case when canonicalizing fractions, cost one evaluation and one integer
GCD) and falls back to a recursive subresultant remainder sequence when
the heuristic gives up.  Integer content is folded into the GCD, so
canonical fractions reduce constants as well (2x/2 -> x).
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as int_gcd

from ._kernels import (
    poly_add,
    poly_divexact,
    poly_lead,
    poly_mul,
    poly_mul_scalar,
    poly_mul_term,
    poly_neg,
    poly_sub,
)

Poly = dict


def poly_const(nvars: int, c: int) -> Poly:
    if c == 0:
        return {}
    return {(0,) * nvars: c}


def poly_var(nvars: int, index: int) -> Poly:
    e = [0] * nvars
    e[index] = 1
    return {tuple(e): 1}


def poly_sorted_terms(a: Poly) -> tuple:
    """Terms sorted graded-lex descending; the canonical storage order."""
    return tuple(sorted(a.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True))


def poly_appears(a: Poly, v: int) -> bool:
    return any(e[v] for e in a)


def poly_total_degree(a: Poly) -> int:
    return max((sum(e) for e in a), default=-1)


def normalize_sign(a: Poly) -> Poly:
    """Flip signs so the graded-lex leading coefficient is positive."""
    lead = poly_lead(a)
    if lead is not None and lead[1] < 0:
        return poly_neg(a)
    return dict(a)


def poly_pow(a: Poly, k: int, nvars: int) -> Poly:
    if k < 0:
        raise ValueError("negative exponent in polynomial power")
    out = poly_const(nvars, 1)
    base = dict(a)
    while k:
        if k & 1:
            out = poly_mul(out, base)
        k >>= 1
        if k:
            base = poly_mul(base, base)
    return out


def poly_diff(a: Poly, v: int) -> Poly:
    out: Poly = {}
    for e, c in a.items():
        k = e[v]
        if k:
            e2 = e[:v] + (k - 1,) + e[v + 1 :]
            out[e2] = out.get(e2, 0) + c * k
    return {e: c for e, c in out.items() if c}


def poly_eval(a: Poly, values: tuple) -> Fraction:
    total = Fraction(0)
    for e, c in a.items():
        term = Fraction(c)
        for val, k in zip(values, e):
            if k:
                term *= val**k
        total += term
    return total


def _deg_in(a: Poly, v: int) -> int:
    return max((e[v] for e in a), default=-1)


def _coeff_in(a: Poly, v: int, d: int) -> Poly:
    """Coefficient of x_v^d as a polynomial with the v-slot zeroed."""
    out: Poly = {}
    for e, c in a.items():
        if e[v] == d:
            out[e[:v] + (0,) + e[v + 1 :]] = c
    return out


def _shift_in(a: Poly, v: int, k: int) -> Poly:
    return {e[:v] + (e[v] + k,) + e[v + 1 :]: c for e, c in a.items()}


def _pseudo_rem(f: Poly, g: Poly, v: int) -> Poly:
    """Classical pseudo-remainder lc(g)^(deg f - deg g + 1) f mod g in x_v."""
    df = _deg_in(f, v)
    dg = _deg_in(g, v)
    delta = df - dg
    lg = _coeff_in(g, v, dg)
    r = f
    steps = 0
    while r:
        dr = _deg_in(r, v)
        if dr < dg:
            break
        lr = _coeff_in(r, v, dr)
        r = poly_sub(poly_mul(lg, r), poly_mul(_shift_in(lr, v, dr - dg), g))
        steps += 1
    for _ in range(delta + 1 - steps):
        r = poly_mul(lg, r)
    return r


def _int_content(a: Poly) -> int:
    g = 0
    for c in a.values():
        g = int_gcd(g, abs(c))
        if g == 1:
            return 1
    return g


def _monomial_gcd(a: Poly, b: Poly) -> Poly:
    """GCD when at least one operand is a single term: the integer content
    GCD times the componentwise-minimal exponent over every term."""
    mins = None
    for p in (a, b):
        for e in p:
            mins = e if mins is None else tuple(min(x, y) for x, y in zip(mins, e))
    return {mins: int_gcd(_int_content(a), _int_content(b))}


def _content_in(a: Poly, v: int, vs: tuple) -> Poly:
    """GCD of the x_v-coefficients of a (a polynomial free of x_v)."""
    cont: Poly = {}
    for d in range(_deg_in(a, v) + 1):
        cd = _coeff_in(a, v, d)
        if cd:
            cont = _gcd_rec(cont, cd, vs)
            lead = poly_lead(cont)
            if lead is not None and sum(lead[0]) == 0 and lead[1] == 1:
                break  # content is already 1
    return cont


def _subresultant_pp_gcd(f: Poly, g: Poly, v: int) -> Poly:
    """GCD of two x_v-primitive polynomials, by the subresultant sequence.

    Content extraction happens once at the end instead of at every step,
    which keeps the remainder sequence cheap (Collins/Brown/Traub).
    """
    rest = tuple(i for i in range(len(next(iter(f)))) if i != v)
    one = poly_const(len(next(iter(f))), 1)
    gg = one
    hh = one
    while True:
        delta = _deg_in(f, v) - _deg_in(g, v)
        r = _pseudo_rem(f, g, v)
        if not r:
            break
        if _deg_in(r, v) == 0:
            return one  # primitive inputs with a constant-in-x_v remainder are coprime
        f, g = g, poly_divexact(r, poly_mul(gg, _poly_pow_raw(hh, delta)))
        gg = _coeff_in(f, v, _deg_in(f, v))
        if delta == 0:
            pass  # h unchanged
        elif delta == 1:
            hh = gg
        else:
            hh = poly_divexact(_poly_pow_raw(gg, delta), _poly_pow_raw(hh, delta - 1))
    pp = poly_divexact(g, _content_in(g, v, rest))
    return pp


def _poly_pow_raw(a: Poly, k: int) -> Poly:
    out = poly_const(len(next(iter(a))), 1)
    base = a
    while k:
        if k & 1:
            out = poly_mul(out, base)
        k >>= 1
        if k:
            base = poly_mul(base, base)
    return out


def _gcd_rec(a: Poly, b: Poly, vs: tuple) -> Poly:
    if not a:
        return normalize_sign(b)
    if not b:
        return normalize_sign(a)
    if a == b:
        return normalize_sign(a)
    if len(a) == 1 or len(b) == 1:
        return _monomial_gcd(a, b)
    used = tuple(v for v in vs if poly_appears(a, v) or poly_appears(b, v))
    if not used:
        nvars = len(next(iter(a)))
        return poly_const(nvars, int_gcd(next(iter(a.values())), next(iter(b.values()))))
    v, rest = used[0], used[1:]

    cont_a = _content_in(a, v, rest) if poly_appears(a, v) else dict(a)
    cont_b = _content_in(b, v, rest) if poly_appears(b, v) else dict(b)
    cont = _gcd_rec(cont_a, cont_b, rest)
    pa = poly_divexact(a, cont_a)
    pb = poly_divexact(b, cont_b)

    f, g = (pa, pb) if _deg_in(pa, v) >= _deg_in(pb, v) else (pb, pa)
    if _deg_in(g, v) == 0:
        # one part is free of x_v, and both are primitive: coprime
        return normalize_sign(cont)
    pp = _subresultant_pp_gcd(f, g, v)
    return normalize_sign(poly_mul(cont, pp))


# -- heuristic GCD -----------------------------------------------------------
#
# Evaluate both polynomials at a large integer point, take the integer GCD,
# reconstruct a candidate from its balanced base-xi digits, and accept it only
# if it divides both inputs exactly.  Coprime inputs (the common case when
# canonicalizing fractions) cost one evaluation and one integer GCD.  When the
# heuristic keeps failing, the subresultant remainder sequence decides.


def _eval_var(p: Poly, v: int, xi: int) -> Poly:
    out: Poly = {}
    for e, c in p.items():
        key = e[:v] + (0,) + e[v + 1 :]
        out[key] = out.get(key, 0) + c * xi ** e[v]
    return {e: c for e, c in out.items() if c}


def _interp_var(p: Poly, v: int, xi: int) -> Poly:
    """Inverse of evaluation at xi, using balanced digits in (-xi/2, xi/2]."""
    out: Poly = {}
    cur = dict(p)
    k = 0
    half = xi // 2
    while cur:
        nxt: Poly = {}
        for e, c in cur.items():
            d = c % xi
            if d > half:
                d -= xi
            if d:
                out[e[:v] + (k,) + e[v + 1 :]] = d
            q = (c - d) // xi
            if q:
                nxt[e] = q
        cur = nxt
        k += 1
    return out


def _max_norm(p: Poly) -> int:
    return max(abs(c) for c in p.values())


def _heu_gcd(a: Poly, b: Poly, vs: tuple):
    """Heuristic GCD; returns None when no candidate verified."""
    if not a:
        return normalize_sign(b)
    if not b:
        return normalize_sign(a)
    used = tuple(v for v in vs if poly_appears(a, v) or poly_appears(b, v))
    nvars = len(next(iter(a)))
    if not used:
        return poly_const(nvars, int_gcd(next(iter(a.values())), next(iter(b.values()))))
    v = used[0]

    ca, cb = _int_content(a), _int_content(b)
    cg = int_gcd(ca, cb)
    a0 = {e: c // ca for e, c in a.items()} if ca > 1 else a
    b0 = {e: c // cb for e, c in b.items()} if cb > 1 else b

    xi = 2 * min(_max_norm(a0), _max_norm(b0)) + 29
    for _ in range(6):
        av = _eval_var(a0, v, xi)
        bv = _eval_var(b0, v, xi)
        if av and bv:
            gv = _heu_gcd(av, bv, used[1:])
            if gv is not None:
                cand = _interp_var(gv, v, xi)
                if cand:
                    cc = _int_content(cand)
                    if cc > 1:
                        cand = {e: c // cc for e, c in cand.items()}
                    cand = normalize_sign(cand)
                    try:
                        poly_divexact(a0, cand)
                        poly_divexact(b0, cand)
                    except ValueError:
                        pass
                    else:
                        return normalize_sign(poly_mul_scalar(cand, cg))
        xi = 2 * xi + 29
    return None


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """GCD over the integers (content included), leading coefficient positive."""
    if not a:
        return normalize_sign(b)
    if not b:
        return normalize_sign(a)
    if a == b:
        return normalize_sign(a)
    if len(a) == 1 or len(b) == 1:
        return _monomial_gcd(a, b)
    nvars = len(next(iter(a)))
    vs = tuple(range(nvars))
    g = _heu_gcd(a, b, vs)
    if g is not None:
        return g
    return _gcd_rec(a, b, vs)


__all__ = [
    "poly_add",
    "poly_sub",
    "poly_neg",
    "poly_mul",
    "poly_mul_scalar",
    "poly_mul_term",
    "poly_lead",
    "poly_divexact",
    "poly_const",
    "poly_var",
    "poly_sorted_terms",
    "poly_appears",
    "poly_total_degree",
    "normalize_sign",
    "poly_pow",
    "poly_diff",
    "poly_eval",
    "poly_gcd",
]
