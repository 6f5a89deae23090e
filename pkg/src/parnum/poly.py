"""Exact polynomial arithmetic over Z and Q with Sturm-based root counting.

A polynomial is an immutable tuple of coefficients, constant term first.
The empty tuple is the zero polynomial; the leading coefficient of a
nonzero polynomial is never zero.  All arithmetic is exact: integers are
arbitrary precision and evaluation points are ints or Fractions.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction


def normalize(coeffs) -> tuple:
    """Trim trailing zero coefficients and return a tuple."""
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def degree(p) -> int:
    """Degree of p, with the zero polynomial at -1."""
    return len(p) - 1


def is_monic(p) -> bool:
    return bool(p) and p[-1] == 1


def constant(c):
    return normalize((c,))


def add(p, q):
    n = max(len(p), len(q))
    return normalize(
        (p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)
    )


def neg(p):
    return tuple(-c for c in p)


def sub(p, q):
    return add(p, neg(q))


def mul(p, q):
    if not p or not q:
        return ()
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return normalize(out)


def scale(p, c):
    if c == 0:
        return ()
    return tuple(a * c for a in p)


def evaluate(p, x):
    """Horner evaluation; exact for int or Fraction arguments."""
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def derivative(p):
    return normalize(i * c for i, c in enumerate(p) if i > 0)


def divmod_frac(p, q):
    """Rational polynomial division: p = q * quot + rem with deg rem < deg q."""
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    rem = [Fraction(c) for c in p]
    quot = [Fraction(0)] * max(0, len(p) - len(q) + 1)
    dq = degree(q)
    lead = Fraction(q[-1])
    for k in range(len(rem) - 1, dq - 1, -1):
        if rem[k] == 0:
            continue
        f = rem[k] / lead
        quot[k - dq] = f
        for i in range(dq + 1):
            rem[k - dq + i] -= f * q[i]
    return normalize(quot), normalize(rem)


def div_exact_int(p, q):
    """Integer quotient p // q when the division is exact, else None."""
    quot, rem = divmod_frac(p, q)
    if rem:
        return None
    out = []
    for c in quot:
        if c.denominator != 1:
            return None
        out.append(c.numerator)
    return tuple(out)


def content(p) -> int:
    g = 0
    for c in p:
        g = math.gcd(g, abs(c))
    return g


def primitive(p):
    """Primitive part with positive leading coefficient."""
    if not p:
        return ()
    g = content(p)
    if p[-1] < 0:
        g = -g
    return tuple(c // g for c in p)


def poly_gcd(p, q):
    """gcd over Z[x], returned primitive with positive leading coefficient."""
    if not p:
        return primitive(q)
    if not q:
        return primitive(p)
    a, b = p, q
    while b:
        _, r = divmod_frac(a, b)
        a, b = b, r
    # a has Fraction coefficients once the loop ran; rescale to primitive Z[x]
    den = 1
    for c in a:
        den = den * Fraction(c).denominator // math.gcd(den, Fraction(c).denominator)
    ints = [int(Fraction(c) * den) for c in a]
    return primitive(ints)


def squarefree_part(p):
    """p with repeated roots collapsed; primitive, positive leading coefficient."""
    if not p:
        raise ValueError("zero polynomial has no squarefree part")
    pp = primitive(p)
    if degree(pp) <= 1:
        return pp
    g = poly_gcd(pp, derivative(pp))
    if degree(g) == 0:
        return pp
    quot, rem = divmod_frac(pp, g)
    assert not rem
    den = 1
    for c in quot:
        den = den * c.denominator // math.gcd(den, c.denominator)
    return primitive([int(c * den) for c in quot])


def is_squarefree(p) -> bool:
    return degree(poly_gcd(p, derivative(p))) == 0


def reverse(p):
    """x^deg(p) * p(1/x): the coefficient sequence reversed."""
    return normalize(reversed(p))


def cauchy_bound(p) -> Fraction:
    """Rational M with every root of p strictly inside |z| < M."""
    if degree(p) < 1:
        return Fraction(1)
    lead = abs(p[-1])
    m = max(abs(c) for c in p[:-1]) if len(p) > 1 else 0
    return 2 + Fraction(m, lead)


def sturm_chain(p):
    """Sturm chain of the squarefree part, with Fraction coefficients."""
    sf = squarefree_part(p)
    chain = [tuple(Fraction(c) for c in sf)]
    d = derivative(sf)
    if d:
        chain.append(tuple(Fraction(c) for c in d))
        while degree(chain[-1]) > 0:
            _, r = divmod_frac(chain[-2], chain[-1])
            if not r:
                break
            chain.append(neg(r))
    return chain


def _variations(chain, x) -> int:
    signs = []
    for q in chain:
        v = evaluate(q, x)
        if v != 0:
            signs.append(1 if v > 0 else -1)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_roots_open(p, a, b) -> int:
    """Distinct real roots of p in the open interval (a, b).

    Requires that neither endpoint is a root.
    """
    sf = squarefree_part(p)
    if evaluate(sf, a) == 0 or evaluate(sf, b) == 0:
        raise ValueError("interval endpoint is a root")
    if a >= b:
        return 0
    chain = sturm_chain(sf)
    return _variations(chain, a) - _variations(chain, b)


def count_real_roots(p) -> int:
    """Number of distinct real roots of p."""
    m = cauchy_bound(p)
    return count_roots_open(p, -m, m)


def count_positive_real_roots(p) -> int:
    """Distinct real roots in (0, inf); roots at 0 are discarded."""
    if not p:
        raise ValueError("zero polynomial")
    q = normalize(p)
    k = 0
    while q and q[0] == 0:
        q = q[1:]
        k += 1
    q = normalize(q)
    if degree(q) < 1:
        return 0
    m = cauchy_bound(q)
    return count_roots_open(q, Fraction(0), m)


def _half_trace_transform(g):
    """For palindromic g of degree 2m, the degree-m polynomial T with
    T(x + 1/x) = g(x) / x^m.  Uses the recursion for x^k + x^-k."""
    n = degree(g)
    assert n % 2 == 0 and n >= 2
    m = n // 2
    for i in range(n + 1):
        assert g[i] == g[n - i], "polynomial is not palindromic"
    # v[k] represents x^k + x^(-k) as a polynomial in w = x + 1/x
    v_prev = (2,)
    v_cur = (0, 1)
    t = constant(g[m])
    for k in range(1, m + 1):
        t = add(t, scale(v_cur, g[m + k]))
        v_prev, v_cur = v_cur, sub(mul((0, 1), v_cur), v_prev)
    return t


def count_unit_circle_roots(p) -> int:
    """Number of distinct roots of p with |z| = 1, decided exactly.

    Checks p(1) and p(-1), extracts the common factor of the squarefree
    part and its reversal, and counts conjugate pairs through the
    substitution w = x + 1/x restricted to real w in (-2, 2).
    """
    if not normalize(p):
        raise ValueError("zero polynomial")
    sf = squarefree_part(p)
    count = 0
    for pt in (1, -1):
        if evaluate(sf, pt) == 0:
            count += 1
    g = poly_gcd(sf, reverse(sf))
    for lin in ((-1, 1), (1, 1)):
        while True:
            q = div_exact_int(g, lin)
            if q is None:
                break
            g = q
    if degree(g) >= 2:
        t = _half_trace_transform(g)
        count += 2 * count_roots_open(t, Fraction(-2), Fraction(2))
    return count


def l2_norm_ceil(p) -> int:
    """Smallest integer >= the 2-norm of the coefficient vector."""
    s = sum(c * c for c in p)
    r = math.isqrt(s)
    return r if r * r == s else r + 1


def integer_roots(p, limit=10**12):
    """Integer roots of a monic integer polynomial, via the constant term.

    Returns None when the constant term is too large to factor cheaply.
    """
    if not p or not is_monic(p):
        return []
    if p[0] == 0:
        roots = [0]
        q = normalize(p[1:])
        while q and q[0] == 0:
            q = normalize(q[1:])
        rest = integer_roots(q) if degree(q) >= 1 else []
        if rest is None:
            return None
        return sorted(set(roots + rest))
    c = abs(p[0])
    if c > limit:
        return None
    divisors = set()
    f = 1
    while f * f <= c:
        if c % f == 0:
            divisors.update((f, c // f))
        f += 1
        if f > 10**6:
            return None
    roots = []
    for d in sorted(divisors):
        for r in (d, -d):
            if evaluate(p, r) == 0:
                roots.append(r)
    return sorted(roots)


def certify_irreducible(p, candidate_budget=500_000):
    """Brute-force irreducibility certificate for a monic integer polynomial.

    Enumerates every monic factor candidate of degree <= deg/2 inside the
    Mignotte coefficient bounds.  Returns True (irreducible), False
    (a factor was found) or None (enumeration exceeded the budget, so
    irreducibility stays uncertified).
    """
    d = degree(p)
    if d <= 1:
        return True
    if p[0] == 0:
        return False
    norm = l2_norm_ceil(p)
    for k in range(1, d // 2 + 1):
        bounds = [math.comb(k, i) * norm for i in range(k)]
        total = 1
        for b in bounds:
            total *= 2 * b + 1
            if total > candidate_budget:
                return None
        p0, p1, pm1 = p[0], evaluate(p, 1), evaluate(p, -1)
        for tail in itertools.product(*[range(-b, b + 1) for b in bounds]):
            cand = tail + (1,)
            c0 = cand[0]
            if c0 == 0 or p0 % c0 != 0:
                continue
            e1 = evaluate(cand, 1)
            if p1 != 0 and (e1 == 0 or p1 % e1 != 0):
                continue
            em1 = evaluate(cand, -1)
            if pm1 != 0 and (em1 == 0 or pm1 % em1 != 0):
                continue
            if div_exact_int(p, cand) is not None:
                return False
    return True
