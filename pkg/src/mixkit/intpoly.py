"""Dense integer polynomials as plain coefficient lists, constant term first.

The zero polynomial is the empty list and has degree -1.  All routines stay
in Z: division helpers either require a monic divisor or use pseudo-division,
so no rationals ever appear.  This module underpins both the cyclotomic zero
test and the mixing-time candidate machinery, which is why it is kept free of
any heavier dependencies.
"""

from __future__ import annotations

import math
from functools import lru_cache

Poly = list[int]


def trim(c: Poly) -> Poly:
    """Drop trailing zero coefficients (normal form)."""
    n = len(c)
    while n > 0 and c[n - 1] == 0:
        n -= 1
    return c[:n]


def degree(c: Poly) -> int:
    return len(trim(c)) - 1


def add(a: Poly, b: Poly) -> Poly:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, x in enumerate(b):
        out[i] += x
    return trim(out)


def neg(a: Poly) -> Poly:
    return [-x for x in a]


def sub(a: Poly, b: Poly) -> Poly:
    return add(a, neg(b))


def mul(a: Poly, b: Poly) -> Poly:
    a = trim(a)
    b = trim(b)
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return trim(out)


def scale(a: Poly, k: int) -> Poly:
    if k == 0:
        return []
    return [k * x for x in a]


def divmod_monic(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    """Quotient and remainder of a by monic b; stays in Z[X]."""
    b = trim(b)
    if not b or b[-1] != 1:
        raise ValueError("divisor must be monic")
    r = list(trim(a))
    db = len(b) - 1
    if db == 0:
        return trim(r), []
    q = [0] * max(len(r) - db, 0)
    for i in range(len(r) - 1, db - 1, -1):
        c = r[i]
        if c == 0:
            continue
        q[i - db] = c
        for j in range(db + 1):
            r[i - db + j] -= c * b[j]
    return trim(q), trim(r)


def divides_monic(b: Poly, a: Poly) -> bool:
    """True iff monic b divides a exactly in Z[X]."""
    _, r = divmod_monic(a, b)
    return not r


def content(a: Poly) -> int:
    g = 0
    for x in a:
        g = math.gcd(g, x)
        if g == 1:
            break
    return g


def primitive(a: Poly) -> Poly:
    """Primitive part with positive leading coefficient; [] for zero."""
    a = trim(a)
    if not a:
        return []
    c = content(a)
    if a[-1] < 0:
        c = -c
    return [x // c for x in a]


def gcd(a: Poly, b: Poly) -> Poly:
    """Gcd in Z[X], primitive with positive leading coefficient.

    Primitive pseudo-remainder sequence: integers only, content stripped at
    every step so coefficients stay tame at the sizes seen here.
    """
    a = primitive(a)
    b = primitive(b)
    if not a:
        return b
    if not b:
        return a
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = _prem(a, b)
        a, b = b, primitive(r)
    if len(a) == 1:
        return [1]
    return a


def _prem(a: Poly, b: Poly) -> Poly:
    # plain pseudo-remainder, used only inside gcd where content is
    # normalized immediately afterwards
    da, db = len(a) - 1, len(b) - 1
    if da < db:
        return list(a)
    lc = b[-1]
    r = list(a)
    for i in range(da, db - 1, -1):
        c = r[i]
        if c == 0:
            continue
        if lc != 1:
            for k in range(len(r)):
                r[k] *= lc
            c *= lc
        head = r[i] // lc
        for j in range(db + 1):
            r[i - db + j] -= head * b[j]
    return trim(r)


def gcd_many(polys) -> Poly:
    g: Poly = []
    for p in polys:
        g = gcd(g, p)
        if degree(g) == 0:
            break
    return g


def is_palindrome(a: Poly) -> bool:
    a = trim(a)
    return a == a[::-1]


def evaluate(a: Poly, x: int) -> int:
    v = 0
    for c in reversed(a):
        v = v * x + c
    return v


@lru_cache(maxsize=None)
def cyclotomic(n: int) -> tuple[int, ...]:
    """Coefficients of the n-th cyclotomic polynomial, constant term first.

    Computed by dividing X^n - 1 by the product of lower-index cyclotomic
    polynomials over the proper divisors of n.  lru_cache gives reuse and is
    safe under concurrent readers.
    """
    if n < 1:
        raise ValueError("cyclotomic index must be >= 1")
    from .arith import divisors

    num = [0] * (n + 1)
    num[0] = -1
    num[n] = 1
    den: Poly = [1]
    for d in divisors(n):
        if d < n:
            den = mul(den, list(cyclotomic(d)))
    q, r = divmod_monic(num, den)
    if r:
        raise AssertionError(f"cyclotomic({n}): non-exact division")
    return tuple(q)
