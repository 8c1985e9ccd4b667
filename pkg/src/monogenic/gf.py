"""Polynomials over the prime field F_p, as ascending coefficient lists.

All functions take and return normalized lists (no trailing zeros, entries in
[0, p)). Factorization is squarefree decomposition, then distinct-degree, then
Cantor-Zassenhaus equal-degree splitting with a fixed seed so results are
reproducible.
"""

from __future__ import annotations

import random

Poly = list[int]


def norm(a: Poly, p: int) -> Poly:
    a = [c % p for c in a]
    while a and a[-1] == 0:
        a.pop()
    return a


def add(a: Poly, b: Poly, p: int) -> Poly:
    n = max(len(a), len(b))
    return norm([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)], p)


def sub(a: Poly, b: Poly, p: int) -> Poly:
    return add(a, [-c for c in b], p)


def mul(a: Poly, b: Poly, p: int) -> Poly:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return norm(out, p)


def monic(a: Poly, p: int) -> Poly:
    if not a:
        return []
    inv = pow(a[-1], -1, p)
    return [c * inv % p for c in a]


def divmod_(a: Poly, b: Poly, p: int) -> tuple[Poly, Poly]:
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    rem = list(a)
    db = len(b) - 1
    if len(rem) - 1 < db:
        return [], rem
    inv = pow(b[-1], -1, p)
    quot = [0] * (len(rem) - db)
    for k in range(len(rem) - 1, db - 1, -1):
        c = rem[k] * inv % p
        if c:
            quot[k - db] = c
            for j in range(db + 1):
                rem[k - db + j] = (rem[k - db + j] - c * b[j]) % p
    return norm(quot, p), norm(rem[:db], p)


def rem(a: Poly, b: Poly, p: int) -> Poly:
    return divmod_(a, b, p)[1]


def gcd(a: Poly, b: Poly, p: int) -> Poly:
    while b:
        a, b = b, rem(a, b, p)
    return monic(a, p)


def powmod(a: Poly, e: int, m: Poly, p: int) -> Poly:
    result: Poly = [1]
    base = rem(a, m, p)
    while e:
        if e & 1:
            result = rem(mul(result, base, p), m, p)
        base = rem(mul(base, base, p), m, p)
        e >>= 1
    return norm(result, p) if len(m) > 1 else []


def derivative(a: Poly, p: int) -> Poly:
    return norm([i * c for i, c in enumerate(a)][1:], p)


def multiplicity(f: Poly, g: Poly, p: int) -> int:
    """Largest t with g**t dividing f (f nonzero, deg g >= 1)."""
    t = 0
    while f:
        q, r = divmod_(f, g, p)
        if r:
            break
        f = q
        t += 1
    return t


def squarefree_decomposition(f: Poly, p: int) -> list[tuple[Poly, int]]:
    """Monic f = prod g_i**i with each g_i squarefree and pairwise coprime."""
    f = monic(f, p)
    out: list[tuple[Poly, int]] = []
    i = 1
    c = gcd(f, derivative(f, p), p)
    w = divmod_(f, c, p)[0]
    while len(w) > 1:
        y = gcd(w, c, p)
        z = divmod_(w, y, p)[0]
        if len(z) > 1:
            out.append((z, i))
        i += 1
        w = y
        c = divmod_(c, y, p)[0]
    if len(c) > 1:
        # c is a p-th power: take the p-th root coefficientwise
        root = [c[k] for k in range(0, len(c), p)]
        out.extend((g, e * p) for g, e in squarefree_decomposition(root, p))
    return out


def distinct_degree(f: Poly, p: int) -> list[tuple[Poly, int]]:
    """For squarefree monic f: [(product of all degree-d irreducible factors, d)]."""
    out = []
    x = [0, 1]
    h = x
    d = 0
    while len(f) - 1 >= 2 * (d + 1):
        d += 1
        h = powmod(h, p, f, p)
        g = gcd(f, sub(h, x, p), p)
        if len(g) > 1:
            out.append((g, d))
            f = divmod_(f, g, p)[0]
            h = rem(h, f, p)
    if len(f) > 1:
        out.append((f, len(f) - 1))
    return out


def equal_degree(f: Poly, d: int, p: int, rng: random.Random) -> list[Poly]:
    """Split squarefree monic f whose irreducible factors all have degree d."""
    n = len(f) - 1
    if n == d:
        return [f]
    while True:
        a = norm([rng.randrange(p) for _ in range(n)], p)
        if len(a) < 2:
            continue
        if p == 2:
            t, acc = a, a
            for _ in range(d - 1):
                t = rem(mul(t, t, p), f, p)
                acc = add(acc, t, p)
            g = gcd(f, acc, p)
        else:
            g = gcd(f, sub(powmod(a, (p**d - 1) // 2, f, p), [1], p), p)
        if 1 < len(g) < len(f):
            break
    return equal_degree(g, d, p, rng) + equal_degree(divmod_(f, g, p)[0], d, p, rng)


def factor(f: Poly, p: int, seed: int = 0) -> list[tuple[Poly, int]]:
    """Monic irreducible factors with multiplicities, sorted by (degree, coefficients)."""
    f = norm(f, p)
    if len(f) < 2:
        return []
    rng = random.Random(seed)
    out = []
    for g, e in squarefree_decomposition(f, p):
        for h, d in distinct_degree(g, p):
            out.extend((irr, e) for irr in equal_degree(h, d, p, rng))
    return sorted(out, key=lambda fe: (len(fe[0]), fe[0][::-1]))


def is_irreducible(f: Poly, p: int) -> bool:
    f = norm(f, p)
    if len(f) < 2:
        return False
    f = monic(f, p)
    if len(gcd(f, derivative(f, p), p)) > 1:
        return False
    dd = distinct_degree(f, p)
    return len(dd) == 1 and dd[0][1] == len(f) - 1
