"""Polynomials over GF(p) as plain coefficient lists (index = degree).

The zero polynomial is []; every nonempty list has a nonzero last entry.
All functions return fresh lists and never mutate their arguments.
"""

import random


def trim(a):
    a = list(a)
    while a and not a[-1]:
        a.pop()
    return a


def reduce(f, p):
    """Reduce an integer (or p-integral rational) coefficient sequence mod p."""
    out = []
    for c in f:
        if isinstance(c, int):
            out.append(c % p)
        else:
            out.append(c.numerator * pow(c.denominator, -1, p) % p)
    return trim(out)


def add(a, b, p):
    if len(a) < len(b):
        a, b = b, a
    return trim([(x + y) % p for x, y in zip(a, b)] + list(a[len(b):]))


def sub(a, b, p):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return trim([(x - y) % p for x, y in zip(a, b)])


def mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return trim([c % p for c in out])


def scale(a, c, p):
    return trim([x * c % p for x in a])


def divmod_(a, b, p):
    if not b:
        raise ZeroDivisionError("division by the zero polynomial mod p")
    r = list(a)
    db = len(b) - 1
    if len(r) - 1 < db:
        return [], trim(r)
    inv = pow(b[-1], -1, p)
    q = [0] * (len(r) - db)
    for k in range(len(r) - 1 - db, -1, -1):
        c = r[k + db] * inv % p
        q[k] = c
        if c:
            for j in range(db + 1):
                r[k + j] = (r[k + j] - c * b[j]) % p
    return trim(q), trim(r[:db])


def rem(a, b, p):
    return divmod_(a, b, p)[1]


def monic(a, p):
    if not a:
        return []
    inv = pow(a[-1], -1, p)
    return [c * inv % p for c in a]


def gcd(a, b, p):
    a, b = trim(a), trim(b)
    while b:
        a, b = b, rem(a, b, p)
    return monic(a, p)


def deriv(a, p):
    return trim([i * c % p for i, c in enumerate(a)][1:])


def is_squarefree(a, p):
    """True iff a (nonconstant or constant) has no repeated factor over GF(p)-bar."""
    a = trim(a)
    if len(a) <= 2:
        return True
    return len(gcd(a, deriv(a, p), p)) == 1


def powmod(base, e, mod, p):
    result = [1]
    base = rem(base, mod, p)
    while e:
        if e & 1:
            result = rem(mul(result, base, p), mod, p)
        e >>= 1
        if e:
            base = rem(mul(base, base, p), mod, p)
    return result


def _pth_root(a, p):
    # a(x) = b(x^p) = b(x)^p over GF(p)
    return trim(a[::p])


def squarefree_decomposition(a, p):
    """Complete squarefree decomposition over GF(p), any p (handles f' = 0).

    Returns [(g, i)] with g monic squarefree, pairwise coprime, i increasing.
    """
    a = monic(trim(a), p)
    out = {}
    _sqf_rec(a, p, 1, out)
    return sorted(((g, i) for i, g in out.items() if len(g) > 1), key=lambda t: t[1])


def _sqf_rec(f, p, mult, out):
    if len(f) <= 1:
        return
    fp = deriv(f, p)
    if not fp:
        _sqf_rec(_pth_root(f, p), p, mult * p, out)
        return
    c = gcd(f, fp, p)
    w = divmod_(f, c, p)[0]
    i = 1
    while len(w) > 1:
        y = gcd(w, c, p)
        z = divmod_(w, y, p)[0]
        if len(z) > 1:
            prev = out.get(i * mult)
            out[i * mult] = mul(prev, z, p) if prev else monic(z, p)
        i += 1
        w = y
        c = divmod_(c, y, p)[0]
    if len(c) > 1:
        _sqf_rec(_pth_root(c, p), p, mult * p, out)


def roots(a, p, rng=None):
    """Distinct roots in GF(p) of a nonzero polynomial, sorted."""
    a = monic(trim(a), p)
    if len(a) <= 1:
        return []
    if p < 64:
        return [x for x in range(p) if _eval(a, x, p) == 0]
    # split off the product of linear factors: gcd(a, x^p - x)
    g = gcd(a, sub(powmod([0, 1], p, a, p), [0, 1], p), p)
    out = []
    _split_linear(g, p, rng or random.Random(p), out)
    return sorted(out)


def _eval(a, x, p):
    acc = 0
    for c in reversed(a):
        acc = (acc * x + c) % p
    return acc


def _split_linear(g, p, rng, out):
    if len(g) <= 1:
        return
    if len(g) == 2:
        out.append(-g[0] * pow(g[1], -1, p) % p)
        return
    if p == 2:
        out.extend(x for x in range(2) if _eval(g, x, p) == 0)
        return
    while True:
        shift = rng.randrange(p)
        h = powmod([shift, 1], (p - 1) // 2, g, p)
        d = gcd(g, sub(h, [1], p), p)
        if 1 < len(d) < len(g):
            _split_linear(d, p, rng, out)
            _split_linear(divmod_(g, d, p)[0], p, rng, out)
            return


def _prime_factors_small(n):
    out, q = [], 2
    while q * q <= n:
        if n % q == 0:
            out.append(q)
            while n % q == 0:
                n //= q
        q += 1
    if n > 1:
        out.append(n)
    return out


def is_irreducible(a, p):
    """Rabin's irreducibility test over GF(p)."""
    a = monic(trim(a), p)
    n = len(a) - 1
    if n <= 0:
        return False
    if n == 1:
        return True
    x = [0, 1]
    for q in _prime_factors_small(n):
        h = powmod(x, p ** (n // q), a, p)
        if len(gcd(a, sub(h, x, p), p)) > 1:
            return False
    return not sub(powmod(x, p ** n, a, p), x, p)
