"""Integer primality and budgeted factorization.

Primality is deterministic below 2**64 (Miller-Rabin with the first twelve
prime bases) and Baillie-PSW above, where a pass is reported as "probable".
Factoring is trial division followed by Brent's variant of Pollard rho; both
stop at the configured budget and leave an honest unfactored cofactor.
"""

from dataclasses import dataclass
from math import gcd, isqrt

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_DETERMINISTIC_LIMIT = 1 << 64


def _strong_probable_prime(n, a):
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def _jacobi(a, n):
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def _strong_lucas(n):
    # Selfridge method A parameters
    D = 5
    while True:
        j = _jacobi(D, n)
        if j == -1:
            break
        if j == 0 and abs(D) != n:
            return False
        D = -D - 2 if D > 0 else -D + 2
        if D == 13 and isqrt(n) ** 2 == n:
            return False
    P, Q = 1, (1 - D) // 4
    d, s = n + 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    U, V, Qk = 0, 2, 1
    inv2 = pow(2, -1, n)
    for bit in bin(d)[2:]:
        U, V = U * V % n, (V * V - 2 * Qk) % n
        Qk = Qk * Qk % n
        if bit == "1":
            U, V = (P * U + V) * inv2 % n, (D * U + P * V) * inv2 % n
            Qk = Qk * Q % n
    if U == 0 or V == 0:
        return True
    for _ in range(s - 1):
        V = (V * V - 2 * Qk) % n
        Qk = Qk * Qk % n
        if V == 0:
            return True
    return False


def is_prime(n):
    """True for primes (probable primes above 2**64), False otherwise."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    if n < _DETERMINISTIC_LIMIT:
        return all(_strong_probable_prime(n, a) for a in _SMALL_PRIMES)
    return _strong_probable_prime(n, 2) and _strong_lucas(n)


def is_proven_prime(n):
    """Primality with a proof (deterministic range only)."""
    return n < _DETERMINISTIC_LIMIT and is_prime(n)


def next_prime(n):
    n = max(n + 1, 2)
    while not is_prime(n):
        n += 1
    return n


def primes_up_to(n):
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, isqrt(n) + 1):
        if sieve[i]:
            sieve[i * i::i] = bytearray(len(range(i * i, n + 1, i)))
    return [i for i, v in enumerate(sieve) if v]


def integer_root(n, k):
    """Return r with r**k == n if n is a perfect k-th power, else None."""
    if n < 0:
        return None
    if n < 2:
        return n
    r = 1 << ((n.bit_length() + k - 1) // k)
    while True:
        nr = ((k - 1) * r + n // r ** (k - 1)) // k
        if nr >= r:
            break
        r = nr
    for c in (r - 1, r, r + 1):
        if c >= 0 and c ** k == n:
            return c
    return None


@dataclass(frozen=True)
class FactorBudget:
    """Effort limits: trial division bound and Pollard-rho iterations per split."""

    trial_limit: int = 100_000
    rho_iterations: int = 200_000

    @classmethod
    def from_int(cls, budget):
        return cls(trial_limit=min(budget, 1_000_000), rho_iterations=budget)


@dataclass(frozen=True)
class FactorizationResult:
    """|n| = prod(p**e for p, e in factors) * cofactor."""

    n: int
    factors: tuple = ()
    cofactor: int = 1
    probable: tuple = ()
    status: str = "complete"

    def primes(self):
        return [p for p, _ in self.factors]

    def exponent(self, p):
        for q, e in self.factors:
            if q == p:
                return e
        return 0

    def reassemble(self):
        out = self.cofactor
        for p, e in self.factors:
            out *= p ** e
        return out


_trial_primes_cache = {}


def _trial_primes(limit):
    if limit not in _trial_primes_cache:
        _trial_primes_cache.clear()
        _trial_primes_cache[limit] = primes_up_to(limit)
    return _trial_primes_cache[limit]


def pollard_brent(n, max_iterations, seed=1):
    """A nontrivial factor of composite n, or None when the budget runs out."""
    if n % 2 == 0:
        return 2
    c = seed
    spent = 0
    while spent < max_iterations:
        y, r, q, g = 2, 1, 1, 1
        m = 128
        x = ys = y
        while g == 1 and spent < max_iterations:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = gcd(q, n)
                k += m
            spent += r
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = gcd(abs(x - ys), n)
        if 1 < g < n:
            return g
        c += 1
    return None


def int_factor(n, budget=None, hints=()):
    """Budgeted factorization of a nonzero integer.

    ``hints`` are candidate primes divided out first (useful when the caller
    already knows likely factors).  Listed primes pass :func:`is_prime`;
    those above 2**64 are also recorded in ``probable``.
    """
    if n == 0:
        raise ValueError("cannot factor 0")
    budget = budget or FactorBudget()
    m = abs(n)
    found = {}

    def add(p, e=1):
        found[p] = found.get(p, 0) + e

    for p in sorted(set(hints)):
        if p > 1 and m % p == 0 and is_prime(p):
            while m % p == 0:
                m //= p
                add(p)
    for p in _trial_primes(budget.trial_limit):
        if p * p > m:
            break
        if m % p == 0:
            while m % p == 0:
                m //= p
                add(p)
    leftovers = []
    stack = [m] if m > 1 else []
    while stack:
        c = stack.pop()
        if c == 1:
            continue
        if is_prime(c):
            add(c)
            continue
        split = _perfect_power(c)
        if split:
            base, k = split
            stack.extend([base] * k)
            continue
        f = pollard_brent(c, budget.rho_iterations)
        if f is None:
            leftovers.append(c)
        else:
            stack.extend([f, c // f])
    cof = 1
    for c in leftovers:
        cof *= c
    factors = tuple(sorted(found.items()))
    probable = tuple(p for p, _ in factors if p >= _DETERMINISTIC_LIMIT)
    return FactorizationResult(
        n=n, factors=factors, cofactor=cof, probable=probable,
        status="complete" if cof == 1 else "partial",
    )


def _perfect_power(n):
    for k in (2, 3, 5, 7, 11, 13):
        if 2 ** k > n:
            break
        r = integer_root(n, k)
        if r is not None:
            return r, k
    return None
