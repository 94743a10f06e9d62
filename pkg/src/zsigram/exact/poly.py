"""Dense univariate polynomials over exact coefficient rings.

A polynomial a_0 + a_1 x + ... + a_n x^n is stored as the tuple
(a_0, a_1, ..., a_n) with a_n nonzero; the zero polynomial is ().

Coefficients may be ``int``, ``Fraction``, another ``Poly`` (a polynomial in
t, used for Q[t][x]) or any exact field element supporting the arithmetic
operators and ``bool()``.  Mixing coefficient levels is the caller's job:
a ``Poly`` added to a ``Poly`` is always added coefficientwise, so scalars
that are themselves polynomials must go through :meth:`Poly.scale` or
:meth:`Poly.const`.
"""

from fractions import Fraction
from math import gcd, lcm

_KRONECKER_MIN = 24


def exdiv(a, b):
    """Exact quotient a / b in the coefficient domain of a and b."""
    if isinstance(a, int) and isinstance(b, int):
        q, r = divmod(a, b)
        if r:
            raise ArithmeticError(f"{b} does not divide {a}")
        return q
    if isinstance(a, Poly) or isinstance(b, Poly):
        if not isinstance(a, Poly):
            a = Poly.const(a)
        if not isinstance(b, Poly):
            b = Poly.const(b)
        return a.exquo(b)
    return a / b


def fdiv(a, b):
    """Field division that never degrades two ints to a float."""
    if isinstance(a, int) and isinstance(b, int):
        if a % b == 0:
            return a // b
        return Fraction(a, b)
    return a / b


def _is_int_tuple(c):
    return all(type(v) is int for v in c)


def _kronecker_mul(a, b):
    # pack both operands into big integers, multiply once, unpack signed digits
    ma = max(abs(v) for v in a)
    mb = max(abs(v) for v in b)
    bits = ma.bit_length() + mb.bit_length() + min(len(a), len(b)).bit_length() + 2
    nbytes = (bits + 7) // 8
    bits = 8 * nbytes

    def pack(c):
        pos = b"".join(max(v, 0).to_bytes(nbytes, "little") for v in c)
        neg = b"".join(max(-v, 0).to_bytes(nbytes, "little") for v in c)
        return int.from_bytes(pos, "little") - int.from_bytes(neg, "little")

    prod = pack(a) * pack(b)
    sign = 1
    if prod < 0:
        prod, sign = -prod, -1
    n = len(a) + len(b) - 1
    raw = prod.to_bytes(nbytes * (n + 1), "little")
    half = 1 << (bits - 1)
    full = 1 << bits
    out = []
    carry = 0
    for i in range(n):
        r = int.from_bytes(raw[i * nbytes:(i + 1) * nbytes], "little") + carry
        if r >= half:
            r -= full
            carry = 1
        else:
            carry = 0
        out.append(sign * r)
    return out


class Poly:
    """Immutable dense polynomial; see the module docstring for conventions."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        if isinstance(coeffs, Poly):
            self.coeffs = coeffs.coeffs
            return
        c = list(coeffs)
        while c and not c[-1]:
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def const(cls, c):
        return cls((c,))

    @classmethod
    def gen(cls):
        return cls((0, 1))

    @classmethod
    def monomial(cls, n, c=1):
        return cls([0] * n + [c])

    # -- basic accessors -------------------------------------------------

    def degree(self):
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def lc(self):
        return self.coeffs[-1] if self.coeffs else 0

    def __getitem__(self, i):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return 0

    def __iter__(self):
        return iter(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    def is_constant(self):
        return len(self.coeffs) <= 1

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if not self.coeffs:
            return other == 0
        return len(self.coeffs) == 1 and self.coeffs[0] == other

    def __hash__(self):
        if not self.coeffs:
            return hash(0)
        if len(self.coeffs) == 1:
            return hash(self.coeffs[0])
        return hash(self.coeffs)

    # -- ring operations -------------------------------------------------

    def _defers_to(self, other):
        # a t-polynomial meeting an element of Q(t) becomes an element of Q(t);
        # a polynomial that already has Q(t) coefficients treats it as a scalar
        return getattr(other, "_absorbs_poly", False) and not any(
            getattr(c, "_absorbs_poly", False) for c in self.coeffs)

    def __add__(self, other):
        if self._defers_to(other):
            return NotImplemented
        if not isinstance(other, Poly):
            if not other:
                return self
            if not self.coeffs:
                return Poly((other,))
            return Poly((self.coeffs[0] + other,) + self.coeffs[1:])
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return Poly([x + y for x, y in zip(a, b)] + list(a[len(b):]))

    __radd__ = __add__

    def __neg__(self):
        return Poly([-c for c in self.coeffs])

    def __sub__(self, other):
        if self._defers_to(other):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        """Multiply every coefficient by the scalar c (which may be a Poly)."""
        if not c:
            return Poly()
        return Poly([a * c for a in self.coeffs])

    def __mul__(self, other):
        if self._defers_to(other):
            return NotImplemented
        if not isinstance(other, Poly):
            return self.scale(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly()
        if (min(len(a), len(b)) >= _KRONECKER_MIN
                and _is_int_tuple(a) and _is_int_tuple(b)):
            return Poly(_kronecker_mul(a, b))
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                out[i + j] += x * y
        return Poly(out)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly((1,))
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self):
        return Poly([i * c for i, c in enumerate(self.coeffs)][1:])

    def compose(self, g):
        """self(g(x)), with g a Poly at the same level as self."""
        acc = Poly()
        for c in reversed(self.coeffs):
            acc = acc * g + Poly.const(c)
        return acc

    def shift(self, a):
        """self(x + a) by repeated synthetic division (Taylor shift)."""
        c = list(self.coeffs)
        n = len(c)
        for i in range(n):
            for j in range(n - 2, i - 1, -1):
                c[j] = c[j] + a * c[j + 1]
        return Poly(c)

    def map(self, fn):
        return Poly([fn(c) for c in self.coeffs])

    # -- division --------------------------------------------------------

    def __divmod__(self, other):
        """Euclidean division; requires field coefficients (or exact quotients)."""
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        db = other.degree()
        lb = other.lc()
        if len(r) - 1 < db:
            return Poly(), self
        q = [0] * (len(r) - db)
        bc = other.coeffs
        for k in range(len(r) - 1 - db, -1, -1):
            c = r[k + db]
            if not c:
                continue
            c = fdiv(c, lb)
            q[k] = c
            for j in range(db + 1):
                r[k + j] = r[k + j] - c * bc[j]
        return Poly(q), Poly(r[:db])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exquo(self, other):
        """Exact quotient over an integral domain; raises if not divisible."""
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        db = other.degree()
        lb = other.lc()
        if not r:
            return Poly()
        if len(r) - 1 < db:
            raise ArithmeticError("inexact polynomial division")
        q = [0] * (len(r) - db)
        bc = other.coeffs
        for k in range(len(r) - 1 - db, -1, -1):
            c = r[k + db]
            if not c:
                continue
            c = exdiv(c, lb)
            q[k] = c
            for j in range(db + 1):
                r[k + j] = r[k + j] - c * bc[j]
        if any(r[:db]):
            raise ArithmeticError("inexact polynomial division")
        return Poly(q)

    def prem(self, other):
        """Pseudo-remainder: lc(other)^(deg self - deg other + 1) * self mod other."""
        db = other.degree()
        delta = self.degree() - db + 1
        if delta <= 0:
            return self
        lb = other.lc()
        r = list(self.coeffs)
        bc = other.coeffs
        for k in range(len(r) - 1 - db, -1, -1):
            c = r[k + db]
            r = [v * lb for v in r]
            if c:
                for j in range(db + 1):
                    r[k + j] = r[k + j] - c * bc[j]
            r.pop()
            delta -= 1
        return Poly(r)

    def monic(self):
        if not self.coeffs:
            return self
        lc = self.coeffs[-1]
        if lc == 1:
            return self
        return Poly([fdiv(c, lc) for c in self.coeffs])

    # -- printing --------------------------------------------------------

    def to_str(self, var="x", inner="t"):
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            if isinstance(c, Poly):
                terms = sum(1 for v in c.coeffs if v)
                lead = c.lc()
                neg = terms == 1 and isinstance(lead, (int, Fraction)) and lead < 0
                cs = (-c if neg else c).to_str(inner)
                if terms > 1:
                    cs = f"({cs})"
            else:
                neg = isinstance(c, (int, Fraction)) and c < 0
                cs = _scalar_str(-c if neg else c)
            if i == 0:
                term = cs
            else:
                mono = var if i == 1 else f"{var}^{i}"
                term = mono if cs == "1" else f"{cs}*{mono}"
            parts.append(("-" if neg else "+", term))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for s, term in parts[1:]:
            out += f" {s} {term}"
        return out

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"Poly({list(self.coeffs)!r})"


def _scalar_str(c):
    if isinstance(c, Fraction):
        return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"
    s = str(c)
    if not isinstance(c, int) and any(ch in s for ch in "+- "):
        return f"({s})"
    return s


# -- rational coefficient helpers -------------------------------------------

def is_rational_poly(f):
    return all(isinstance(c, (int, Fraction)) for c in f.coeffs)


def rational_primitive(f):
    """Split f in Q[x] as content * g with g integral, primitive, lc(g) > 0."""
    if not f:
        return Fraction(0), Poly()
    den = 1
    for c in f.coeffs:
        if isinstance(c, Fraction):
            den = lcm(den, c.denominator)
    ints = [int(c * den) for c in f.coeffs]
    g = 0
    for v in ints:
        g = gcd(g, v)
    if ints[-1] < 0:
        g = -g
    return Fraction(g, den), Poly([v // g for v in ints])


def int_content(f):
    g = 0
    for c in f.coeffs:
        g = gcd(g, c)
    return g


def primitive_part(f):
    """Integral primitive part with positive leading coefficient."""
    return rational_primitive(f)[1]


def gcd_euclid(f, g):
    """Monic gcd by the plain Euclidean algorithm (any exact field)."""
    while g:
        f, g = g, f % g
    return f.monic()


def gcd_rational(f, g):
    """Monic gcd in Q[x] via the primitive PRS over Z."""
    if not f:
        return g.monic()
    if not g:
        return f.monic()
    a = primitive_part(f)
    b = primitive_part(g)
    if a.degree() < b.degree():
        a, b = b, a
    while b:
        r = a.prem(b)
        a = b
        b = primitive_part(r) if r else r
    return a.monic()


def subresultant_resultant(A, B, content=None):
    """Resultant over an integral domain by the subresultant PRS.

    Convention: Res(A, B) = lc(A)^deg(B) * prod_{A(r)=0} B(r).
    ``content`` maps a polynomial to a nonzero domain element dividing all of
    its coefficients (pass None to skip content extraction).
    """
    if not A or not B:
        raise ValueError("resultant of the zero polynomial")
    da, db = A.degree(), B.degree()
    if da == 0:
        return A.lc() ** db
    if db == 0:
        return B.lc() ** da
    s = 1
    if da < db:
        A, B = B, A
        da, db = db, da
        if da % 2 and db % 2:
            s = -1
    t = 1
    if content is not None:
        ca, cb = content(A), content(B)
        A = A.map(lambda c: exdiv(c, ca))
        B = B.map(lambda c: exdiv(c, cb))
        t = ca ** db * cb ** da
    g = 1
    h = 1
    while True:
        da, db = A.degree(), B.degree()
        delta = da - db
        if da % 2 and db % 2:
            s = -s
        R = A.prem(B)
        A = B
        if not R:
            return 0 * t
        B = R.map(lambda c: exdiv(c, g * h ** delta))
        g = A.lc()
        if delta == 0:
            pass
        elif delta == 1:
            h = g
        else:
            h = exdiv(g ** delta, h ** (delta - 1))
        if B.degree() <= 0:
            break
    dA = A.degree()
    lcB = B.lc()
    if dA == 1:
        h = lcB
    else:
        h = exdiv(lcB ** dA, h ** (dA - 1))
    return s * t * h


def yun(f, gcd_fn):
    """Yun's squarefree decomposition over a field of characteristic 0
    (or characteristic p > deg f).  Returns [(g_i, i)] with g_i monic,
    squarefree, pairwise coprime and nonconstant, i increasing."""
    out = []
    fp = f.derivative()
    a = gcd_fn(f, fp)
    b = f // a
    c = fp // a
    d = c - b.derivative()
    i = 1
    while b.degree() > 0:
        a = gcd_fn(b, d)
        b = b // a
        c = d // a
        d = c - b.derivative()
        if a.degree() > 0:
            out.append((a.monic(), i))
        i += 1
    return out


def ext_gcd(f, g):
    """(h, s, u) with s*f + u*g = h, h the monic gcd; field coefficients."""
    r0, r1 = f, g
    s0, s1 = Poly.const(1), Poly()
    u0, u1 = Poly(), Poly.const(1)
    while r1:
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        u0, u1 = u1, u0 - q * u1
    lc = r0.lc()
    inv = fdiv(1, lc) if isinstance(lc, (int, Fraction)) else 1 / lc
    return r0.scale(inv), s0.scale(inv), u0.scale(inv)
