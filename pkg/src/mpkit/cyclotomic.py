"""Exact arithmetic in the N-th cyclotomic field Q(zeta_N).

Elements are dense rational coordinate vectors modulo the N-th cyclotomic
polynomial.  N is the lcm of the phase denominators in play; N in {1, 2}
degenerates to plain rationals, which is the common fast case.
"""

from __future__ import annotations

from fractions import Fraction

from .phases import Phase


def cyclotomic_polynomial(n: int) -> list[int]:
    """Integer coefficients of Phi_n, low degree first, via recursive division."""
    if n == 1:
        return [-1, 1]
    poly = [0] * n + [1]
    poly[0] = -1  # x^n - 1
    for d in range(1, n):
        if n % d == 0:
            poly = _polydiv_exact(poly, cyclotomic_polynomial(d))
    return poly


def _polydiv_exact(num: list[int], den: list[int]) -> list[int]:
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for k in range(len(out) - 1, -1, -1):
        coef = num[k + len(den) - 1] // den[-1]
        out[k] = coef
        if coef:
            for i, d in enumerate(den):
                num[k + i] -= coef * d
    assert all(c == 0 for c in num), "non-exact polynomial division"
    return out


class CyclotomicField:
    """Q(zeta_N) with a precomputed reduction table for powers of zeta."""

    def __init__(self, n: int):
        self.n = max(1, int(n))
        phi = cyclotomic_polynomial(self.n)
        self.degree = len(phi) - 1
        self._phi = phi
        # powers[k] = coordinates of zeta^k in the basis 1,...,zeta^(deg-1)
        powers = []
        for k in range(2 * self.n):
            if k < self.degree:
                vec = [Fraction(0)] * self.degree
                vec[k] = Fraction(1)
            else:
                # zeta^k = zeta^(k-1) * zeta, reduce with Phi
                prev = powers[k - 1]
                vec = [Fraction(0)] + list(prev[:-1])
                lead = prev[-1]
                if lead:
                    for i in range(self.degree):
                        vec[i] -= lead * phi[i]
            powers.append(vec)
        self._powers = powers

    def zero(self) -> "Cyclo":
        return Cyclo(self, tuple([Fraction(0)] * self.degree))

    def one(self) -> "Cyclo":
        return self.root(0)

    def root(self, k: int) -> "Cyclo":
        """zeta_N^k as a field element."""
        return Cyclo(self, tuple(self._powers[k % self.n]))

    def from_phase(self, p: Phase) -> "Cyclo":
        q = p.exponent
        if self.n % q.denominator:
            raise ValueError(f"phase {p} not in mu_{self.n}")
        return self.root(q.numerator * (self.n // q.denominator))

    def from_exponent_counts(self, counts) -> "Cyclo":
        """Integer combination sum_k counts[k] * zeta^k, reduced."""
        vec = [Fraction(0)] * self.degree
        for k, c in enumerate(counts):
            if c:
                pw = self._powers[k % self.n]
                for i in range(self.degree):
                    vec[i] += c * pw[i]
        return Cyclo(self, tuple(vec))


class Cyclo:
    """An element of a fixed cyclotomic field."""

    __slots__ = ("field", "coords")

    def __init__(self, field: CyclotomicField, coords):
        self.field = field
        self.coords = tuple(coords)

    def __add__(self, other: "Cyclo") -> "Cyclo":
        return Cyclo(self.field, tuple(a + b for a, b in
                                       zip(self.coords, other.coords)))

    def __sub__(self, other: "Cyclo") -> "Cyclo":
        return Cyclo(self.field, tuple(a - b for a, b in
                                       zip(self.coords, other.coords)))

    def __neg__(self) -> "Cyclo":
        return Cyclo(self.field, tuple(-a for a in self.coords))

    def scale(self, q) -> "Cyclo":
        q = Fraction(q)
        return Cyclo(self.field, tuple(a * q for a in self.coords))

    def __mul__(self, other: "Cyclo") -> "Cyclo":
        deg = self.field.degree
        prod = [Fraction(0)] * (2 * deg - 1)
        for i, a in enumerate(self.coords):
            if not a:
                continue
            for j, b in enumerate(other.coords):
                if b:
                    prod[i + j] += a * b
        vec = [Fraction(0)] * deg
        powers = self.field._powers
        for k in range(len(prod) - 1, -1, -1):
            c = prod[k]
            if not c:
                continue
            if k < deg:
                vec[k] += c
            else:
                pw = powers[k]
                for i in range(deg):
                    vec[i] += c * pw[i]
        return Cyclo(self.field, tuple(vec))

    @property
    def is_zero(self) -> bool:
        return all(a == 0 for a in self.coords)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Cyclo) and self.field is other.field
                and self.coords == other.coords)

    def __hash__(self):
        return hash(self.coords)

    def inverse(self) -> "Cyclo":
        """Field inverse via the extended Euclidean algorithm mod Phi_N."""
        if self.is_zero:
            raise ZeroDivisionError("inverse of zero")
        phi = [Fraction(c) for c in self.field._phi]
        g, inv = _poly_xgcd(list(self.coords), phi)
        if len(g) != 1:
            raise ArithmeticError("element not invertible (unexpected)")
        scale = 1 / g[0]
        vec = [c * scale for c in inv]
        vec += [Fraction(0)] * (self.field.degree - len(vec))
        return Cyclo(self.field, tuple(vec[: self.field.degree]))

    def to_complex(self) -> complex:
        import cmath
        z = cmath.exp(2j * cmath.pi / self.field.n)
        out = 0j
        for i, a in enumerate(self.coords):
            out += float(a) * z ** i
        return out

    def __repr__(self):
        return f"Cyclo{self.coords}"


def _poly_trim(p):
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_divmod(a, b):
    a = list(a)
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    for k in range(len(q) - 1, -1, -1):
        coef = a[k + len(b) - 1] / b[-1]
        q[k] = coef
        if coef:
            for i, d in enumerate(b):
                a[k + i] -= coef * d
    return q, _poly_trim(a)


def _poly_xgcd(a, b):
    """Return (g, u) with u*a = g mod b, g the monic-ish gcd."""
    a = _poly_trim([Fraction(c) for c in a])
    b = _poly_trim([Fraction(c) for c in b])
    r0, r1 = b, a
    u0, u1 = [Fraction(0)], [Fraction(1)]
    while r1:
        q, r = _poly_divmod(r0, r1)
        r0, r1 = r1, r
        u0, u1 = u1, _poly_sub(u0, _poly_mul(q, u1))
    return r0, u0


def _poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1) if a and b else []
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _poly_trim(out)


def _poly_sub(a, b):
    out = [Fraction(0)] * max(len(a), len(b))
    for i, x in enumerate(a):
        out[i] += x
    for i, y in enumerate(b):
        out[i] -= y
    return _poly_trim(out)
