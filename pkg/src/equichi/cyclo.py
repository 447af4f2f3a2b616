"""Exact arithmetic in cyclotomic fields Q(zeta_N).

Elements are stored in the power basis of Q[x]/(Phi_N(x)), where Phi_N is the
N-th cyclotomic polynomial, with Fraction coefficients.  Equality is
coefficient-wise after lifting both operands to the least common conductor.
All arithmetic is exact; there is no floating-point mode.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd

CONDUCTOR_CAP = 512


class NotRational(ArithmeticError):
    """Raised when a cyclotomic number expected to be rational is not."""


class ConductorTooLarge(ValueError):
    """Raised when a conductor beyond the cap is requested."""


def _poly_divmod_int(num, den):
    """Exact division of integer polynomials (lists, low degree first)."""
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(num) - len(den), -1, -1):
        c = num[i + len(den) - 1]
        if c % den[-1] != 0:
            raise ArithmeticError("non-exact polynomial division")
        q = c // den[-1]
        out[i] = q
        for j, d in enumerate(den):
            num[i + j] -= q * d
    if any(num):
        raise ArithmeticError("non-exact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n):
    """Coefficients of Phi_n (low degree first), via (x^n-1)/prod_{d|n, d<n} Phi_d."""
    if n < 1:
        raise ValueError("conductor must be positive")
    if n == 1:
        return (-1, 1)
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num = _poly_divmod_int(num, cyclotomic_polynomial(d))
    return tuple(num)


@lru_cache(maxsize=None)
def euler_phi(n):
    count = 0
    for k in range(1, n + 1):
        if gcd(k, n) == 1:
            count += 1
    return count


def _reduce_mod_phi(coeffs, n):
    """Reduce a Fraction coefficient list modulo Phi_n; return tuple of length phi(n)."""
    phi = cyclotomic_polynomial(n)
    deg = len(phi) - 1
    work = list(coeffs)
    for i in range(len(work) - 1, deg - 1, -1):
        c = work[i]
        if c:
            for j in range(len(phi)):
                work[i - deg + j] -= c * phi[j]
        work.pop()
    work += [Fraction(0)] * (deg - len(work))
    return tuple(Fraction(c) for c in work)


class Cyclotomic:
    """An exact element of Q(zeta_N) in the power basis of Q[x]/(Phi_N)."""

    __slots__ = ("conductor", "coeffs")

    def __init__(self, conductor, coeffs, reduce=True):
        if conductor < 1:
            raise ValueError("conductor must be positive")
        if conductor > CONDUCTOR_CAP:
            raise ConductorTooLarge(f"conductor {conductor} exceeds cap {CONDUCTOR_CAP}")
        self.conductor = conductor
        cs = [Fraction(c) for c in coeffs]
        if reduce:
            self.coeffs = _reduce_mod_phi(cs, conductor)
        else:
            self.coeffs = tuple(cs)

    @staticmethod
    def from_rational(q, conductor=1):
        q = Fraction(q)
        phi = euler_phi(conductor)
        return Cyclotomic(conductor, (q,) + (Fraction(0),) * (phi - 1), reduce=False)

    @staticmethod
    def zero(conductor=1):
        return Cyclotomic.from_rational(0, conductor)

    @staticmethod
    def one(conductor=1):
        return Cyclotomic.from_rational(1, conductor)

    @staticmethod
    def root_of_unity(n, j=1):
        """zeta_n^j in canonical form."""
        j %= n
        exps = {j: Fraction(1)}
        return Cyclotomic._from_exponents(n, exps)

    @staticmethod
    def _from_exponents(n, exps):
        """Build from a dict {exponent mod n: Fraction} using zeta^n = 1."""
        coeffs = [Fraction(0)] * n
        for e, c in exps.items():
            coeffs[e % n] += c
        return Cyclotomic(n, coeffs)

    def lift(self, m):
        """Embed into Q(zeta_m) for conductor | m."""
        n = self.conductor
        if m == n:
            return self
        if m % n != 0:
            raise ValueError("can only lift to a multiple of the conductor")
        k = m // n
        exps = {}
        for i, c in enumerate(self.coeffs):
            if c:
                exps[(i * k) % m] = exps.get((i * k) % m, Fraction(0)) + c
        return Cyclotomic._from_exponents(m, exps)

    def _pair(self, other):
        if not isinstance(other, Cyclotomic):
            other = Cyclotomic.from_rational(other)
        n = self.conductor * other.conductor // gcd(self.conductor, other.conductor)
        return self.lift(n), other.lift(n)

    def __add__(self, other):
        a, b = self._pair(other)
        return Cyclotomic(a.conductor,
                          tuple(x + y for x, y in zip(a.coeffs, b.coeffs)),
                          reduce=False)

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.conductor, tuple(-c for c in self.coeffs), reduce=False)

    def __sub__(self, other):
        return self + (-other if isinstance(other, Cyclotomic)
                       else -Cyclotomic.from_rational(other))

    def __rsub__(self, other):
        return Cyclotomic.from_rational(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Cyclotomic(self.conductor,
                              tuple(c * other for c in self.coeffs), reduce=False)
        a, b = self._pair(other)
        prod = [Fraction(0)] * (len(a.coeffs) + len(b.coeffs) - 1)
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        prod[i + j] += x * y
        return Cyclotomic(a.conductor, prod)

    __rmul__ = __mul__

    def conj(self):
        """Image under zeta_N -> zeta_N^{-1} (complex conjugation)."""
        n = self.conductor
        exps = {}
        for i, c in enumerate(self.coeffs):
            if c:
                exps[(-i) % n] = exps.get((-i) % n, Fraction(0)) + c
        return Cyclotomic._from_exponents(n, exps)

    def galois(self, j):
        """Image under zeta_N -> zeta_N^j for gcd(j, N) = 1."""
        n = self.conductor
        if gcd(j, n) != 1:
            raise ValueError("galois exponent must be coprime to the conductor")
        exps = {}
        for i, c in enumerate(self.coeffs):
            if c:
                exps[(i * j) % n] = exps.get((i * j) % n, Fraction(0)) + c
        return Cyclotomic._from_exponents(n, exps)

    def is_zero(self):
        return all(c == 0 for c in self.coeffs)

    def is_rational(self):
        return all(c == 0 for c in self.coeffs[1:])

    def to_rational(self):
        if not self.is_rational():
            raise NotRational(f"{self!r} is not rational")
        return self.coeffs[0]

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        a, b = self._pair(other)
        return a.coeffs == b.coeffs

    def __hash__(self):
        if self.is_rational():
            return hash(self.coeffs[0])
        # Power-basis coefficients change under conductor lifting, so equal
        # elements at different conductors cannot share a cheap structural
        # hash; collapse all irrational values into one bucket (correct, and
        # irrational values are never used as dict keys on hot paths).
        return hash("cyc-irrational")

    def __repr__(self):
        return f"Cyclotomic({self.conductor}, {[str(c) for c in self.coeffs]})"

    def to_json(self):
        return {"conductor": self.conductor,
                "coeffs": [str(c) for c in self.coeffs]}

    @staticmethod
    def from_json(obj):
        return Cyclotomic(obj["conductor"], [Fraction(c) for c in obj["coeffs"]])


def cyc_root(n, j):
    """Public constructor: zeta_n^j."""
    return Cyclotomic.root_of_unity(n, j)


def cyc_arith(a, b, op):
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


def cyc_conj(a):
    return a.conj()


def cyc_to_rational(a):
    return a.to_rational()
