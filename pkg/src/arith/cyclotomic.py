"""
Exact arithmetic in the cyclotomic field Q(zeta_N).

Elements are kept in the power basis 1, z, ..., z^(phi(N)-1), reduced modulo
the N-th cyclotomic polynomial Phi_N. Because Phi_N is monic with integer
coefficients, a vector of integers stays integral under reduction, so an
element is stored as integer numerators over one positive common
denominator. The reduced form is canonical: equality and rationality are
decided coefficient-wise.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache, reduce
from typing import Any, Dict, Iterable, List, Mapping, Sequence, Tuple, Union

import numpy as np
from sympy import Poly, QQ, Rational as SymRational, cyclotomic_poly, symbols, totient

from src.errors import InvalidInputError, NotRationalError

Rational = Union[int, Fraction]

_z = symbols("z")


@lru_cache(maxsize=None)
def phi(n: int) -> int:
    return int(totient(n))


@lru_cache(maxsize=None)
def cyclotomic_coeffs(n: int) -> Tuple[int, ...]:
    """Coefficients of Phi_n, lowest degree first."""
    p = Poly(cyclotomic_poly(n, _z), _z)
    return tuple(int(c) for c in reversed(p.all_coeffs()))


@lru_cache(maxsize=None)
def _power_table(n: int) -> Tuple[Tuple[int, ...], ...]:
    """Reduced integer coefficient vectors of z^j for j = 0..n-1."""
    d = phi(n)
    poly = cyclotomic_coeffs(n)
    rows: List[Tuple[int, ...]] = []
    cur = [0] * d
    cur[0] = 1
    for _ in range(n):
        rows.append(tuple(cur))
        # multiply by z: shift up, then fold z^d = -sum(poly[i] z^i)
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            for i in range(d):
                cur[i] -= top * poly[i]
    return tuple(rows)


def _reduce_long(n: int, coeffs: Sequence[int]) -> List[int]:
    """Reduce an integer polynomial of degree < 2n to the power basis."""
    d = phi(n)
    out = list(coeffs[:d]) + [0] * max(0, d - len(coeffs))
    table = _power_table(n)
    for k in range(d, len(coeffs)):
        c = coeffs[k]
        if c:
            row = table[k % n]
            for i in range(d):
                if row[i]:
                    out[i] += c * row[i]
    return out


def _normalise(nums: Sequence[int], den: int) -> Tuple[Tuple[int, ...], int]:
    if den == 0:
        raise ZeroDivisionError("zero denominator")
    if den < 0:
        nums = [-x for x in nums]
        den = -den
    g = reduce(math.gcd, nums, den)
    if g > 1:
        nums = [x // g for x in nums]
        den //= g
    return tuple(nums), den


class CyclotomicNumber:
    __slots__ = ("conductor", "_nums", "_den")

    def __init__(self, conductor: int, nums: Sequence[int], den: int = 1):
        if conductor < 1:
            raise InvalidInputError(f"conductor must be positive, got {conductor}")
        if len(nums) != phi(conductor):
            raise InvalidInputError(f"expected {phi(conductor)} coefficients for conductor {conductor}, got {len(nums)}")
        self.conductor = conductor
        self._nums, self._den = _normalise(list(nums), den)

    # ---- constructors ---------------------------------------------------

    @classmethod
    def from_coeffs(cls, conductor: int, coeffs: Sequence[Rational]) -> "CyclotomicNumber":
        """Build from any-length rational coefficients of 1, z, z^2, ... (reduced here)."""
        fracs = [Fraction(c) for c in coeffs]
        den = reduce(lambda a, b: a * b // math.gcd(a, b), (f.denominator for f in fracs), 1)
        ints = [int(f * den) for f in fracs]
        # fold exponents >= conductor first: z^N = 1
        folded = [0] * conductor
        for k, c in enumerate(ints):
            folded[k % conductor] += c
        return cls(conductor, _reduce_long(conductor, folded), den)

    @classmethod
    def from_rational(cls, conductor: int, q: Rational) -> "CyclotomicNumber":
        q = Fraction(q)
        nums = [0] * phi(conductor)
        nums[0] = q.numerator
        return cls(conductor, nums, q.denominator)

    @classmethod
    def zero(cls, conductor: int) -> "CyclotomicNumber":
        return cls(conductor, [0] * phi(conductor))

    @classmethod
    def one(cls, conductor: int) -> "CyclotomicNumber":
        return cls.from_rational(conductor, 1)

    @classmethod
    def from_exponents(cls, conductor: int, counts: Mapping[int, Rational]) -> "CyclotomicNumber":
        """sum c_j * z^j for a sparse map j -> c_j (j taken mod the conductor)."""
        d = phi(conductor)
        table = _power_table(conductor)
        fracs: Dict[int, Fraction] = {}
        for j, c in counts.items():
            if c:
                fracs[j % conductor] = fracs.get(j % conductor, Fraction(0)) + Fraction(c)
        den = reduce(lambda a, b: a * b // math.gcd(a, b), (f.denominator for f in fracs.values()), 1)
        out = [0] * d
        for j, f in fracs.items():
            c = int(f * den)
            row = table[j]
            for i in range(d):
                if row[i]:
                    out[i] += c * row[i]
        return cls(conductor, out, den)

    # ---- views ----------------------------------------------------------

    @property
    def coeffs(self) -> Tuple[Fraction, ...]:
        return tuple(Fraction(x, self._den) for x in self._nums)

    def is_zero(self) -> bool:
        return not any(self._nums)

    def is_rational(self) -> bool:
        return not any(self._nums[1:])

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise NotRationalError(f"not rational in Q(zeta_{self.conductor}): {self}")
        return Fraction(self._nums[0], self._den)

    def to_complex(self) -> complex:
        d = len(self._nums)
        roots = np.exp(2j * np.pi * np.arange(d) / self.conductor)
        return complex(np.dot(np.array(self._nums, dtype=float), roots) / self._den)

    # ---- field embedding ------------------------------------------------

    def embed(self, m: int) -> "CyclotomicNumber":
        """Image in Q(zeta_m) via zeta_N = zeta_m^(m/N)."""
        if m % self.conductor:
            raise InvalidInputError(f"cannot embed Q(zeta_{self.conductor}) into Q(zeta_{m}): {self.conductor} does not divide {m}")
        if m == self.conductor:
            return self
        step = m // self.conductor
        return CyclotomicNumber.from_exponents(
            m, {k * step: Fraction(x, self._den) for k, x in enumerate(self._nums) if x}
        )

    def _coerce(self, other: Any) -> Tuple["CyclotomicNumber", "CyclotomicNumber"]:
        if isinstance(other, CyclotomicNumber):
            if other.conductor == self.conductor:
                return self, other
            m = self.conductor * other.conductor // math.gcd(self.conductor, other.conductor)
            return self.embed(m), other.embed(m)
        if isinstance(other, (int, Fraction)):
            return self, CyclotomicNumber.from_rational(self.conductor, other)
        raise TypeError(f"cannot combine CyclotomicNumber with {type(other).__name__}")

    # ---- arithmetic -----------------------------------------------------

    def __add__(self, other: Any) -> "CyclotomicNumber":
        try:
            a, b = self._coerce(other)
        except TypeError:
            return NotImplemented
        den = a._den * b._den
        nums = [x * b._den + y * a._den for x, y in zip(a._nums, b._nums)]
        return CyclotomicNumber(a.conductor, nums, den)

    __radd__ = __add__

    def __neg__(self) -> "CyclotomicNumber":
        return CyclotomicNumber(self.conductor, [-x for x in self._nums], self._den)

    def __sub__(self, other: Any) -> "CyclotomicNumber":
        try:
            a, b = self._coerce(other)
        except TypeError:
            return NotImplemented
        return a + (-b)

    def __rsub__(self, other: Any) -> "CyclotomicNumber":
        return (-self) + other

    def __mul__(self, other: Any) -> "CyclotomicNumber":
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return CyclotomicNumber(self.conductor, [x * q.numerator for x in self._nums], self._den * q.denominator)
        try:
            a, b = self._coerce(other)
        except TypeError:
            return NotImplemented
        d = len(a._nums)
        prod = [0] * (2 * d - 1)
        for i, x in enumerate(a._nums):
            if x:
                for j, y in enumerate(b._nums):
                    if y:
                        prod[i + j] += x * y
        return CyclotomicNumber(a.conductor, _reduce_long(a.conductor, prod), a._den * b._den)

    __rmul__ = __mul__

    def inverse(self) -> "CyclotomicNumber":
        if self.is_zero():
            raise ZeroDivisionError(f"division by zero in Q(zeta_{self.conductor})")
        if self.is_rational():
            return CyclotomicNumber.from_rational(self.conductor, 1 / self.as_rational())
        modulus = Poly(list(reversed(cyclotomic_coeffs(self.conductor))), _z, domain=QQ)
        f = Poly([SymRational(x, self._den) for x in reversed(self._nums)], _z, domain=QQ)
        inv = f.invert(modulus)
        coeffs = [Fraction(int(c.p), int(c.q)) for c in reversed(inv.all_coeffs())]
        return CyclotomicNumber.from_coeffs(self.conductor, coeffs)

    def __truediv__(self, other: Any) -> "CyclotomicNumber":
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return self * (1 / Fraction(other))
        if isinstance(other, CyclotomicNumber):
            a, b = self._coerce(other)
            return a * b.inverse()
        return NotImplemented

    def __rtruediv__(self, other: Any) -> "CyclotomicNumber":
        return self.inverse() * other

    def __pow__(self, e: int) -> "CyclotomicNumber":
        if not isinstance(e, int):
            return NotImplemented
        base = self if e >= 0 else self.inverse()
        result = CyclotomicNumber.one(self.conductor)
        k = abs(e)
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # ---- Galois action --------------------------------------------------

    def galois(self, a: int) -> "CyclotomicNumber":
        """The automorphism zeta -> zeta^a, gcd(a, N) = 1."""
        n = self.conductor
        if math.gcd(a, n) != 1:
            raise InvalidInputError(f"galois({a}) needs gcd({a}, {n}) = 1")
        return CyclotomicNumber.from_exponents(
            n, {(a * k) % n: Fraction(x, self._den) for k, x in enumerate(self._nums) if x}
        )

    def conjugate(self) -> "CyclotomicNumber":
        return self.galois(-1 % self.conductor if self.conductor > 1 else 0)

    def norm(self) -> Fraction:
        """Field norm down to Q."""
        n = self.conductor
        units = [a for a in range(1, n + 1) if math.gcd(a, n) == 1]
        result = reduce(lambda acc, a: acc * self.galois(a), units, CyclotomicNumber.one(n))
        return result.as_rational()

    def trace(self) -> Fraction:
        n = self.conductor
        units = [a for a in range(1, n + 1) if math.gcd(a, n) == 1]
        total = reduce(lambda acc, a: acc + self.galois(a), units, CyclotomicNumber.zero(n))
        return total.as_rational()

    # ---- comparison / text ------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.as_rational() == other
        if not isinstance(other, CyclotomicNumber):
            return NotImplemented
        a, b = self._coerce(other)
        return a._nums == b._nums and a._den == b._den

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"CyclotomicNumber({self})"

    def __str__(self) -> str:
        terms = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            q = f"{c.numerator}/{c.denominator}" if c.denominator != 1 else str(c.numerator)
            terms.append(q if k == 0 else f"{q}*z" if k == 1 else f"{q}*z^{k}")
        body = " + ".join(terms) if terms else "0"
        return f"{body}  (mod Phi_{self.conductor})"

    def to_json(self) -> Dict[str, Any]:
        return {"conductor": self.conductor, "coeffs": [f"{c.numerator}/{c.denominator}" for c in self.coeffs]}

    @classmethod
    def from_json(cls, payload: Mapping[str, Any]) -> "CyclotomicNumber":
        try:
            n = int(payload["conductor"])
            coeffs = [Fraction(str(c)) for c in payload["coeffs"]]
        except (KeyError, ValueError, TypeError) as e:
            raise InvalidInputError(f"malformed cyclotomic document: {e}") from e
        return cls.from_coeffs(n, coeffs)


def root_of_unity(n: int, j: int) -> CyclotomicNumber:
    return CyclotomicNumber.from_exponents(n, {j % n: 1})


def csum(values: Iterable[CyclotomicNumber], conductor: int) -> CyclotomicNumber:
    """Left-to-right sum; the order is the caller's, so results are reproducible."""
    return reduce(lambda acc, x: acc + x, values, CyclotomicNumber.zero(conductor))
