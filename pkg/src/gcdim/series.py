"""Truncated bivariate formal power series in s (vertices) and t (edges).

A :class:`BiSeries` keeps every coefficient with ``v <= v_max`` and
``e <= e_max`` (a rectangular window).  All inputs in this package have
nonnegative exponents in both variables, so the discarded monomials form
an ideal and every retained coefficient is exact.

Values are immutable: every operation returns a fresh series.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import (
    ConstantTermNotOne,
    ExponentOutOfWindow,
    NonUnitConstantTerm,
    PreconditionViolated,
    TruncationMismatch,
)
from .rings import RationalRing, ResidueRing


@dataclass(frozen=True)
class Truncation:
    """Window bounds: retain monomials s^v t^e with v <= v_max, e <= e_max."""

    v_max: int
    e_max: int

    def __post_init__(self) -> None:
        if self.v_max < 0 or self.e_max < 0:
            raise TruncationMismatch("truncation bounds must be nonnegative")

    @property
    def shape(self) -> tuple[int, int]:
        return (self.v_max + 1, self.e_max + 1)


class BiSeries:
    """A truncated series over one of the coefficient rings in gcdim.rings."""

    __slots__ = ("ring", "trunc", "_arr")

    def __init__(self, ring, trunc: Truncation, arr) -> None:
        self.ring = ring
        self.trunc = trunc
        self._arr = arr

    # -- construction ----------------------------------------------------

    @classmethod
    def zero(cls, ring, trunc: Truncation) -> "BiSeries":
        return cls(ring, trunc, ring.zeros(*trunc.shape))

    @classmethod
    def one(cls, ring, trunc: Truncation) -> "BiSeries":
        return cls.monomial(ring, trunc, 1, 0, 0)

    @classmethod
    def monomial(cls, ring, trunc: Truncation, coeff, v: int, e: int) -> "BiSeries":
        """The single-term series coeff * s^v t^e."""
        if not (0 <= v <= trunc.v_max and 0 <= e <= trunc.e_max):
            raise ExponentOutOfWindow(f"monomial s^{v} t^{e} outside window {trunc}")
        arr = ring.zeros(*trunc.shape)
        ring.set(arr, v, e, _coerce(ring, coeff))
        return cls(ring, trunc, arr)

    @classmethod
    def from_coeffs(cls, ring, trunc: Truncation, coeffs: dict) -> "BiSeries":
        """Build from a {(v, e): coefficient} mapping."""
        arr = ring.zeros(*trunc.shape)
        for (v, e), c in coeffs.items():
            if not (0 <= v <= trunc.v_max and 0 <= e <= trunc.e_max):
                raise ExponentOutOfWindow(f"coefficient at s^{v} t^{e} outside window")
            ring.set(arr, v, e, _coerce(ring, c))
        return cls(ring, trunc, arr)

    # -- inspection -------------------------------------------------------

    def coefficient(self, v: int, e: int):
        """Public coefficient: a Fraction (exact ring) or Residues (modular)."""
        if not (0 <= v <= self.trunc.v_max and 0 <= e <= self.trunc.e_max):
            raise ExponentOutOfWindow(f"(v, e) = ({v}, {e}) outside window")
        return self.ring.public_scalar(self.ring.get(self._arr, v, e))

    def constant_term(self):
        return self.ring.get(self._arr, 0, 0)

    def is_zero(self) -> bool:
        return not self.ring.support_mask(self._arr).any()

    def support(self) -> list[tuple[int, int]]:
        mask = self.ring.support_mask(self._arr)
        return [(int(v), int(e)) for v, e in zip(*mask.nonzero())]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, BiSeries)
            and self.trunc == other.trunc
            and self.ring.fingerprint() == other.ring.fingerprint()
            and self.ring.eq_arrays(self._arr, other._arr)
        )

    __hash__ = None

    def __repr__(self) -> str:
        terms = ", ".join(f"({v},{e})" for v, e in self.support()[:6])
        return f"BiSeries({self.ring.label}, {self.trunc}, support=[{terms}...])"

    # -- ring operations ---------------------------------------------------

    def _compat(self, other: "BiSeries") -> None:
        if self.trunc != other.trunc:
            raise TruncationMismatch(f"{self.trunc} vs {other.trunc}")
        if self.ring.fingerprint() != other.ring.fingerprint():
            raise TruncationMismatch("series over different coefficient rings")

    def __add__(self, other: "BiSeries") -> "BiSeries":
        self._compat(other)
        return BiSeries(self.ring, self.trunc, self.ring.add_arrays(self._arr, other._arr))

    def __sub__(self, other: "BiSeries") -> "BiSeries":
        self._compat(other)
        return BiSeries(self.ring, self.trunc, self.ring.sub_arrays(self._arr, other._arr))

    def __neg__(self) -> "BiSeries":
        return BiSeries(self.ring, self.trunc, self.ring.neg_array(self._arr))

    def scale(self, coeff) -> "BiSeries":
        return BiSeries(
            self.ring, self.trunc, self.ring.scale_array(self._arr, _coerce(self.ring, coeff))
        )

    def shift(self, dv: int, de: int = 0) -> "BiSeries":
        """Multiply by the monomial s^dv t^de."""
        if dv < 0 or de < 0:
            raise ExponentOutOfWindow("shift exponents must be nonnegative")
        return BiSeries(self.ring, self.trunc, self.ring.shift(self._arr, dv, de))

    def __mul__(self, other: "BiSeries") -> "BiSeries":
        self._compat(other)
        return BiSeries(self.ring, self.trunc, self.ring.mul_windows(self._arr, other._arr))

    def inverse(self) -> "BiSeries":
        """Multiplicative inverse; needs an invertible constant term.

        Newton iteration g <- g(2 - fg) doubles the correct filtration
        order each round, so ceil(log2(v_max + e_max + 1)) + 1 rounds
        suffice for the whole window.
        """
        c = self.constant_term()
        if self.ring.is_zero(c):
            raise NonUnitConstantTerm("constant term is zero")
        try:
            c_inv = self.ring.scalar_inv(c)
        except ZeroDivisionError as exc:  # residue with a zero component
            raise NonUnitConstantTerm(str(exc)) from exc
        g = BiSeries.monomial(self.ring, self.trunc, 1, 0, 0).scale_raw(c_inv)
        two = BiSeries.from_coeffs(self.ring, self.trunc, {(0, 0): 2})
        for _ in range(_newton_rounds(self.trunc)):
            g = g * (two - self * g)
        return g

    def scale_raw(self, scalar) -> "BiSeries":
        # Internal: scalar already in ring representation.
        return BiSeries(self.ring, self.trunc, self.ring.scale_array(self._arr, scalar))

    def sqrt_one(self) -> "BiSeries":
        """Principal square root of a series with constant term 1.

        Newton iteration g <- (g + f/g)/2 with the inverse recomputed
        exactly each round, so the correct filtration order doubles per
        round.  Requires 2 invertible in the ring (guaranteed: odd
        primes / rationals).  The result is verified by squaring.
        """
        if not self.ring.is_one(self.constant_term()):
            raise ConstantTermNotOne("square root needs constant term exactly 1")
        half = self.ring.from_fraction(Fraction(1, 2))
        g = BiSeries.one(self.ring, self.trunc)
        for _ in range(_newton_rounds(self.trunc)):
            g = (g + self * g.inverse()).scale_raw(half)
            if (g * g) == self:
                return g
        raise ConstantTermNotOne("square root iteration failed to converge")

    def pow(self, k: int) -> "BiSeries":
        """Integer power; negative k through the inverse."""
        if k < 0:
            return self.inverse().pow(-k)
        result = BiSeries.one(self.ring, self.trunc)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def pow_half(self, k: int) -> "BiSeries":
        """f^(k/2) for integer k; even k bypasses the square root."""
        if k % 2 == 0:
            return self.pow(k // 2)
        if not self.ring.is_one(self.constant_term()):
            raise ConstantTermNotOne("half-integer power needs constant term 1")
        return self.sqrt_one().pow(k)

    # -- debug dump --------------------------------------------------------

    def dump(self) -> str:
        """One line per monomial: 'v e num/den' or 'v e r1,r2,...'."""
        lines = []
        for v, e in self.support():
            c = self.coefficient(v, e)
            if isinstance(c, Fraction):
                lines.append(f"{v} {e} {c.numerator}/{c.denominator}")
            else:
                lines.append(f"{v} {e} " + ",".join(str(r) for r in c.vec))
        return "\n".join(lines) + ("\n" if lines else "")

    @classmethod
    def from_dump(cls, ring, trunc: Truncation, text: str) -> "BiSeries":
        arr = ring.zeros(*trunc.shape)
        for line in text.splitlines():
            line = line.strip()
            if not line:
                continue
            vs, es, payload = line.split()
            v, e = int(vs), int(es)
            if "/" in payload:
                num, den = payload.split("/")
                scalar = ring.from_fraction(Fraction(int(num), int(den)))
            else:
                vec = [int(x) for x in payload.split(",")]
                if not isinstance(ring, ResidueRing) or len(vec) != len(ring.basis.primes):
                    raise TruncationMismatch("dump does not match the coefficient ring")
                scalar = np.array(vec, dtype=np.int64)
            ring.set(arr, v, e, scalar)
        return cls(ring, trunc, arr)


def _newton_rounds(trunc: Truncation) -> int:
    d = trunc.v_max + trunc.e_max + 1
    rounds = 1
    while (1 << rounds) < d + 1:
        rounds += 1
    return rounds + 1


def _coerce(ring, coeff):
    if isinstance(coeff, Fraction):
        return ring.from_fraction(coeff)
    if isinstance(coeff, int):
        return ring.from_int(coeff)
    return coeff  # assume already a ring scalar


def monomial(ring, trunc: Truncation, coeff, v: int, e: int) -> BiSeries:
    """Module-level alias for BiSeries.monomial."""
    return BiSeries.monomial(ring, trunc, coeff, v, e)


def qpochhammer(a: BiSeries, q: BiSeries) -> BiSeries:
    """The truncated q-Pochhammer product prod_{k>=0} (1 - a q^k).

    Both arguments must have zero constant term and q must have strictly
    positive s- and t-degree in every monomial, so that a q^k eventually
    vanishes on the window and the product is exact there.
    """
    a._compat(q)
    ring, trunc = a.ring, a.trunc
    if not ring.is_zero(a.constant_term()) or not ring.is_zero(q.constant_term()):
        raise PreconditionViolated("q-Pochhammer arguments need zero constant term")
    for v, e in q.support():
        if v == 0 or e == 0:
            raise PreconditionViolated(
                "every monomial of q must have positive s- and t-exponent"
            )
    one = BiSeries.one(ring, trunc)
    result = one
    term = a
    while not term.is_zero():
        result = result * (one - term)
        term = term * q
    return result


def geometric_inverse(x: BiSeries) -> BiSeries:
    """1/(1-x) for a series with zero constant term, via the geometric sum."""
    ring, trunc = x.ring, x.trunc
    if not ring.is_zero(x.constant_term()):
        raise PreconditionViolated("geometric series needs zero constant term")
    one = BiSeries.one(ring, trunc)
    result = one
    term = x
    while not term.is_zero():
        result = result + term
        term = term * x
    return result
