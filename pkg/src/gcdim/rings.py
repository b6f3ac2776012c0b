"""Exact coefficient backends for series arithmetic.

Two interchangeable backends are provided:

* :class:`RationalRing` -- arbitrary-precision rationals
  (:class:`fractions.Fraction`), the reference implementation;
* :class:`ResidueRing` -- a multi-modular residue ring over a fixed
  :class:`PrimeBasis`, with Chinese-remainder reconstruction of integer
  results via :func:`crt_lift`.

Both backends expose the same small protocol used by
:mod:`gcdim.series`: scalar ring operations plus vectorised kernels on
dense ``(v, e)`` coefficient windows.  The residue backend stores a
window as an ``int64`` ndarray of shape ``(n_primes, v_max+1, e_max+1)``
so that the inner Cauchy-product loop is pure numpy.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import prod

import numpy as np

from .errors import DivisionByNonUnit, GcdimError

# Twenty 25-bit primes.  Residues and their pairwise products fit
# comfortably in int64 (25+25 bits plus room to accumulate ~8000 terms
# before a modular reduction), and the product exceeds 2^490, far above
# every integer this package ever reconstructs.
DEFAULT_PRIMES: tuple[int, ...] = (
    33554393, 33554383, 33554371, 33554347, 33554341,
    33554317, 33554291, 33554273, 33554267, 33554249,
    33554239, 33554221, 33554201, 33554167, 33554159,
    33554137, 33554123, 33554093, 33554083, 33554077,
)

_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_probable_prime(n: int) -> bool:
    """Miller-Rabin test, deterministic for n < 3.3e24."""
    if n < 2:
        return False
    for p in _MR_WITNESSES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class PrimeBasis:
    """An ordered tuple of distinct odd primes in (2^20, 2^62).

    Every prime must exceed any partition part (hence any factorial
    factor) occurring in the generating-function evaluation, and must be
    odd so that series square roots (division by 2) are defined.
    """

    primes: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.primes:
            raise GcdimError("prime basis must be nonempty")
        if len(set(self.primes)) != len(self.primes):
            raise GcdimError("prime basis must consist of distinct primes")
        for p in self.primes:
            if not (1 << 20) < p < (1 << 62):
                raise GcdimError(f"prime {p} outside the allowed range (2^20, 2^62)")
            if p % 2 == 0:
                raise GcdimError(f"prime {p} is even; series square roots need odd primes")
            if not is_probable_prime(p):
                raise GcdimError(f"{p} is not prime")

    @property
    def product(self) -> int:
        return prod(self.primes)

    @property
    def product_bits(self) -> int:
        return self.product.bit_length()

    def fingerprint(self) -> str:
        return "mod:" + ",".join(str(p) for p in self.primes)


DEFAULT_BASIS = PrimeBasis(DEFAULT_PRIMES)


def crt_lift(residues, basis: PrimeBasis) -> int:
    """Reconstruct the symmetric representative in (-M/2, M/2].

    ``residues`` may be a :class:`Residues`, a sequence of ints, or a
    numpy vector, one entry per prime of ``basis``.  The result is the
    unique preimage whenever the true integer has absolute value < M/2.
    """
    if isinstance(residues, Residues):
        residues = residues.vec
    vec = [int(r) for r in residues]
    if len(vec) != len(basis.primes):
        raise GcdimError("residue vector length does not match the prime basis")
    m = basis.product
    x = 0
    for r, p in zip(vec, basis.primes):
        q = m // p
        x += r * q * pow(q, -1, p)
    x %= m
    if x > m // 2:
        x -= m
    return x


class Residues:
    """A coefficient of the multi-modular backend: one residue per prime."""

    __slots__ = ("basis", "vec")

    def __init__(self, basis: PrimeBasis, vec) -> None:
        self.basis = basis
        self.vec = tuple(int(r) % p for r, p in zip(vec, basis.primes))
        if len(self.vec) != len(basis.primes):
            raise GcdimError("residue vector length does not match the prime basis")

    @classmethod
    def from_int(cls, basis: PrimeBasis, n: int) -> "Residues":
        return cls(basis, [n % p for p in basis.primes])

    @classmethod
    def from_fraction(cls, basis: PrimeBasis, q: Fraction) -> "Residues":
        den = q.denominator
        vec = []
        for p in basis.primes:
            if den % p == 0:
                raise DivisionByNonUnit(f"denominator {den} not invertible modulo {p}")
            vec.append(q.numerator * pow(den, -1, p) % p)
        return cls(basis, vec)

    def _check(self, other: "Residues") -> None:
        if self.basis is not other.basis and self.basis != other.basis:
            raise GcdimError("residues over different prime bases")

    def __add__(self, other: "Residues") -> "Residues":
        self._check(other)
        return Residues(self.basis, [a + b for a, b in zip(self.vec, other.vec)])

    def __sub__(self, other: "Residues") -> "Residues":
        self._check(other)
        return Residues(self.basis, [a - b for a, b in zip(self.vec, other.vec)])

    def __mul__(self, other: "Residues") -> "Residues":
        self._check(other)
        return Residues(self.basis, [a * b for a, b in zip(self.vec, other.vec)])

    def __neg__(self) -> "Residues":
        return Residues(self.basis, [-a for a in self.vec])

    def inverse(self) -> "Residues":
        vec = []
        for a, p in zip(self.vec, self.basis.primes):
            if a == 0:
                raise DivisionByNonUnit(f"residue 0 modulo {p} is not invertible")
            vec.append(pow(a, -1, p))
        return Residues(self.basis, vec)

    def __truediv__(self, other: "Residues") -> "Residues":
        return self * other.inverse()

    def lift(self) -> int:
        return crt_lift(self, self.basis)

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.vec)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Residues)
            and self.basis == other.basis
            and self.vec == other.vec
        )

    def __hash__(self) -> int:
        return hash((self.basis.primes, self.vec))

    def __repr__(self) -> str:
        return f"Residues({list(self.vec)})"


class RationalRing:
    """Reference backend: Fraction scalars, object-dtype windows."""

    label = "exact"

    def fingerprint(self) -> str:
        return "exact"

    # -- scalars -------------------------------------------------------

    def from_int(self, n: int) -> Fraction:
        return Fraction(n)

    def from_fraction(self, q: Fraction) -> Fraction:
        return Fraction(q)

    def scalar_inv(self, a: Fraction):
        if a == 0:
            raise DivisionByNonUnit("division by zero")
        return 1 / Fraction(a)

    def is_zero(self, a) -> bool:
        return a == 0

    def is_one(self, a) -> bool:
        return a == 1

    def to_fraction(self, a) -> Fraction:
        return Fraction(a)

    def public_scalar(self, a):
        return Fraction(a)

    # -- dense windows -------------------------------------------------

    def zeros(self, v_size: int, e_size: int) -> np.ndarray:
        arr = np.empty((v_size, e_size), dtype=object)
        arr[:] = 0
        return arr

    def get(self, arr: np.ndarray, v: int, e: int):
        return arr[v, e]

    def set(self, arr: np.ndarray, v: int, e: int, scalar) -> None:
        arr[v, e] = scalar

    def add_arrays(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return a + b

    def iadd_arrays(self, a: np.ndarray, b: np.ndarray) -> None:
        a += b

    def sub_arrays(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return a - b

    def neg_array(self, a: np.ndarray) -> np.ndarray:
        return -a

    def scale_array(self, a: np.ndarray, scalar) -> np.ndarray:
        return a * scalar

    def copy(self, a: np.ndarray) -> np.ndarray:
        return a.copy()

    def eq_arrays(self, a: np.ndarray, b: np.ndarray) -> bool:
        return bool(np.equal(a, b).all())

    def support_mask(self, a: np.ndarray) -> np.ndarray:
        return a != 0

    def shift(self, a: np.ndarray, dv: int, de: int) -> np.ndarray:
        vs, es = a.shape
        out = self.zeros(vs, es)
        if dv < vs and de < es:
            out[dv:, de:] = a[: vs - dv, : es - de]
        return out

    def mul_windows(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        vs, es = a.shape
        out = self.zeros(vs, es)
        ma, mb = a != 0, b != 0
        if ma.sum() > mb.sum():
            a, b, ma, mb = b, a, mb, ma
        rows = np.nonzero(mb.any(axis=1))[0]
        cols = np.nonzero(mb.any(axis=0))[0]
        if len(rows) == 0:
            return out
        bvlo, bvhi, belo, behi = rows[0], rows[-1], cols[0], cols[-1]
        for v1, e1 in zip(*np.nonzero(ma)):
            vhi = min(int(bvhi), vs - 1 - v1)
            ehi = min(int(behi), es - 1 - e1)
            if bvlo > vhi or belo > ehi:
                continue
            out[v1 + bvlo : v1 + vhi + 1, e1 + belo : e1 + ehi + 1] += (
                a[v1, e1] * b[bvlo : vhi + 1, belo : ehi + 1]
            )
        return out


class ResidueRing:
    """Performance backend: residue vectors over a fixed prime basis."""

    label = "modular"

    def __init__(self, basis: PrimeBasis = DEFAULT_BASIS) -> None:
        self.basis = basis
        self._p = np.array(basis.primes, dtype=np.int64).reshape(-1, 1, 1)
        # How many (p-1)^2 products fit in int64 before reduction.
        pmax = max(basis.primes)
        self._chunk = max(1, (2**63 - 1) // ((pmax - 1) ** 2))

    def fingerprint(self) -> str:
        return self.basis.fingerprint()

    # -- scalars (shape (n_primes,) int64 vectors internally) ----------

    def from_int(self, n: int) -> np.ndarray:
        return np.array([n % p for p in self.basis.primes], dtype=np.int64)

    def from_fraction(self, q: Fraction) -> np.ndarray:
        r = Residues.from_fraction(self.basis, q)
        return np.array(r.vec, dtype=np.int64)

    def scalar_inv(self, a: np.ndarray) -> np.ndarray:
        return np.array(
            Residues(self.basis, [int(x) for x in a]).inverse().vec, dtype=np.int64
        )

    def is_zero(self, a) -> bool:
        return not np.any(a)

    def is_one(self, a) -> bool:
        return bool(np.equal(a, 1).all())

    def to_fraction(self, a) -> Fraction:
        # Only exact for integer values; used by tests and table extraction.
        return Fraction(crt_lift([int(x) for x in a], self.basis))

    def public_scalar(self, a) -> Residues:
        return Residues(self.basis, [int(x) for x in a])

    # -- dense windows: int64 arrays of shape (n_primes, V, E) ---------

    def zeros(self, v_size: int, e_size: int) -> np.ndarray:
        return np.zeros((len(self.basis.primes), v_size, e_size), dtype=np.int64)

    def get(self, arr: np.ndarray, v: int, e: int) -> np.ndarray:
        return arr[:, v, e].copy()

    def set(self, arr: np.ndarray, v: int, e: int, scalar: np.ndarray) -> None:
        arr[:, v, e] = scalar

    def add_arrays(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return (a + b) % self._p

    def iadd_arrays(self, a: np.ndarray, b: np.ndarray) -> None:
        a += b
        a %= self._p

    def sub_arrays(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return (a - b) % self._p

    def neg_array(self, a: np.ndarray) -> np.ndarray:
        return (-a) % self._p

    def scale_array(self, a: np.ndarray, scalar: np.ndarray) -> np.ndarray:
        return a * scalar[:, None, None] % self._p

    def copy(self, a: np.ndarray) -> np.ndarray:
        return a.copy()

    def eq_arrays(self, a: np.ndarray, b: np.ndarray) -> bool:
        return bool(np.array_equal(a, b))

    def support_mask(self, a: np.ndarray) -> np.ndarray:
        return a.any(axis=0)

    def shift(self, a: np.ndarray, dv: int, de: int) -> np.ndarray:
        _, vs, es = a.shape
        out = self.zeros(vs, es)
        if dv < vs and de < es:
            out[:, dv:, de:] = a[:, : vs - dv, : es - de]
        return out

    def mul_windows(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        _, vs, es = a.shape
        out = self.zeros(vs, es)
        ma, mb = a.any(axis=0), b.any(axis=0)
        if ma.sum() > mb.sum():
            a, b, ma, mb = b, a, mb, ma
        rows = np.nonzero(mb.any(axis=1))[0]
        cols = np.nonzero(mb.any(axis=0))[0]
        if len(rows) == 0 or not ma.any():
            return out
        bvlo, bvhi, belo, behi = int(rows[0]), int(rows[-1]), int(cols[0]), int(cols[-1])
        vs1, es1 = zip(*np.argwhere(ma).tolist())
        pending = 0
        for v1, e1 in zip(vs1, es1):
            vhi = min(bvhi, vs - 1 - v1)
            ehi = min(behi, es - 1 - e1)
            if bvlo > vhi or belo > ehi:
                continue
            out[:, v1 + bvlo : v1 + vhi + 1, e1 + belo : e1 + ehi + 1] += (
                a[:, v1, e1][:, None, None] * b[:, bvlo : vhi + 1, belo : ehi + 1]
            )
            pending += 1
            if pending >= self._chunk:
                out %= self._p
                pending = 0
        out %= self._p
        return out
