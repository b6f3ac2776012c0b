"""The four generating functions of graded graph-space dimensions.

`evaluate` sums, over integer partitions (j_1, j_2, ...), a product of
q-Pochhammer factors:

* one global prefactor per flavor;
* per part alpha: 1/<(-st)^a, (-st)^a> style self-factors, a ratio of two
  Pochhammers raised to j_m (even parts m) or j_m/2 (odd parts m, via the
  series square root), and for the starred flavors some extra scalar
  polynomial factors;
* over all ordered pairs (alpha, beta) of parts, a pairwise factor with
  exponent GCD(alpha, beta) * j_alpha * j_beta / 2 (the diagonal alpha ==
  beta included, which is what matches the brute-force counts);
* the scalar weight s^(alpha j_alpha) / (j_alpha! alpha^j_alpha), signed
  for the odd conventions.

The partition sum is organised as a depth-first walk that appends parts
in nonincreasing order, so each partition costs a handful of cached
series multiplications on top of its parent.

A second, independent route (`total_character_unrestricted`,
`dims_unrestricted`) evaluates the closed character products for the
spaces with no valence restriction; it shares nothing with the main path
and exists purely as a cross-check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import IntegralityError, PreconditionViolated
from .flavors import EVEN, EVEN_STAR, Flavor, ODD, ODD_STAR
from .partitions import Partition, iter_partitions
from .rings import RationalRing
from .series import BiSeries, Truncation, qpochhammer


@dataclass(frozen=True)
class GenFunResult:
    flavor: Flavor
    series: BiSeries

    @property
    def trunc(self) -> Truncation:
        return self.series.trunc

    def integer_table(self) -> list[list[int]]:
        """Coefficients as plain integers (CRT lift on the modular backend)."""
        trunc = self.series.trunc
        out = [[0] * (trunc.e_max + 1) for _ in range(trunc.v_max + 1)]
        for v, e in self.series.support():
            c = self.series.coefficient(v, e)
            if isinstance(c, Fraction):
                if c.denominator != 1:
                    raise IntegralityError(f"non-integer coefficient {c} at ({v}, {e})")
                value = c.numerator
            else:
                value = c.lift()
            out[v][e] = value
        return out


class Evaluator:
    """Evaluates one flavor's generating function on one window."""

    def __init__(self, flavor: Flavor, trunc: Truncation, ring=None) -> None:
        if flavor.min_valence != 3:
            raise PreconditionViolated("the closed formulas cover min valence 3 only")
        self.flavor = flavor
        self.trunc = trunc
        self.ring = ring if ring is not None else RationalRing()
        self._one = BiSeries.one(self.ring, trunc)
        self._pair_base: dict[int, BiSeries] = {}
        self._pair_pow: dict[tuple[int, int], BiSeries] = {}
        self._pair_half: dict[int, BiSeries] = {}
        self._part_unit: dict[int, BiSeries] = {}
        self._step: dict[tuple[int, int], BiSeries] = {}

    # -- pochhammer building blocks -------------------------------------

    def _mono(self, c: int, v: int, e: int) -> BiSeries:
        if v > self.trunc.v_max or e > self.trunc.e_max:
            return BiSeries.zero(self.ring, self.trunc)
        return BiSeries.monomial(self.ring, self.trunc, c, v, e)

    def _poch(self, a: BiSeries, q: BiSeries) -> BiSeries:
        return qpochhammer(a, q)

    def _one_minus(self, c: int, v: int, e: int) -> BiSeries:
        """1 - c s^v t^e, truncated."""
        return self._one - self._mono(c, v, e)

    def prefactor(self) -> BiSeries:
        st2 = self._mono(1, 2, 2)  # (st)^2
        f = self.flavor
        if f == EVEN:
            return self._poch(self._mono(1, 1, 0), st2) * self._poch(
                self._mono(-1, 1, 1), st2
            ).inverse()
        if f == EVEN_STAR:
            return self._poch(self._mono(1, 1, 0), st2) * self._poch(
                self._mono(-1, 3, 3), st2
            ).inverse()
        if f == ODD:
            return (
                self._poch(self._mono(-1, 1, 0), st2) * self._poch(self._mono(1, 2, 2), st2)
            ).inverse()
        if f == ODD_STAR:
            return (
                self._poch(self._mono(-1, 1, 0), st2) * self._poch(self._mono(1, 4, 4), st2)
            ).inverse()
        raise PreconditionViolated(f"no closed formula for flavor {f}")

    def _self_factor(self, m: int) -> BiSeries:
        """1 / <(-st)^m, (-st)^m>, shared by all four flavors."""
        neg_st_m = self._mono((-1) ** m, m, m)
        return self._poch(neg_st_m, neg_st_m).inverse()

    def _part_ratio(self, m: int) -> BiSeries:
        """The flavor's per-part Pochhammer ratio for a part of size m.

        For odd m the ratio enters with exponent j_m / 2 and for even m
        with exponent j_m; `part_unit` takes the square root in the odd
        case so that one factor per appended part is exact.
        """
        f = self.flavor
        if m % 2 == 1:
            q = self._mono(1, 2 * m, 2 * m)  # (st)^(2m)
            if f == EVEN:
                num = self._poch(self._mono(-1, 0, m), q)
                den = self._poch(self._mono(1, m, 2 * m), q)
            elif f == EVEN_STAR:
                num = self._poch(self._mono(-1, 2 * m, 3 * m), q)
                den = self._one_minus(-1, 0, m) * self._poch(self._mono(1, m, 2 * m), q)
            elif f == ODD:
                num = self._poch(self._mono(1, 0, m), q)
                den = self._poch(self._mono(-1, m, 2 * m), q)
            else:  # ODD_STAR
                num = self._poch(self._mono(1, 0, m), q)
                den = self._one_minus(1, 0, 2 * m) * self._poch(self._mono(-1, m, 2 * m), q)
            return num * den.inverse()
        h = m // 2
        q = self._mono(1, m, m)  # (st)^m
        if f == EVEN:
            num = self._poch(self._mono((-1) ** h, 0, h), q)
            den = self._poch(self._mono(1, h, m), q)
        elif f == EVEN_STAR:
            # numerator argument s^m (-t)^(3h); denominator carries 1 + (-t)^h
            num = self._poch(self._mono((-1) ** h, m, 3 * h), q)
            den = self._one_minus(-((-1) ** h), 0, h) * self._poch(self._mono(1, h, m), q)
        elif f == ODD:
            num = self._poch(self._mono(1, 0, h), q)
            den = self._poch(self._mono((-1) ** h, h, m), q)
        else:  # ODD_STAR, denominator carries 1 + t^m
            num = self._poch(self._mono(1, 0, h), q)
            den = self._one_minus(-1, 0, m) * self._poch(self._mono((-1) ** h, h, m), q)
        return num * den.inverse()

    def _extra_scalar(self, m: int) -> BiSeries | None:
        """odd*'s per-part polynomial factor (1 - (-s t^2)^m)."""
        if self.flavor == ODD_STAR:
            return self._one_minus((-1) ** m, m, 2 * m)
        return None

    def part_unit(self, m: int) -> BiSeries:
        """Everything one appended part of size m multiplies in, except
        the pairwise block and the scalar weight."""
        if m not in self._part_unit:
            unit = self._self_factor(m)
            extra = self._extra_scalar(m)
            if extra is not None:
                unit = unit * extra
            ratio = self._part_ratio(m)
            unit = unit * (ratio.sqrt_one() if m % 2 == 1 else ratio)
            self._part_unit[m] = unit
        return self._part_unit[m]

    def pair_base(self, ell: int) -> BiSeries:
        """The pairwise factor at LCM = ell (exponent 1)."""
        if ell not in self._pair_base:
            f = self.flavor
            arg_t = self._mono((-1) ** ell if f.convention == "even" else 1, 0, ell)
            arg_st = self._mono((-1) ** ell, ell, ell)
            poch = self._poch(arg_t, arg_st)
            if f.convention == "even":
                base = poch
            elif f == ODD_STAR:
                base = self._one_minus(1, 0, 2 * ell) * poch.inverse()
            else:
                base = poch.inverse()
            self._pair_base[ell] = base
        return self._pair_base[ell]

    def pair_power(self, ell: int, k: int) -> BiSeries:
        """pair_base(ell) ** k with incremental caching."""
        if k == 0:
            return self._one
        key = (ell, k)
        if key not in self._pair_pow:
            self._pair_pow[key] = self.pair_power(ell, k - 1) * self.pair_base(ell)
        return self._pair_pow[key]

    def pair_half(self, m: int) -> BiSeries:
        """pair_base(m) ** (m/2), the diagonal's half-step."""
        if m not in self._pair_half:
            if m % 2 == 0:
                self._pair_half[m] = self.pair_power(m, m // 2)
            else:
                self._pair_half[m] = self.pair_base(m).sqrt_one().pow(m)
        return self._pair_half[m]

    def _step_series(self, m: int, j_before: int) -> BiSeries:
        """Series factor for appending one more part m to a partition
        already containing j_before copies of m: part_unit times the
        diagonal pairwise increment base(m)^(m*j_before + m/2)."""
        key = (m, j_before)
        if key not in self._step:
            if j_before == 0:
                self._step[key] = self.part_unit(m) * self.pair_half(m)
            else:
                self._step[key] = self._step_series(m, j_before - 1) * self.pair_power(m, m)
        return self._step[key]

    def _scalar(self, q: Fraction):
        return self.ring.from_fraction(q)

    # -- single-partition term (direct construction; cross-check path) ----

    def partition_term(self, j: Partition) -> BiSeries:
        """The complete summand of one partition, computed independently
        of the DFS stepping (direct powers, pow_half for half-integers)."""
        if j.weight > self.trunc.v_max:
            return BiSeries.zero(self.ring, self.trunc)
        scalar = Fraction(1)
        for m, jm in j.items():
            scalar /= Fraction(math.factorial(jm)) * Fraction(m) ** jm
            if self.flavor.convention == "odd" and (m - 1) * jm % 2 == 1:
                scalar = -scalar
        term = BiSeries.one(self.ring, self.trunc).scale(scalar).shift(j.weight, 0)
        for m, jm in j.items():
            unit = self._self_factor(m)
            extra = self._extra_scalar(m)
            if extra is not None:
                unit = unit * extra
            term = term * unit.pow(jm)
            term = term * self._part_ratio(m).pow_half(jm if m % 2 == 1 else 2 * jm)
        parts = list(j.items())
        for a, ja in parts:
            for b, jb in parts:
                ell = math.lcm(a, b)
                term = term * self.pair_base(ell).pow_half(math.gcd(a, b) * ja * jb)
        return term

    # -- full evaluation --------------------------------------------------

    def evaluate(self, threads: int = 1) -> GenFunResult:
        total = self._sum_over_partitions(threads)
        return GenFunResult(self.flavor, total * self.prefactor())

    def _sum_over_partitions(self, threads: int = 1) -> BiSeries:
        w_max = self.trunc.v_max
        if w_max == 0:
            return BiSeries.one(self.ring, self.trunc)
        if threads > 1:
            from concurrent.futures import ThreadPoolExecutor

            def subtree(first: int) -> BiSeries:
                box = BiSeries.zero(self.ring, self.trunc)._arr
                root = self._node(self._one, first, 0)
                self._walk(root, first, w_max - first, {first: 1}, box)
                return BiSeries(self.ring, self.trunc, box)

            with ThreadPoolExecutor(max_workers=threads) as pool:
                results = list(pool.map(subtree, range(1, w_max + 1)))
            acc = BiSeries.one(self.ring, self.trunc)
            for s in results:  # fixed order: deterministic
                acc = acc + s
            return acc
        box = BiSeries.one(self.ring, self.trunc)._arr  # empty partition's term
        for first in range(1, w_max + 1):
            root = self._node(self._one, first, 0)
            self._walk(root, first, w_max - first, {first: 1}, box)
        return BiSeries(self.ring, self.trunc, box)

    def _node(self, parent: BiSeries, m: int, j_before: int) -> BiSeries:
        """parent * (all factors contributed by one appended part m)."""
        node = parent * self._step_series(m, j_before)
        node = node.shift(m, 0)
        sign = -1 if (self.flavor.convention == "odd" and m % 2 == 0) else 1
        node = node.scale(Fraction(sign, m * (j_before + 1)))
        return node

    def _cross(self, node: BiSeries, m: int, mults: dict[int, int]) -> BiSeries:
        for b, jb in mults.items():
            if b != m:
                node = node * self.pair_power(math.lcm(m, b), math.gcd(m, b) * jb)
        return node

    def _walk(self, node: BiSeries, largest: int, budget: int, mults: dict[int, int], box) -> None:
        """Accumulate node and all its extensions into the array `box`."""
        self.ring.iadd_arrays(box, node._arr)
        for m in range(min(largest, budget), 0, -1):
            j_before = mults.get(m, 0)
            child = self._cross(self._node(node, m, j_before), m, mults)
            mults[m] = j_before + 1
            self._walk(child, m, budget - m, mults, box)
            if j_before:
                mults[m] = j_before
            else:
                del mults[m]

def evaluate(
    flavor: Flavor, trunc: Truncation, ring=None, threads: int = 1
) -> GenFunResult:
    """Generating function of the flavor's graded dimensions on a window."""
    return Evaluator(flavor, trunc, ring).evaluate(threads=threads)


def partition_term(j: Partition, flavor: Flavor, trunc: Truncation, ring=None) -> BiSeries:
    """Single-partition summand (see Evaluator.partition_term)."""
    return Evaluator(flavor, trunc, ring).partition_term(j)


def evaluate_by_terms(flavor: Flavor, trunc: Truncation, ring=None) -> GenFunResult:
    """Reference evaluation: explicit sum of partition_term over all
    partitions.  Slower than `evaluate`; used to validate the DFS."""
    ev = Evaluator(flavor, trunc, ring)
    total = BiSeries.zero(ev.ring, trunc)
    for j in iter_partitions(trunc.v_max):
        total = total + ev.partition_term(j)
    return GenFunResult(flavor, total * ev.prefactor())


# -- the unrestricted-valence character route (independent cross-check) ----


def _poly_mul(p: list[Fraction], q: list[Fraction], e_max: int) -> list[Fraction]:
    out = [Fraction(0)] * (e_max + 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for k, b in enumerate(q):
            if i + k > e_max:
                break
            out[i + k] += a * b
    return out


def _poly_pow(p: list[Fraction], k: int, e_max: int) -> list[Fraction]:
    result = [Fraction(0)] * (e_max + 1)
    result[0] = Fraction(1)
    base = list(p)
    while k:
        if k & 1:
            result = _poly_mul(result, base, e_max)
        k >>= 1
        if k:
            base = _poly_mul(base, base, e_max)
    return result


def _one_plus_signed(m: int, e_max: int) -> list[Fraction]:
    """1 - (-t)^m as a coefficient list."""
    p = [Fraction(0)] * (e_max + 1)
    p[0] = Fraction(1)
    if m <= e_max:
        p[m] = Fraction(-((-1) ** m))
    return p


def _geom(m: int, e_max: int, sign: int = 1) -> list[Fraction]:
    """1/(1 - sign * t^m) as a coefficient list."""
    p = [Fraction(0)] * (e_max + 1)
    k = 0
    s = 1
    while k <= e_max:
        p[k] = Fraction(s)
        k += m
        s *= sign
    return p


def total_character_unrestricted(
    j: Partition, convention: str, e_max: int
) -> list[Fraction]:
    """Edge generating polynomial of the trace of one vertex-cycle type
    acting on the unrestricted (all-valence) graph space.

    Returns coefficients [c_0, ..., c_{e_max}] in t.  For the even
    convention the factors are (1 - (-t)^m)-type polynomials; for the
    odd convention they are geometric.
    """
    out = [Fraction(0)] * (e_max + 1)
    out[0] = Fraction(1)
    if convention == "even":
        for a in range(1, j.weight + 1):
            j_odd = j.multiplicity(2 * a - 1)
            if j_odd:
                out = _poly_mul(
                    out, _poly_pow(_one_plus_signed(2 * a - 1, e_max), a * j_odd, e_max), e_max
                )
            j_even = j.multiplicity(2 * a)
            if j_even:
                block = _poly_mul(
                    _one_plus_signed(a, e_max),
                    _poly_pow(_one_plus_signed(2 * a, e_max), a, e_max),
                    e_max,
                )
                out = _poly_mul(out, _poly_pow(block, j_even, e_max), e_max)
        for a, ja in j.items():
            exp = a * ja * (ja - 1) // 2
            if exp:
                out = _poly_mul(out, _poly_pow(_one_plus_signed(a, e_max), exp, e_max), e_max)
        parts = list(j.items())
        for i, (a, ja) in enumerate(parts):
            for b, jb in parts[i + 1 :]:
                ell, g = math.lcm(a, b), math.gcd(a, b)
                out = _poly_mul(
                    out, _poly_pow(_one_plus_signed(ell, e_max), g * ja * jb, e_max), e_max
                )
        return out
    if convention != "odd":
        raise PreconditionViolated(f"unknown convention {convention!r}")
    for a in range(1, j.weight + 1):
        j_odd = j.multiplicity(2 * a - 1)
        if j_odd and a >= 2:
            out = _poly_mul(
                out, _poly_pow(_geom(2 * a - 1, e_max), (a - 1) * j_odd, e_max), e_max
            )
        j_even = j.multiplicity(2 * a)
        if j_even:
            block = _geom(a, e_max, sign=-1)
            block = [-c for c in block]
            if a >= 2:
                block = _poly_mul(block, _poly_pow(_geom(2 * a, e_max), a - 1, e_max), e_max)
            out = _poly_mul(out, _poly_pow(block, j_even, e_max), e_max)
    for a, ja in j.items():
        exp = a * ja * (ja - 1) // 2
        if exp:
            out = _poly_mul(out, _poly_pow(_geom(a, e_max), exp, e_max), e_max)
    parts = list(j.items())
    for i, (a, ja) in enumerate(parts):
        for b, jb in parts[i + 1 :]:
            ell, g = math.lcm(a, b), math.gcd(a, b)
            out = _poly_mul(out, _poly_pow(_geom(ell, e_max), g * ja * jb, e_max), e_max)
    return out


def dims_unrestricted(convention: str, v_max: int, e_max: int) -> list[list[int]]:
    """Dimension table of the all-valence spaces via the character route.

    dims[v][e]; exact rationals throughout, with an integrality check.
    Used only as a cross-check against the brute-force enumerator.
    """
    dims = [[Fraction(0)] * (e_max + 1) for _ in range(v_max + 1)]
    dims[0][0] = Fraction(1)
    for j in iter_partitions(v_max):
        if j.weight == 0:
            continue
        weight = Fraction(1)
        for a, ja in j.items():
            weight /= Fraction(math.factorial(ja)) * Fraction(a) ** ja
        xi = total_character_unrestricted(j, convention, e_max)
        for e in range(e_max + 1):
            dims[j.weight][e] += weight * xi[e]
    out = []
    for v in range(v_max + 1):
        row = []
        for e in range(e_max + 1):
            c = dims[v][e]
            if c.denominator != 1:
                raise IntegralityError(f"non-integer dimension {c} at ({v}, {e})")
            row.append(c.numerator)
        out.append(row)
    return out
