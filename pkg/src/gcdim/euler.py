"""Euler characteristics and the disconnected-to-connected inversions.

A dimension table n[v][e] of possibly-disconnected graph spaces
determines the connected one through a two-variable Euler transform:
writing x for the loop-order weight b = e - v and y for the vertex
count, the full table is the product over connected types (b', v') of

    (1 + x^b' y^v')^n~        if the type is "fermionic"
    (1 - x^b' y^v')^(-n~)     if it is "bosonic",

where a type is fermionic exactly when interchanging two identical
components is an odd symmetry: for the odd conventions that sign is
(-1)^(vertex count), for the even conventions (-1)^(edge count).  The
inversion peels factors in graded order; the singleton assignment
isolates each connected entry linearly.

The same mechanism one level up gives the Euler-characteristic
recursion: chi_b = sum over partitions (i_a) of b of
prod_a (-1)^(i_a) * binom(-chi~_a, i_a).
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field

from .errors import GcdimError, NegativeConnectedDim, WindowTooSmall
from .flavors import Flavor
from .genfun import GenFunResult
from .partitions import iter_partitions_of


def binomial_generalized(n: int, k: int) -> int:
    """binom(n, k) = n(n-1)...(n-k+1)/k! for any integer n, k >= 0."""
    if k < 0:
        raise GcdimError("lower index must be nonnegative")
    num = 1
    for i in range(k):
        num *= n - i
    q, r = divmod(num, math.factorial(k))
    assert r == 0
    return q


@dataclass
class DimTable:
    """Integer dimensions dims[v][e] of one flavor's graded spaces."""

    flavor: Flavor
    connected: bool
    dims: list[list[int]] = field(repr=False)

    def __post_init__(self) -> None:
        width = len(self.dims[0]) if self.dims else 0
        if any(len(row) != width for row in self.dims):
            raise GcdimError("dimension table rows must have equal length")

    @property
    def v_max(self) -> int:
        return len(self.dims) - 1

    @property
    def e_max(self) -> int:
        return len(self.dims[0]) - 1

    def cell(self, v: int, e: int) -> int:
        return self.dims[v][e]

    @classmethod
    def from_genfun(cls, result: GenFunResult) -> "DimTable":
        dims = result.integer_table()
        table = cls(result.flavor, connected=False, dims=dims)
        table.validate()
        return table

    def validate(self) -> None:
        f = self.flavor
        for v, row in enumerate(self.dims):
            for e, d in enumerate(row):
                if d < 0:
                    raise GcdimError(f"negative dimension {d} at ({v}, {e})")
                if 2 * e < f.min_valence * v and d != 0:
                    raise GcdimError(f"valence bound violated at ({v}, {e})")
        expected00 = 0 if self.connected else 1
        if self.dims[0][0] != expected00:
            raise GcdimError(
                f"dims[0][0] = {self.dims[0][0]}, expected {expected00} "
                f"for connected={self.connected}"
            )
        if any(self.dims[0][e] for e in range(1, self.e_max + 1)):
            raise GcdimError("no graphs with zero vertices and positive edge count")

    # -- serialisation ---------------------------------------------------

    def csv_rows(self):
        for v in range(self.v_max + 1):
            for e in range(self.e_max + 1):
                yield (self.flavor.name, self.connected, v, e, self.dims[v][e])

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(("flavor", "connected", "v", "e", "dim"))
        for row in self.csv_rows():
            writer.writerow(row)
        return buf.getvalue()

    def to_json(self) -> str:
        return json.dumps(
            [
                {"flavor": fl, "connected": c, "v": v, "e": e, "dim": d}
                for fl, c, v, e, d in self.csv_rows()
            ],
            indent=0,
        )


@dataclass
class EulerTable:
    """chi[b] for b = 1..b_max, one flavor, connected or all graphs."""

    flavor: Flavor
    connected: bool
    chi: dict[int, int]

    @property
    def b_max(self) -> int:
        return max(self.chi) if self.chi else 0

    def csv_rows(self):
        for b in sorted(self.chi):
            yield (self.flavor.name, b, self.chi[b])

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(("flavor", "b", "chi"))
        for row in self.csv_rows():
            writer.writerow(row)
        return buf.getvalue()

    def to_json(self) -> str:
        return json.dumps(
            [{"flavor": fl, "b": b, "chi": x} for fl, b, x in self.csv_rows()],
            indent=0,
        )


def euler_from_dims(table: DimTable, b_max: int | None = None) -> EulerTable:
    """Alternating vertex sums chi_b; signs (-1)^v (odd) / (-1)^(b+v) (even).

    Requires the window to cover v <= 2b, e <= 3b for every requested b
    (guaranteed finite by the trivalence cone).
    """
    if b_max is None:
        b_max = min(table.v_max // 2, table.e_max // 3)
    if 2 * b_max > table.v_max or 3 * b_max > table.e_max:
        raise WindowTooSmall(
            f"b_max={b_max} needs v_max >= {2 * b_max} and e_max >= {3 * b_max}"
        )
    chi: dict[int, int] = {}
    even = table.flavor.convention == "even"
    for b in range(1, b_max + 1):
        total = 0
        for v in range(0, 2 * b + 1):
            d = table.dims[v][b + v]
            total += d if v % 2 == 0 else -d
        if even and b % 2 == 1:
            total = -total
        chi[b] = total
    return EulerTable(table.flavor, table.connected, chi)


def connected_euler(table: EulerTable) -> EulerTable:
    """Invert the partition recursion to the connected Euler numbers.

    The singleton partition {b} contributes the new value linearly, so
    recursion on b determines chi~ uniquely.
    """
    if table.connected:
        raise GcdimError("input must be the all-graphs Euler table")
    conn: dict[int, int] = {}
    for b in range(1, table.b_max + 1):
        rest = 0
        for part in iter_partitions_of(b):
            if part.multiplicity(b) == 1 and part.length == 1:
                continue
            prod = 1
            for a, i in part.items():
                prod *= (-1) ** i * binomial_generalized(-conn[a], i)
            rest += prod
        conn[b] = table.chi[b] - rest
    return EulerTable(table.flavor, True, conn)


def recompose_euler(table: EulerTable) -> EulerTable:
    """Forward evaluation of the partition recursion (round-trip check)."""
    if not table.connected:
        raise GcdimError("input must be the connected Euler table")
    chi: dict[int, int] = {}
    for b in range(1, table.b_max + 1):
        total = 0
        for part in iter_partitions_of(b):
            prod = 1
            for a, i in part.items():
                prod *= (-1) ** i * binomial_generalized(-table.chi[a], i)
            total += prod
        chi[b] = total
    return EulerTable(table.flavor, False, chi)


# -- connected dimensions ----------------------------------------------------


def _component_bosonic(flavor: Flavor, b: int, v: int) -> bool:
    """Whether identical (b, v) components may repeat (swap sign +1)."""
    parity = v if flavor.convention == "odd" else b + v  # vertex vs edge count
    return parity % 2 == 0


def _factor_coeffs(bosonic: bool, n: int, k_max: int) -> list[int]:
    """Coefficients of (1 -/+ u)^(-/+ n) in u up to degree k_max."""
    if bosonic:
        return [binomial_generalized(n + k - 1, k) for k in range(k_max + 1)]
    return [binomial_generalized(n, k) for k in range(k_max + 1)]


def _mul_factor(q: dict, b: int, v: int, coeffs: list[int], e_cap: int, v_cap: int) -> dict:
    out: dict[tuple[int, int], int] = {}
    for (qb, qv), c in q.items():
        for k, fk in enumerate(coeffs):
            nb, nv = qb + k * b, qv + k * v
            if nv > v_cap or nb + nv > e_cap:
                break
            if fk:
                out[(nb, nv)] = out.get((nb, nv), 0) + c * fk
    return out


def _cells(table: DimTable):
    """(b, v) cells of the table's window in graded processing order."""
    cells = [
        (e - v, v)
        for v in range(1, table.v_max + 1)
        for e in range(v + 1, table.e_max + 1)
    ]
    cells.sort(key=lambda bv: (bv[0] + bv[1], bv))
    return cells


def connected_dims(table: DimTable) -> DimTable:
    """Connected dimension table from the all-graphs table.

    Processes (b, v) cells in graded order; at each cell the difference
    between the table entry and the already-accumulated product of
    smaller factors is the connected dimension.  Raises
    NegativeConnectedDim if the peel ever goes negative (inconsistent
    input or wrong parity rule).
    """
    if table.connected:
        raise GcdimError("input table is already connected")
    b_cap, v_cap = table.e_max, table.v_max
    q: dict[tuple[int, int], int] = {(0, 0): 1}
    conn = [[0] * (table.e_max + 1) for _ in range(table.v_max + 1)]
    for b, v in _cells(table):
        n_bv = table.dims[v][b + v]
        made = q.get((b, v), 0)
        tilde = n_bv - made
        if tilde < 0:
            raise NegativeConnectedDim(
                f"connected dimension {tilde} < 0 at (v={v}, e={b + v})"
            )
        conn[v][b + v] = tilde
        if tilde:
            k_max = min(b_cap // b, v_cap // v)
            coeffs = _factor_coeffs(_component_bosonic(table.flavor, b, v), tilde, k_max)
            q = _mul_factor(q, b, v, coeffs, b_cap, v_cap)
    return DimTable(table.flavor, connected=True, dims=conn)


def recompose_dims(table: DimTable) -> DimTable:
    """All-graphs table from a connected one (round-trip check)."""
    if not table.connected:
        raise GcdimError("input table is not connected")
    b_cap, v_cap = table.e_max, table.v_max
    q: dict[tuple[int, int], int] = {(0, 0): 1}
    for b, v in _cells(table):
        tilde = table.dims[v][b + v]
        if tilde:
            k_max = min(b_cap // b, v_cap // v)
            coeffs = _factor_coeffs(_component_bosonic(table.flavor, b, v), tilde, k_max)
            q = _mul_factor(q, b, v, coeffs, b_cap, v_cap)
    dims = [[0] * (table.e_max + 1) for _ in range(table.v_max + 1)]
    for (b, v), c in q.items():
        if b + v <= table.e_max and v <= table.v_max and (v > 0 or b == 0):
            # products never leave the (v, e) window for cells we report
            if v == 0 and b == 0:
                dims[0][0] = c
            elif v >= 1:
                dims[v][b + v] = c
    return DimTable(table.flavor, connected=False, dims=dims)
