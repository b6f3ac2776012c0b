"""Checked-in reference tables of published values.

`reference_euler.csv` holds the eight Euler-characteristic columns for
loop orders b = 1..30.  The two `reference_dims_*.csv` files hold the
published dimension grids (v <= 24, e <= 36) for the tadpole-free even
flavor and the multi-edge-free odd flavor.  All three are transcriptions
of published data and are never regenerated by the code under test; the
`verify` command and the acceptance suite compare computed values
against them.

Although the dimension grids were published under a connected-spaces
caption, their content is the dimensions of the FULL spaces,
disconnected graphs included: they print 1 at (0, 0) (the empty graph),
and at every cell that admits a disconnected class they agree with the
all-graphs dimension, not the connected one.  The first such cell,
(v, e) = (8, 12), was settled by exhaustive enumeration: five classes
survive the multi-edge-free odd convention, of which one (two disjoint
copies of the complete graph on four vertices) is disconnected; the
grid prints 5, the connected count is 4.  Computed all-graphs tables
match both grids exactly on the whole window checked (v <= 20,
e <= 30).
"""

from __future__ import annotations

import csv
from functools import lru_cache
from importlib import resources

from .flavors import EVEN, EVEN_STAR, Flavor, ODD, ODD_STAR

EULER_COLUMNS: dict[str, tuple[Flavor, bool]] = {
    "even_all": (EVEN, False),
    "even_star_all": (EVEN_STAR, False),
    "even_conn": (EVEN, True),
    "even_star_conn": (EVEN_STAR, True),
    "odd_all": (ODD, False),
    "odd_star_all": (ODD_STAR, False),
    "odd_conn": (ODD, True),
    "odd_star_conn": (ODD_STAR, True),
}


def _read(name: str):
    with resources.files("gcdim.data").joinpath(name).open() as f:
        return list(csv.DictReader(f))


@lru_cache(maxsize=None)
def reference_euler() -> dict[str, dict[int, int]]:
    """column name -> {b: chi} for b = 1..30."""
    out: dict[str, dict[int, int]] = {col: {} for col in EULER_COLUMNS}
    for row in _read("reference_euler.csv"):
        b = int(row["b"])
        for col in EULER_COLUMNS:
            out[col][b] = int(row[col])
    return out


@lru_cache(maxsize=None)
def reference_dims(flavor: Flavor) -> dict[tuple[int, int], int]:
    """{(v, e): dim} over v <= 24, e <= 36 for the two starred flavors.

    These are the published grids; see the module docstring for why they
    are compared against all-graphs tables.
    """
    if flavor == EVEN_STAR:
        name = "reference_dims_even_star.csv"
    elif flavor == ODD_STAR:
        name = "reference_dims_odd_star.csv"
    else:
        raise KeyError(f"no reference grid for flavor {flavor.name}")
    return {
        (int(row["v"]), int(row["e"])): int(row["dim"]) for row in _read(name)
    }


def euler_column_name(flavor: Flavor, connected: bool) -> str:
    for col, (fl, conn) in EULER_COLUMNS.items():
        if fl == flavor and conn == connected:
            return col
    raise KeyError((flavor, connected))
