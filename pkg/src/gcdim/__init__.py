"""gcdim: graded dimensions and Euler characteristics of graph complexes.

Computes the dimensions of the spaces of at-least-trivalent multigraphs
modulo the two sign conventions (four flavors: even/even*/odd/odd*) from
closed-form q-Pochhammer generating functions, extracts per-loop-order
Euler characteristics, recovers connected counts, and cross-checks
everything against an independent brute-force enumerator and small
graph-complex cohomology computations.
"""

__version__ = "1.0.0"

from .errors import GcdimError
from .flavors import EVEN, EVEN_STAR, Flavor, ODD, ODD_STAR, STANDARD_FLAVORS, flavor_by_name
from .partitions import Partition, iter_partitions
from .rings import DEFAULT_BASIS, PrimeBasis, RationalRing, Residues, ResidueRing, crt_lift
from .series import BiSeries, Truncation, monomial, qpochhammer

__all__ = [
    "__version__",
    "GcdimError",
    "Flavor",
    "EVEN",
    "EVEN_STAR",
    "ODD",
    "ODD_STAR",
    "STANDARD_FLAVORS",
    "flavor_by_name",
    "Partition",
    "iter_partitions",
    "PrimeBasis",
    "DEFAULT_BASIS",
    "RationalRing",
    "ResidueRing",
    "Residues",
    "crt_lift",
    "BiSeries",
    "Truncation",
    "monomial",
    "qpochhammer",
]
