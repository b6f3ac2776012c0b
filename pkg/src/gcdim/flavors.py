"""Flavor descriptors: sign convention, tadpole/multi-edge policy, valence.

The four standard flavors of the trivalent graph spaces:

* ``even``   -- edge-permutation signs; tadpoles kept, multiple edges
  enumerable but each such class carries an odd symmetry and counts 0.
* ``even*``  -- as ``even`` with tadpoles excluded outright.
* ``odd``    -- vertex-permutation times edge-reversal signs; multiple
  edges kept, tadpole classes are 0 so they are excluded up front.
* ``odd*``   -- as ``odd`` with multiple edges excluded outright.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Flavor:
    convention: str  # "even" or "odd"
    tadpoles: bool
    multiedges: bool
    min_valence: int = 3

    def __post_init__(self) -> None:
        if self.convention not in ("even", "odd"):
            raise ValueError(f"unknown convention {self.convention!r}")
        if not 0 <= self.min_valence <= 3:
            raise ValueError("min_valence must be between 0 and 3")

    @property
    def name(self) -> str:
        for key, flavor in STANDARD_FLAVORS.items():
            if flavor == self:
                return key
        star = "" if (self.tadpoles if self.convention == "even" else self.multiedges) else "*"
        return f"{self.convention}{star}[v>={self.min_valence}]"

    def __str__(self) -> str:
        return self.name


EVEN = Flavor("even", tadpoles=True, multiedges=True)
EVEN_STAR = Flavor("even", tadpoles=False, multiedges=True)
ODD = Flavor("odd", tadpoles=False, multiedges=True)
ODD_STAR = Flavor("odd", tadpoles=False, multiedges=False)

STANDARD_FLAVORS: dict[str, Flavor] = {
    "even": EVEN,
    "even*": EVEN_STAR,
    "odd": ODD,
    "odd*": ODD_STAR,
}


def flavor_by_name(name: str) -> Flavor:
    try:
        return STANDARD_FLAVORS[name]
    except KeyError:
        raise ValueError(
            f"unknown flavor {name!r}; expected one of {sorted(STANDARD_FLAVORS)}"
        ) from None
