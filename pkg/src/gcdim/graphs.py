"""Brute-force ground truth on small multigraphs.

Exhaustive enumeration of isomorphism classes of undirected multigraphs
(tadpoles allowed), automorphism groups, and the two odd-symmetry
predicates that decide whether an isomorphism class spans a line or is
zero:

* even convention: some automorphism induces an odd permutation of the
  edge multiset (any repeated edge gives one for free);
* odd convention: some automorphism has (vertex-permutation sign) times
  (-1)^(number of reversed edge orientations) equal to -1 (any tadpole
  gives one for free).

Everything here is desk scale (v <= 9) and serves as the independent
oracle for the generating-function pipeline.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .errors import TooLarge, TooManyVertices
from .flavors import Flavor

MAX_VERTICES = 9
MAX_ENUM_VERTICES = 8
MAX_ENUM_EDGES = 12


class MultiGraph:
    """An undirected multigraph on vertices 0..v-1.

    ``edges`` is a sorted tuple of pairs (a, b) with a <= b; a == b is a
    tadpole (contributing 2 to the valence of a).  Two instances compare
    equal as labelled graphs; use :func:`canonical_form` to compare
    isomorphism classes.
    """

    __slots__ = ("v", "edges")

    def __init__(self, v: int, edges) -> None:
        self.v = v
        normalized = tuple(sorted((a, b) if a <= b else (b, a) for a, b in edges))
        for a, b in normalized:
            if not (0 <= a <= b < v):
                raise ValueError(f"edge ({a}, {b}) out of range for {v} vertices")
        self.edges = normalized

    @property
    def e(self) -> int:
        return len(self.edges)

    def valences(self) -> list[int]:
        val = [0] * self.v
        for a, b in self.edges:
            val[a] += 1
            val[b] += 1
        return val

    def tadpole_counts(self) -> list[int]:
        tad = [0] * self.v
        for a, b in self.edges:
            if a == b:
                tad[a] += 1
        return tad

    def has_tadpole(self) -> bool:
        return any(a == b for a, b in self.edges)

    def multiplicities(self) -> dict[tuple[int, int], int]:
        mult: dict[tuple[int, int], int] = {}
        for pair in self.edges:
            mult[pair] = mult.get(pair, 0) + 1
        return mult

    def has_multiedge(self) -> bool:
        return any(m >= 2 for m in self.multiplicities().values())

    def relabel(self, perm) -> "MultiGraph":
        """Image under the vertex map x -> perm[x]."""
        return MultiGraph(self.v, [(perm[a], perm[b]) for a, b in self.edges])

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, MultiGraph)
            and self.v == other.v
            and self.edges == other.edges
        )

    def __hash__(self) -> int:
        return hash((self.v, self.edges))

    def __repr__(self) -> str:
        return f"MultiGraph({self.v}, {list(self.edges)})"

    def dump(self) -> str:
        """Plain-text class dump: 'v; a1-b1, a2-b2, ...' with 1-based labels."""
        body = ", ".join(f"{a + 1}-{b + 1}" for a, b in self.edges)
        return f"{self.v}; {body}"

    @classmethod
    def from_dump(cls, text: str) -> "MultiGraph":
        head, _, body = text.partition(";")
        v = int(head.strip())
        edges = []
        for item in body.split(","):
            item = item.strip()
            if item:
                a, _, b = item.partition("-")
                edges.append((int(a) - 1, int(b) - 1))
        return cls(v, edges)


# -- colour refinement ----------------------------------------------------


def _neighbour_mults(g: MultiGraph) -> list[dict[int, int]]:
    """Per vertex, {neighbour: multiplicity} over non-tadpole edges."""
    nbr: list[dict[int, int]] = [dict() for _ in range(g.v)]
    for a, b in g.edges:
        if a != b:
            nbr[a][b] = nbr[a].get(b, 0) + 1
            nbr[b][a] = nbr[b].get(a, 0) + 1
    return nbr


def _refine(g: MultiGraph, colors: list[int], nbr) -> list[int]:
    """Iterate colour refinement to a stable partition (ids are dense ranks)."""
    while True:
        keys = []
        for x in range(g.v):
            profile = tuple(sorted((colors[y], m) for y, m in nbr[x].items()))
            keys.append((colors[x], profile))
        ranking = {key: i for i, key in enumerate(sorted(set(keys)))}
        new = [ranking[k] for k in keys]
        if new == colors:
            return colors
        colors = new


def _initial_colors(g: MultiGraph) -> list[int]:
    val = g.valences()
    tad = g.tadpole_counts()
    keys = [(val[x], tad[x]) for x in range(g.v)]
    ranking = {key: i for i, key in enumerate(sorted(set(keys)))}
    return [ranking[k] for k in keys]


def canonical_form(g: MultiGraph) -> MultiGraph:
    """Canonical representative: lexicographically minimal edge tuple.

    Individualisation-refinement search; only labelings compatible with
    the stable colour order are candidates, which is an isomorphism
    invariant, so equal canonical forms exactly characterise isomorphic
    graphs.
    """
    if g.v > MAX_VERTICES:
        raise TooManyVertices(f"canonical form supports at most {MAX_VERTICES} vertices")
    if g.v == 0:
        return g
    nbr = _neighbour_mults(g)
    tad = g.tadpole_counts()
    best: list[tuple[int, int]] | None = None

    def leaf(colors: list[int]) -> None:
        nonlocal best
        order = sorted(range(g.v), key=lambda x: colors[x])
        pos = [0] * g.v
        for i, x in enumerate(order):
            pos[x] = i
        cand = sorted(
            (pos[a], pos[b]) if pos[a] <= pos[b] else (pos[b], pos[a])
            for a, b in g.edges
        )
        if best is None or cand < best:
            best = cand

    def search(colors: list[int]) -> None:
        cells: dict[int, list[int]] = {}
        for x in range(g.v):
            cells.setdefault(colors[x], []).append(x)
        target = None
        for c in sorted(cells):
            if len(cells[c]) > 1:
                target = cells[c]
                break
        if target is None:
            leaf(colors)
            return
        for w in target:
            branched = [(colors[x], 0 if x == w else 1) for x in range(g.v)]
            ranking = {key: i for i, key in enumerate(sorted(set(branched)))}
            search(_refine(g, [ranking[k] for k in branched], nbr))

    base = [(c, tad[x]) for x, c in enumerate(_initial_colors(g))]
    ranking = {key: i for i, key in enumerate(sorted(set(base)))}
    search(_refine(g, [ranking[k] for k in base], nbr))
    assert best is not None
    return MultiGraph(g.v, best)


def canonicalize(g: MultiGraph) -> MultiGraph:
    """Alias for :func:`canonical_form`."""
    return canonical_form(g)


# -- automorphisms ---------------------------------------------------------


def iter_automorphisms(g: MultiGraph):
    """Yield every vertex automorphism as a tuple perm with perm[x] = image.

    Backtracking over colour-compatible assignments with incremental
    adjacency checks; complete because the refined colours are
    automorphism invariants.
    """
    if g.v > MAX_VERTICES:
        raise TooManyVertices(f"automorphism search supports at most {MAX_VERTICES} vertices")
    if g.v == 0:
        yield ()
        return
    nbr = _neighbour_mults(g)
    tad = g.tadpole_counts()
    colors = _refine(g, _initial_colors(g), nbr)
    order = sorted(range(g.v), key=lambda x: (colors[x], x))
    perm: list[int] = [-1] * g.v
    used = [False] * g.v

    def extend(depth: int):
        if depth == g.v:
            yield tuple(perm)
            return
        x = order[depth]
        for y in range(g.v):
            if used[y] or colors[y] != colors[x] or tad[y] != tad[x]:
                continue
            ok = True
            for z, m in nbr[x].items():
                pz = perm[z]
                if pz >= 0 and nbr[y].get(pz, 0) != m:
                    ok = False
                    break
            if ok:
                perm[x] = y
                used[y] = True
                yield from extend(depth + 1)
                used[y] = False
                perm[x] = -1

    yield from extend(0)


def _perm_sign(perm) -> int:
    sign = 1
    seen = [False] * len(perm)
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        x = start
        while not seen[x]:
            seen[x] = True
            x = perm[x]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def _edge_perm_sign(g: MultiGraph, perm) -> int:
    """Sign of the induced permutation on the edge multiset.

    Only valid when every multiplicity is 1 (repeated edges are handled
    separately: any parallel pair admits an odd internal swap).
    """
    index = {pair: i for i, pair in enumerate(g.edges)}
    images = []
    for a, b in g.edges:
        x, y = perm[a], perm[b]
        images.append(index[(x, y) if x <= y else (y, x)])
    return _perm_sign(images)


def _reversal_count(g: MultiGraph, perm) -> int:
    """Edges whose reference orientation a->b (a <= b) gets flipped."""
    count = 0
    for a, b in g.edges:
        if a != b and perm[a] > perm[b]:
            count += 1
    return count


@dataclass(frozen=True)
class AutomorphismReport:
    group_order: int
    has_odd_even_convention: bool
    has_odd_odd_convention: bool


def automorphisms(g: MultiGraph) -> AutomorphismReport:
    """Group order and the two odd-symmetry flags of a multigraph."""
    multi = g.has_multiedge()
    tadpole = g.has_tadpole()
    odd_even = multi  # swapping two parallel edges is an odd edge transposition
    odd_odd = tadpole  # reversing a tadpole flips one orientation
    count = 0
    for perm in iter_automorphisms(g):
        count += 1
        if not odd_even and not multi and _edge_perm_sign(g, perm) < 0:
            odd_even = True
        if not odd_odd:
            sign = _perm_sign(perm) * (-1) ** _reversal_count(g, perm)
            if sign < 0:
                odd_odd = True
    return AutomorphismReport(count, odd_even, odd_odd)


def is_zero_class(g: MultiGraph, flavor: Flavor) -> bool:
    """Whether the class of g is killed by an odd symmetry of the flavor."""
    if flavor.convention == "even":
        if g.has_multiedge():
            return True
        return automorphisms(g).has_odd_even_convention
    if g.has_tadpole():
        return True
    return automorphisms(g).has_odd_odd_convention


def respects_policy(g: MultiGraph, flavor: Flavor) -> bool:
    """Tadpole/multi-edge admissibility and the valence bound."""
    if not flavor.tadpoles and g.has_tadpole():
        return False
    if not flavor.multiedges and g.has_multiedge():
        return False
    return all(val >= flavor.min_valence for val in g.valences())


# -- connectivity ----------------------------------------------------------


def is_connected(g: MultiGraph) -> bool:
    """Standard connectivity; the empty graph does not count as connected."""
    if g.v == 0:
        return False
    seen = {0}
    stack = [0]
    adj = _neighbour_mults(g)
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == g.v


def is_one_vertex_irreducible(g: MultiGraph) -> bool:
    """Connected with no separating vertex."""
    if not is_connected(g):
        return False
    if g.v <= 2:
        return True
    for x in range(g.v):
        remaining = [y for y in range(g.v) if y != x]
        edges = [(a, b) for a, b in g.edges if a != x and b != x]
        relabel = {y: i for i, y in enumerate(remaining)}
        sub = MultiGraph(g.v - 1, [(relabel[a], relabel[b]) for a, b in edges])
        if not is_connected(sub):
            return False
    return True


# -- enumeration -----------------------------------------------------------


def _pair_slots(v: int, tadpoles: bool) -> list[tuple[int, int]]:
    slots = []
    for a in range(v):
        if tadpoles:
            slots.append((a, a))
        for b in range(a + 1, v):
            slots.append((a, b))
    return slots


def enumerate_classes(v: int, e: int, flavor: Flavor) -> list[MultiGraph]:
    """All isomorphism classes at (v, e) respecting the flavor policy.

    Exhaustive search over multiplicity assignments to vertex pairs with
    degree-deficit pruning, then canonical-form deduplication.  Classes
    include disconnected graphs; apply :func:`is_connected` to restrict.
    Deterministic output order (sorted canonical forms).
    """
    return list(_enumerate_cached(v, e, flavor))


@lru_cache(maxsize=None)
def _enumerate_cached(v: int, e: int, flavor: Flavor) -> tuple[MultiGraph, ...]:
    if v > MAX_ENUM_VERTICES or e > MAX_ENUM_EDGES:
        raise TooLarge(
            f"enumeration capped at v <= {MAX_ENUM_VERTICES}, e <= {MAX_ENUM_EDGES}"
        )
    if v == 0:
        return (MultiGraph(0, []),) if e == 0 else ()
    slots = _pair_slots(v, flavor.tadpoles)
    # row_end[a] = index of the first slot whose minimum vertex is > a
    row_end = [0] * v
    for i, (a, _) in enumerate(slots):
        row_end[a] = i + 1
    for a in range(1, v):
        row_end[a] = max(row_end[a], row_end[a - 1])

    min_val = flavor.min_valence
    deg = [0] * v
    found: set[MultiGraph] = set()
    counts = [0] * len(slots)

    def capacity(idx: int, x: int, budget: int) -> int:
        """Max extra valence vertex x can still gain from slots >= idx."""
        cap = 0
        for i in range(idx, len(slots)):
            a, b = slots[i]
            if a != x and b != x:
                continue
            per = 2 if a == b else 1
            cap += per * (budget if flavor.multiedges else 1)
            if cap >= min_val:  # enough; exact value not needed
                break
        return cap

    def rec(idx: int, placed: int) -> None:
        if placed == e:
            # all remaining multiplicities zero; check degree bounds
            if all(deg[x] >= min_val for x in range(v)):
                g = MultiGraph(v, [s for s, c in zip(slots, counts) if c for _ in range(c)])
                found.add(canonical_form(g))
            return
        if idx == len(slots):
            return
        budget = e - placed
        # total deficit must be coverable: each edge adds 2 to total degree
        deficit = sum(max(0, min_val - d) for d in deg)
        if deficit > 2 * budget:
            return
        a, b = slots[idx]
        # vertices with no remaining incident slots must already be satisfied
        if idx > 0:
            pa = slots[idx - 1][0]
            if a != pa and deg[pa] < min_val:
                return
        per = 2 if a == b else 1
        top = budget if flavor.multiedges else 1
        for m in range(top, -1, -1):
            if m:
                counts[idx] = m
                deg[a] += per * m
                if a != b:
                    deg[b] += m
                # feasibility for a if this was its last slot comes from the
                # row check above at the next index
                rec(idx + 1, placed + m)
                deg[a] -= per * m
                if a != b:
                    deg[b] -= m
                counts[idx] = 0
            else:
                # pruning: if a cannot reach min valence from later slots, stop
                if deg[a] < min_val and capacity(idx + 1, a, budget) < min_val - deg[a]:
                    return
                rec(idx + 1, placed)

    rec(0, 0)
    return tuple(sorted(found, key=lambda g: g.edges))


def dim_oracle(v: int, e: int, flavor: Flavor) -> int:
    """Brute-force dimension: classes of (v, e) with no odd symmetry."""
    return sum(1 for g in enumerate_classes(v, e, flavor) if not is_zero_class(g, flavor))


def connected_dim_oracle(v: int, e: int, flavor: Flavor) -> int:
    """As dim_oracle, restricted to connected classes."""
    return sum(
        1
        for g in enumerate_classes(v, e, flavor)
        if is_connected(g) and not is_zero_class(g, flavor)
    )
