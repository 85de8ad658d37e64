"""Finite topological spaces on the second and coprime spectra.

Points of a space are lattice ids of spectrum members; subsets of the point
set are bitmasks over point positions (position k is the k-th smallest id).
Every property here is decided from the closed-set family alone, never from
the module, so the algebraic formulas in the verification suite have an
independent route to be compared against.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator

from .algebra import Lattice
from .spectra import analysis, bits_of, iter_bits

KINDS = {
    "xi_s": "second spectrum, all varieties",
    "xi_s_c": "second spectrum, varieties of L = (0 :_M (0 :_R L))",
    "xi_c": "coprime spectrum, all varieties",
    "xi_c_m": "coprime spectrum, varieties of L = IM",
}


class NotATopology(ValueError):
    def __init__(self, message: str, witness: tuple | None = None):
        super().__init__(message)
        self.witness = witness


def _popcount(x: int) -> int:
    return bin(x).count("1")


@dataclass(frozen=True)
class FiniteSpace:
    points: tuple[int, ...]
    closed_sets: tuple[int, ...]
    family: str
    lattice: Lattice | None = field(default=None, compare=False, repr=False)

    @property
    def size(self) -> int:
        return len(self.points)

    @property
    def full(self) -> int:
        return (1 << len(self.points)) - 1

    @cached_property
    def _closed_lookup(self) -> frozenset[int]:
        return frozenset(self.closed_sets)

    @cached_property
    def position(self) -> dict[int, int]:
        return {p: k for k, p in enumerate(self.points)}

    def is_closed(self, subset: int) -> bool:
        return subset in self._closed_lookup

    def is_open(self, subset: int) -> bool:
        return (self.full & ~subset) in self._closed_lookup

    def subset_of(self, ids: Iterable[int]) -> int:
        return bits_of(self.position[i] for i in ids)

    def ids_of(self, subset: int) -> tuple[int, ...]:
        return tuple(self.points[k] for k in iter_bits(subset))

    def closure(self, subset: int) -> int:
        """Smallest closed set containing ``subset``."""
        out = self.full
        for c in self.closed_sets:
            if c & subset == subset:
                out &= c
        return out

    @cached_property
    def point_closures(self) -> tuple[int, ...]:
        return tuple(self.closure(1 << k) for k in range(self.size))

    @cached_property
    def minimal_neighbourhoods(self) -> tuple[int, ...]:
        """U_x: complement of the union of closed sets missing x."""
        out = []
        for k in range(self.size):
            union = 0
            for c in self.closed_sets:
                if not (c >> k) & 1:
                    union |= c
            out.append(self.full & ~union)
        return tuple(out)

    def subsets(self) -> Iterator[int]:
        return iter(range(1 << self.size))


def check_axioms(points: tuple[int, ...], closed: Iterable[int]) -> tuple[str, tuple] | None:
    """None when ``closed`` is the closed-set family of a topology on
    ``points``, else (reason, witness)."""
    fam = set(closed)
    full = (1 << len(points)) - 1
    if 0 not in fam:
        return ("empty set is not closed", ())
    if full not in fam:
        return ("whole space is not closed", ())
    ordered = sorted(fam)
    for a, b in itertools.combinations(ordered, 2):
        if a | b not in fam:
            return ("not closed under finite unions", (a, b))
        if a & b not in fam:
            return ("not closed under intersections", (a, b))
    return None


def _sort_key(mask: int) -> tuple[int, int]:
    return (_popcount(mask), mask)


def make_space(points: tuple[int, ...], closed: Iterable[int], family: str, lattice: Lattice | None = None) -> FiniteSpace:
    fam = set(closed) | {0, (1 << len(points)) - 1}
    problem = check_axioms(points, fam)
    if problem is not None:
        raise NotATopology(f"{family}: {problem[0]}", problem[1])
    return FiniteSpace(tuple(points), tuple(sorted(fam, key=_sort_key)), family, lattice)


# ---------------------------------------------------------------------------
# varieties as point-position masks


@dataclass(frozen=True)
class _Side:
    points: tuple[int, ...]
    varieties: tuple[int, ...]  # indexed by lattice id
    params: tuple[int, ...]  # lattice ids allowed as variety parameters


def _side(lat: Lattice, kind: str) -> _Side:
    an = analysis(lat)
    if kind in ("xi_s", "xi_s_c"):
        spec, var = an.second, an.vs
        params = range(an.size) if kind == "xi_s" else iter_bits(an.l_c())
    elif kind in ("xi_c", "xi_c_m"):
        spec, var = an.coprime, an.vc
        params = range(an.size) if kind == "xi_c" else iter_bits(an.l_m())
    else:
        raise ValueError(f"unknown variety family {kind!r}")
    points = tuple(iter_bits(spec))
    pos = {p: k for k, p in enumerate(points)}
    varieties = tuple(bits_of(pos[x] for x in iter_bits(var(i))) for i in range(an.size))
    return _Side(points, varieties, tuple(params))


def variety_masks(lat: Lattice, kind: str) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """(points, V(L) as position masks for every lattice id L)."""
    side = _side(lat, kind)
    return side.points, side.varieties


@dataclass(frozen=True)
class TopDecision:
    is_topology: bool
    witness: tuple[int, int] | None = None
    union: int | None = None

    def __bool__(self) -> bool:
        return self.is_topology


def _decide(lat: Lattice, kind: str) -> TopDecision:
    side = _side(lat, kind)
    fam = set(side.varieties)
    distinct = sorted(fam)
    failing = any(a | b not in fam for a, b in itertools.combinations(distinct, 2))
    if not failing:
        return TopDecision(True)
    var = side.varieties
    n = len(var)
    for i in range(n):
        for j in range(i + 1, n):
            u = var[i] | var[j]
            if u not in fam:
                return TopDecision(False, (i, j), u)
    raise AssertionError("a failing union must come from some lattice pair")


def decide_top_s(lat: Lattice) -> TopDecision:
    """Is {V^s(L)} closed under finite unions?  Witness: least lattice pair."""
    return _decide(lat, "xi_s")


def decide_top_c(lat: Lattice) -> TopDecision:
    return _decide(lat, "xi_c")


def verify_witness(lat: Lattice, kind: str, decision: TopDecision) -> bool:
    """Re-check that a negative decision's pair really has a non-variety union."""
    if decision.is_topology:
        return decision.witness is None
    side = _side(lat, kind)
    i, j = decision.witness
    u = side.varieties[i] | side.varieties[j]
    return u == decision.union and u not in set(side.varieties)


def build_space(lat: Lattice, kind: str) -> FiniteSpace:
    side = _side(lat, kind)
    if kind in ("xi_s", "xi_c"):
        decision = _decide(lat, kind)
        if not decision.is_topology:
            raise NotATopology(f"{kind}: varieties are not closed under finite unions", decision.witness)
    closed = {side.varieties[i] for i in side.params}
    return make_space(side.points, closed, kind, lat)


# ---------------------------------------------------------------------------
# subset properties


def closure(space: FiniteSpace, subset: int) -> int:
    return space.closure(subset)


def is_irreducible_subset(space: FiniteSpace, subset: int) -> bool:
    """Nonempty, and never covered by two closed sets without lying in one."""
    if not subset:
        return False
    relevant = [c for c in space.closed_sets if c & subset != subset]
    for a, b in itertools.combinations_with_replacement(relevant, 2):
        if (a | b) & subset == subset:
            return False
    return True


def is_connected_subset(space: FiniteSpace, subset: int) -> bool:
    """Not split by two closed sets into disjoint nonempty relative pieces."""
    if not subset:
        return False
    for a, b in itertools.combinations(space.closed_sets, 2):
        pa, pb = a & subset, b & subset
        if pa and pb and not pa & pb and (pa | pb) == subset:
            return False
    return True


def irreducible_closed_sets(space: FiniteSpace) -> list[int]:
    return [c for c in space.closed_sets if is_irreducible_subset(space, c)]


def irreducible_components(space: FiniteSpace) -> list[int]:
    """Maximal irreducible subsets (each is closed)."""
    irr = irreducible_closed_sets(space)
    return [c for c in irr if not any(d != c and d & c == c for d in irr)]


def generic_points(space: FiniteSpace, subset: int) -> list[int]:
    """Positions y in a closed subset with closure {y} equal to it."""
    return [k for k in iter_bits(subset) if space.point_closures[k] == subset]


def is_sober(space: FiniteSpace) -> bool:
    return all(len(generic_points(space, c)) == 1 for c in irreducible_closed_sets(space))


def is_ultraconnected(space: FiniteSpace) -> bool:
    nonempty = [c for c in space.closed_sets if c]
    if not nonempty:
        return False
    return all(a & b for a, b in itertools.combinations(nonempty, 2))


def is_t0(space: FiniteSpace) -> bool:
    return len(set(space.point_closures)) == space.size


def is_t1(space: FiniteSpace) -> bool:
    return all(space.is_closed(1 << k) for k in range(space.size))


def is_t2(space: FiniteSpace) -> bool:
    nbhd = space.minimal_neighbourhoods
    return all(not nbhd[x] & nbhd[y] for x, y in itertools.combinations(range(space.size), 2))


def is_discrete(space: FiniteSpace) -> bool:
    return all(space.is_open(1 << k) for k in range(space.size))


@dataclass(frozen=True)
class TopologicalProperties:
    is_connected: bool
    is_ultraconnected: bool
    is_irreducible: bool
    is_T0: bool
    is_T1: bool
    is_T2: bool
    is_discrete: bool
    is_sober: bool
    # automatic on a finite space, reported for completeness
    is_compact: bool = True
    is_noetherian: bool = True
    is_artinian: bool = True
    degenerate: tuple[str, ...] = ("is_compact", "is_noetherian", "is_artinian")


def topological_properties(space: FiniteSpace) -> TopologicalProperties:
    return TopologicalProperties(
        is_connected=is_connected_subset(space, space.full),
        is_ultraconnected=is_ultraconnected(space),
        is_irreducible=is_irreducible_subset(space, space.full),
        is_T0=is_t0(space),
        is_T1=is_t1(space),
        is_T2=is_t2(space),
        is_discrete=is_discrete(space),
        is_sober=is_sober(space),
    )
