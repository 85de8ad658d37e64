"""Coprime and second submodules, their spectra, varieties and the module
predicates that the topological results are conditioned on.

Everything here is decided by exhaustion over the enumerated lattice.  Sets
of submodules are bitmasks over lattice ids, so "L1 is contained in L2" is a
single bit test against the up-set of L1.

Over Z/nZ the ideal (d) acts on a module of exponent e exactly as (gcd(d, e))
does, so every predicate below only needs the divisors of the exponent.
Witness ideals are still reported as the least divisor of n.
"""

from __future__ import annotations

import itertools
import weakref
from dataclasses import dataclass
from math import gcd, prod
from typing import Callable, Iterable, Iterator, NamedTuple

from .algebra import (
    Ideal,
    Lattice,
    ModuleShape,
    NotProper,
    Quotient,
    RingZn,
    Submodule,
    _LatticeCore,
    colon_ideal,
    divisors,
    is_prime,
    quotient_module,
)

# subsets of Max(M) are enumerated outright up to this many other maximal submodules
MAX_PROPERTY_EXHAUSTIVE = 12


class Verdict(NamedTuple):
    holds: bool
    witness: object = None

    def __bool__(self) -> bool:
        return self.holds


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def bits_of(ids: Iterable[int]) -> int:
    out = 0
    for i in ids:
        out |= 1 << i
    return out


class Analysis:
    """Ring-independent data derived from one submodule lattice."""

    def __init__(self, core: _LatticeCore):
        self.core = core
        n = len(core.masks)
        self.size = n
        self.top = n - 1
        self.all = (1 << n) - 1
        self.exp_divisors = divisors(core.exponent)
        self.image = {g: core.mult(g)[self.top] for g in self.exp_divisors}

        up, down = core.up, core.down
        # covers: ucov[a] = members covering a, lcov[b] = members covered by b
        self.ucov = [0] * n
        self.lcov = [0] * n
        for a in range(n):
            above = up[a] & ~(1 << a)
            for b in iter_bits(above):
                if down[b] & above == 1 << b:
                    self.ucov[a] |= 1 << b
                    self.lcov[b] |= 1 << a
        self.simple = self.ucov[0]
        self.maximal = self.lcov[self.top]

        second = 0
        coprime = 0
        for i in range(n):
            if i and all(core.mult(g)[i] in (i, 0) for g in self.exp_divisors):
                second |= 1 << i
            if i != self.top and all(
                core.join(self.image[g], i) == self.top or core.leq(self.image[g], i) for g in self.exp_divisors
            ):
                coprime |= 1 << i
        self.second = second
        self.coprime = coprime
        self._sh: int | None = None
        self._si: int | None = None

    # varieties as lattice-id masks ----------------------------------------

    def vs(self, i: int) -> int:
        return self.second & self.core.down[i]

    def vc(self, i: int) -> int:
        return self.coprime & self.core.up[i]

    def corad(self, i: int) -> int:
        return self.core.join_all(iter_bits(self.vs(i)))

    def rad(self, i: int) -> int:
        return self.core.meet_all(iter_bits(self.vc(i)))

    # strongly hollow / strongly irreducible --------------------------------

    def sh_candidates(self, i: int) -> list[int]:
        """Maximal members not containing L_i."""
        missing = self.all & ~self.core.up[i]
        return [x for x in iter_bits(missing) if not self.ucov[x] & missing]

    def strongly_hollow(self, i: int) -> tuple[int, int] | None:
        """None when L_i is strongly hollow, else a failing pair of maximal
        non-containing members."""
        core = self.core
        cands = self.sh_candidates(i)
        for a, b in itertools.combinations(cands, 2):
            if core.leq(i, core.join(a, b)):
                return (a, b)
        return None

    def si_candidates(self, i: int) -> list[int]:
        """Minimal members not contained in L_i."""
        outside = self.all & ~self.core.down[i]
        return [x for x in iter_bits(outside) if not self.lcov[x] & outside]

    def strongly_irreducible(self, i: int) -> tuple[int, int] | None:
        core = self.core
        cands = self.si_candidates(i)
        for a, b in itertools.combinations(cands, 2):
            if core.leq(core.meet(a, b), i):
                return (a, b)
        return None

    @property
    def sh(self) -> int:
        if self._sh is None:
            self._sh = bits_of(i for i in range(1, self.size) if self.strongly_hollow(i) is None)
        return self._sh

    @property
    def si(self) -> int:
        if self._si is None:
            self._si = bits_of(i for i in range(self.top) if self.strongly_irreducible(i) is None)
        return self._si

    # lattice-theoretic helpers -----------------------------------------------

    def lower_star(self, i: int) -> int:
        """join of all proper submodules of L_i"""
        return self.core.join_all(iter_bits(self.core.down[i] & ~(1 << i)))

    def upper_star(self, i: int) -> int:
        """meet of all submodules strictly above L_i"""
        return self.core.meet_all(iter_bits(self.core.up[i] & ~(1 << i)))

    @property
    def socle(self) -> int:
        return self.core.join_all(iter_bits(self.simple))

    @property
    def radical(self) -> int:
        return self.core.meet_all(iter_bits(self.maximal))

    def l_c(self) -> int:
        """mask of L with L = (0 :_M (0 :_R L))"""
        core = self.core
        return bits_of(i for i in range(self.size) if core.torsion(core.exponents[i]) == i)

    def l_m(self) -> int:
        """mask of the submodules dM"""
        return bits_of(self.image.values())


_ANALYSES: "weakref.WeakKeyDictionary[_LatticeCore, Analysis]" = weakref.WeakKeyDictionary()


def analysis(lat: Lattice) -> Analysis:
    core = lat.core
    hit = _ANALYSES.get(core)
    if hit is None:
        hit = _ANALYSES[core] = Analysis(core)
    return hit


# ---------------------------------------------------------------------------
# coprime and second


def _module_scaling(target) -> tuple[RingZn, Callable[[int], tuple[bool, bool]]]:
    """The ring and d -> (dX == X, dX == 0) for a module X."""
    if isinstance(target, Lattice):
        target = target.whole
    if isinstance(target, Submodule):
        core = target.lattice.core
        i = target.id
        ring = target.shape.ring

        def scale(d: int) -> tuple[bool, bool]:
            j = core.mult(d)[i]
            return j == i, j == 0

        return ring, scale
    if isinstance(target, Quotient):
        if target.shape is None:
            raise ValueError("the zero module is neither coprime nor second")
        target = target.shape
    if isinstance(target, ModuleShape):
        fs = target.invariant_factors
        order = prod(fs)

        def scale(d: int) -> tuple[bool, bool]:
            image = prod(f // gcd(d, f) for f in fs)
            return image == order, image == 1

        return target.ring, scale
    raise TypeError(f"cannot treat {type(target).__name__} as a module")


def is_coprime_module(target: Lattice | Submodule | ModuleShape | Quotient) -> Verdict:
    """IX = X or IX = 0 for every ideal I; the witness is the least failing ideal."""
    ring, scale = _module_scaling(target)
    if isinstance(target, Submodule) and target.is_zero:
        raise ValueError("the zero module is excluded")
    for d in ring.divisors:
        whole, zero = scale(d)
        if not (whole or zero):
            return Verdict(False, Ideal(ring, d))
    return Verdict(True)


def is_second(sub: Submodule) -> Verdict:
    if sub.is_zero:
        return Verdict(False, None)
    return is_coprime_module(sub)


def is_coprime_in(k: Submodule) -> Verdict:
    """IM + K = M or IM in K for every ideal I."""
    if k.is_whole:
        raise NotProper("a coprime submodule must be proper")
    lat = k.lattice
    core = lat.core
    top = lat.top
    for d in lat.ring.divisors:
        img = core.mult(d)[top]
        if core.join(img, k.id) != top and not core.leq(img, k.id):
            return Verdict(False, Ideal(lat.ring, d))
    return Verdict(True)


def is_coprime_in_via_quotient(k: Submodule) -> Verdict:
    """Same predicate decided on the quotient M/K computed by Smith normal form."""
    if k.is_whole:
        raise NotProper("a coprime submodule must be proper")
    return is_coprime_module(quotient_module(k))


def is_coprime_in_sub(k: Submodule, ambient: Submodule) -> Verdict:
    """K coprime in the module L (both members of the same lattice, K in L)."""
    lat = k.lattice
    core = lat.core
    if not core.leq(k.id, ambient.id):
        raise ValueError("K must lie in L")
    if k.id == ambient.id:
        raise NotProper("a coprime submodule must be proper")
    for d in lat.ring.divisors:
        img = core.mult(d)[ambient.id]
        if core.join(img, k.id) != ambient.id and not core.leq(img, k.id):
            return Verdict(False, Ideal(lat.ring, d))
    return Verdict(True)


# ---------------------------------------------------------------------------
# spectra and varieties


@dataclass(frozen=True)
class Spectrum:
    lattice: Lattice
    members: tuple[int, ...]

    @property
    def mask(self) -> int:
        return bits_of(self.members)

    @property
    def submodules(self) -> tuple[Submodule, ...]:
        return tuple(self.lattice.members[i] for i in self.members)

    def __contains__(self, item: Submodule | int) -> bool:
        i = item.id if isinstance(item, Submodule) else item
        return i in self.members

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[Submodule]:
        return iter(self.submodules)


class SpectrumS(Spectrum):
    """Second submodules of M."""


class SpectrumC(Spectrum):
    """Coprime submodules of M."""


def spec_s(lat: Lattice) -> SpectrumS:
    return SpectrumS(lat, tuple(iter_bits(analysis(lat).second)))


def spec_c(lat: Lattice) -> SpectrumC:
    return SpectrumC(lat, tuple(iter_bits(analysis(lat).coprime)))


def _subs(lat: Lattice, mask: int) -> tuple[Submodule, ...]:
    return tuple(lat.members[i] for i in iter_bits(mask))


def variety_s(sub: Submodule) -> tuple[Submodule, ...]:
    """Second submodules contained in L."""
    return _subs(sub.lattice, analysis(sub.lattice).vs(sub.id))


def covariety_s(sub: Submodule) -> tuple[Submodule, ...]:
    an = analysis(sub.lattice)
    return _subs(sub.lattice, an.second & ~an.vs(sub.id))


def variety_c(sub: Submodule) -> tuple[Submodule, ...]:
    """Coprime submodules containing L."""
    return _subs(sub.lattice, analysis(sub.lattice).vc(sub.id))


def covariety_c(sub: Submodule) -> tuple[Submodule, ...]:
    an = analysis(sub.lattice)
    return _subs(sub.lattice, an.coprime & ~an.vc(sub.id))


def corad_s(sub: Submodule) -> Submodule:
    """Sum of the second submodules inside L (0 when there are none)."""
    return sub.lattice.members[analysis(sub.lattice).corad(sub.id)]


def rad_c(sub: Submodule) -> Submodule:
    """Intersection of the coprime submodules over L (M when there are none)."""
    return sub.lattice.members[analysis(sub.lattice).rad(sub.id)]


VARIETY_KINDS = ("xi_s", "xi_s_c", "xi_c", "xi_c_m")


@dataclass(frozen=True)
class VarietyFamily:
    kind: str
    sets: tuple[tuple[int, frozenset[int]], ...]


def variety_family(lat: Lattice, kind: str) -> VarietyFamily:
    an = analysis(lat)
    if kind == "xi_s":
        params, var = range(an.size), an.vs
    elif kind == "xi_s_c":
        params, var = iter_bits(an.l_c()), an.vs
    elif kind == "xi_c":
        params, var = range(an.size), an.vc
    elif kind == "xi_c_m":
        params, var = iter_bits(an.l_m()), an.vc
    else:
        raise ValueError(f"unknown variety family {kind!r}")
    return VarietyFamily(kind, tuple((i, frozenset(iter_bits(var(i)))) for i in params))


# ---------------------------------------------------------------------------
# hollow / irreducible submodules


def _least_pair(candidates: list[int], failing) -> tuple[int, int] | None:
    for x, a in enumerate(candidates):
        for b in candidates[x:]:
            if failing(a, b):
                return (a, b)
    return None


def is_strongly_hollow(sub: Submodule) -> Verdict:
    """L in L1 + L2 forces L in L1 or L in L2.  Witness: least failing pair."""
    if sub.is_zero:
        raise ValueError("strong hollowness is defined for nonzero submodules")
    lat = sub.lattice
    an = analysis(lat)
    if an.strongly_hollow(sub.id) is None:
        return Verdict(True)
    core = lat.core
    missing = [x for x in range(len(lat)) if not core.leq(sub.id, x)]
    pair = _least_pair(missing, lambda a, b: core.leq(sub.id, core.join(a, b)))
    return Verdict(False, tuple(lat.members[i] for i in pair))


def is_completely_hollow(sub: Submodule) -> Verdict:
    """L is not the sum of its proper submodules."""
    if sub.is_zero:
        raise ValueError("complete hollowness is defined for nonzero submodules")
    an = analysis(sub.lattice)
    return Verdict(an.lower_star(sub.id) != sub.id)


def is_strongly_irreducible(sub: Submodule) -> Verdict:
    """L1 cap L2 in L forces L1 in L or L2 in L."""
    if sub.is_whole:
        raise NotProper("strong irreducibility is defined for proper submodules")
    lat = sub.lattice
    an = analysis(lat)
    if an.strongly_irreducible(sub.id) is None:
        return Verdict(True)
    core = lat.core
    outside = [x for x in range(len(lat)) if not core.leq(x, sub.id)]
    pair = _least_pair(outside, lambda a, b: core.leq(core.meet(a, b), sub.id))
    return Verdict(False, tuple(lat.members[i] for i in pair))


def is_irreducible_submodule(sub: Submodule) -> Verdict:
    """L = L1 cap L2 forces L = L1 or L = L2."""
    if sub.is_whole:
        raise NotProper("irreducibility is defined for proper submodules")
    lat = sub.lattice
    an = analysis(lat)
    if bin(an.ucov[sub.id]).count("1") <= 1:
        return Verdict(True)
    core = lat.core
    above = [x for x in range(len(lat)) if x != sub.id and core.leq(sub.id, x)]
    pair = _least_pair(above, lambda a, b: core.meet(a, b) == sub.id)
    return Verdict(False, tuple(lat.members[i] for i in pair))


def is_completely_irreducible(sub: Submodule) -> Verdict:
    """L is not the intersection of the submodules strictly above it."""
    if sub.is_whole:
        raise NotProper("complete irreducibility is defined for proper submodules")
    an = analysis(sub.lattice)
    return Verdict(an.upper_star(sub.id) != sub.id)


def strongly_hollow_submodules(lat: Lattice) -> tuple[Submodule, ...]:
    return _subs(lat, analysis(lat).sh)


def strongly_irreducible_submodules(lat: Lattice) -> tuple[Submodule, ...]:
    return _subs(lat, analysis(lat).si)


def simple_submodules(lat: Lattice) -> tuple[Submodule, ...]:
    return _subs(lat, analysis(lat).simple)


def maximal_submodules(lat: Lattice) -> tuple[Submodule, ...]:
    return _subs(lat, analysis(lat).maximal)


# ---------------------------------------------------------------------------
# module predicates


def _find_triple(n: int, failing) -> tuple[int, int, int] | None:
    """Search (L, K1, K2) by growing prefix of ids, K1 <= K2."""
    for t in range(n):
        for a in range(t + 1):
            for b in range(a, t + 1):
                if failing(t, a, b):
                    return (t, a, b)
        for x in range(t):
            for b in range(t + 1):
                k1, k2 = min(t, b), max(t, b)
                if failing(x, k1, k2):
                    return (x, k1, k2)
    return None


def distributive_witness(lat: Lattice) -> tuple[int, int, int] | None:
    """L cap (K1 + K2) = (L cap K1) + (L cap K2)."""
    core = lat.core
    join, meet = core.join, core.meet
    return _find_triple(len(lat), lambda l, a, b: meet(l, join(a, b)) != join(meet(l, a), meet(l, b)))


def completely_distributive_witness(lat: Lattice) -> tuple[int, int, int] | None:
    """L + (cap K) = cap (L + K) over families; on a finite lattice every
    nonempty family reduces to pairs by induction and the empty family
    gives M on both sides."""
    core = lat.core
    join, meet = core.join, core.meet
    return _find_triple(len(lat), lambda l, a, b: meet(join(l, a), join(l, b)) != join(l, meet(a, b)))


def is_relatively_divisible(sub: Submodule) -> Verdict:
    """rL = rM cap L for every r; witness is the least failing divisor."""
    lat = sub.lattice
    core = lat.core
    for d in lat.ring.divisors:
        if core.mult(d)[sub.id] != core.meet(core.mult(d)[lat.top], sub.id):
            return Verdict(False, d)
    return Verdict(True)


def l_e(lat: Lattice, simple_id: int) -> int:
    """Sum of the simple submodules other than L."""
    an = analysis(lat)
    return lat.core.join_all(iter_bits(an.simple & ~(1 << simple_id)))


def l_up_e(lat: Lattice, maximal_id: int) -> int:
    """Intersection of the maximal submodules other than L."""
    an = analysis(lat)
    return lat.core.meet_all(iter_bits(an.maximal & ~(1 << maximal_id)))


def has_min_property(lat: Lattice) -> Verdict:
    core = lat.core
    for s in iter_bits(analysis(lat).simple):
        if core.leq(s, l_e(lat, s)):
            return Verdict(False, lat.members[s])
    return Verdict(True)


def has_complete_max_property(lat: Lattice) -> Verdict:
    core = lat.core
    for m in iter_bits(analysis(lat).maximal):
        if core.leq(l_up_e(lat, m), m):
            return Verdict(False, lat.members[m])
    return Verdict(True)


def has_max_property(lat: Lattice) -> Verdict:
    """For every maximal L and finite A of other maximal submodules, cap A is
    not inside L.  Subsets are enumerated outright when there are few;
    otherwise only the full family is tested, which is the smallest
    intersection and therefore decides every subfamily."""
    core = lat.core
    maxes = list(iter_bits(analysis(lat).maximal))
    for m in maxes:
        others = [x for x in maxes if x != m]
        if len(others) <= MAX_PROPERTY_EXHAUSTIVE:
            for r in range(len(others) + 1):
                for family in itertools.combinations(others, r):
                    if core.leq(core.meet_all(family), m):
                        return Verdict(False, (lat.members[m], tuple(lat.members[x] for x in family)))
        elif core.leq(core.meet_all(others), m):
            return Verdict(False, (lat.members[m], tuple(lat.members[x] for x in others)))
    return Verdict(True)


@dataclass(frozen=True)
class StructuralPredicates:
    is_hollow: bool
    is_local: bool
    is_colocal: bool
    is_uniform: bool
    is_atomic: bool
    is_coatomic: bool
    is_multiplication: bool
    is_comultiplication: bool
    is_semisimple: bool
    is_homogeneous_semisimple: bool
    is_distributive: bool
    is_completely_distributive: bool
    is_uniserial: bool
    is_simple: bool
    is_cyclic: bool


def is_multiplication(lat: Lattice) -> bool:
    core = lat.core
    return all(core.mult(colon_ideal(m, lat.whole).divisor)[lat.top] == m.id for m in lat)


def is_comultiplication(lat: Lattice) -> bool:
    core = lat.core
    return all(core.torsion(core.exponents[i]) == i for i in range(len(lat)))


def structural_predicates(lat: Lattice) -> StructuralPredicates:
    core = lat.core
    an = analysis(lat)
    top = lat.top
    maxes = list(iter_bits(an.maximal))
    simples = list(iter_bits(an.simple))
    hollow = all(core.join(a, b) != top for a, b in itertools.combinations(maxes, 2))
    local = core.join_all(range(top)) != top
    colocal = core.meet_all(range(1, top + 1)) != 0
    uniform = all(core.meet(a, b) != 0 for a, b in itertools.combinations(simples, 2))
    atomic = all(core.down[i] & an.simple for i in range(1, top + 1))
    coatomic = all(core.up[i] & an.maximal for i in range(top))
    semisimple = an.socle == top
    homogeneous = semisimple and len({core.sizes[s] for s in simples}) == 1
    uniserial = all(bin(an.ucov[i]).count("1") == 1 for i in range(top))
    return StructuralPredicates(
        is_hollow=hollow,
        is_local=local,
        is_colocal=colocal,
        is_uniform=uniform,
        is_atomic=atomic,
        is_coatomic=coatomic,
        is_multiplication=is_multiplication(lat),
        is_comultiplication=is_comultiplication(lat),
        is_semisimple=semisimple,
        is_homogeneous_semisimple=homogeneous,
        is_distributive=distributive_witness(lat) is None,
        is_completely_distributive=completely_distributive_witness(lat) is None,
        is_uniserial=uniserial,
        is_simple=top == 1,
        is_cyclic=lat.shape.rank == 1,
    )


def generalized_associated_primes(lat: Lattice) -> tuple[Ideal, ...]:
    """Prime ideals of R that occur as the annihilator of some submodule."""
    core = lat.core
    found = {core.exponents[i] for i in range(len(lat)) if is_prime(core.exponents[i])}
    return tuple(Ideal(lat.ring, p) for p in sorted(found))


def annihilator_divisor(sub: Submodule) -> int:
    """The divisor d with ann_R(L) = (d)."""
    return sub.lattice.core.exponents[sub.id]
