"""Executable catalogue of the structural results about second and coprime
submodules, swept over every small module Z/d_1 + ... + Z/d_k over Z/nZ.

A check receives an :class:`InstanceContext` and a :class:`Probe`.  It
evaluates its hypotheses and calls ``probe.require`` only when they hold, so
an instance on which nothing was required counts as vacuous.  The first
failed requirement aborts the check and its keyword arguments become the
witness (lattice ids, ideal divisors, subsets as lists of lattice ids).
"""

from __future__ import annotations

import fnmatch
import itertools
import json
import random
from dataclasses import dataclass, field
from functools import cached_property
from math import gcd
from typing import Callable, Iterable, Iterator

from . import __version__
from .algebra import (
    BudgetExceeded,
    Ideal,
    Lattice,
    ModuleShape,
    RingZn,
    annihilator_in_module,
    colon_ideal,
    divisors,
    enumerate_submodules,
    ideal_times_module,
    is_prime,
)
from .spectra import (
    Analysis,
    analysis,
    bits_of,
    completely_distributive_witness,
    distributive_witness,
    generalized_associated_primes,
    has_complete_max_property,
    has_max_property,
    has_min_property,
    is_coprime_in,
    is_coprime_in_sub,
    is_coprime_in_via_quotient,
    is_coprime_module,
    is_relatively_divisible,
    iter_bits,
    structural_predicates,
)
from .topology import (
    FiniteSpace,
    build_space,
    check_axioms,
    decide_top_c,
    decide_top_s,
    irreducible_closed_sets,
    irreducible_components,
    is_connected_subset,
    is_discrete,
    is_irreducible_subset,
    is_sober,
    is_t0,
    is_t1,
    is_t2,
    is_ultraconnected,
    variety_masks,
)

SUBSET_EXHAUSTIVE = 12
SUBSET_SAMPLES = 200
# families of three submodules are enumerated outright up to this lattice size
FAMILY_EXHAUSTIVE = 40
FAMILY_SAMPLES = 2000

STATUSES = ("pass", "vacuous", "fail", "skipped")


class InvalidBudget(ValueError):
    pass


class UnknownCheck(ValueError):
    pass


# ---------------------------------------------------------------------------
# budgets and instances


@dataclass(frozen=True)
class InstanceBudget:
    max_modulus: int = 60
    max_order: int = 128
    max_lattice: int = 5000
    max_rank: int = 4

    def __post_init__(self) -> None:
        for name in ("max_modulus", "max_order", "max_lattice", "max_rank"):
            value = getattr(self, name)
            if not isinstance(value, int) or isinstance(value, bool) or value < 1:
                raise InvalidBudget(f"{name} must be a positive integer, got {value!r}")
        # the only module of order 1 is zero, which no result is about
        if self.max_modulus < 2:
            raise InvalidBudget("max_modulus must be at least 2: no ring Z/n with n <= 1 is in scope")
        if self.max_order < 2:
            raise InvalidBudget("max_order must be at least 2: every nonzero module has order >= 2")
        if self.max_lattice < 2:
            raise InvalidBudget("max_lattice must be at least 2: a nonzero module has two submodules")

    def as_dict(self) -> dict:
        return {
            "max_modulus": self.max_modulus,
            "max_order": self.max_order,
            "max_lattice": self.max_lattice,
            "max_rank": self.max_rank,
        }


def _chains(n: int, max_order: int, max_rank: int) -> list[tuple[int, ...]]:
    ds = [d for d in divisors(n) if d >= 2]
    out: list[tuple[int, ...]] = []

    def grow(prefix: tuple[int, ...], size: int) -> None:
        if prefix:
            out.append(prefix)
        if len(prefix) == max_rank:
            return
        for d in ds:
            if prefix and d % prefix[-1]:
                continue
            if size * d > max_order:
                continue
            grow(prefix + (d,), size * d)

    grow((), 1)
    return sorted(out, key=lambda c: (len(c), c))


def enumerate_instances(budget: InstanceBudget) -> Iterator[ModuleShape]:
    """Every (n, invariant-factor chain) inside the budget, ordered by n, then
    rank, then factors.  Lattice size is only known after enumeration, so the
    lattice bound turns into a skipped status in :func:`run_suite`."""
    for n in range(2, budget.max_modulus + 1):
        ring = RingZn(n)
        for chain in _chains(n, budget.max_order, budget.max_rank):
            yield ModuleShape(ring, chain)


HYPOTHESIS_CLASSES = (
    "cyclic",
    "simple",
    "multiplication",
    "comultiplication",
    "uniserial",
    "semisimple",
    "homogeneous_semisimple",
    "distributive",
    "hollow",
    "local",
    "colocal",
    "uniform",
    "top_s",
    "top_c",
    "spec_s_in_sh",
    "spec_c_in_si",
    "min_property",
    "complete_max_property",
)


def instance_tags(shape: ModuleShape, budget: InstanceBudget | None = None) -> tuple[str, ...]:
    """Hypothesis classes the instance belongs to."""
    budget = budget or InstanceBudget()
    return InstanceContext(shape, enumerate_submodules(shape, budget=budget.max_lattice)).tags


# ---------------------------------------------------------------------------
# per-instance context


class InstanceContext:
    """Shared, lazily computed facts about one instance."""

    def __init__(self, shape: ModuleShape, lattice: Lattice):
        self.shape = shape
        self.label = str(shape)
        self.lat = lattice
        self.core = lattice.core
        self.an: Analysis = analysis(lattice)
        self.ring = shape.ring
        self.top = self.an.top
        self._spaces: dict[str, FiniteSpace | None] = {}
        self._masks: dict[str, tuple[tuple[int, ...], tuple[int, ...]]] = {}

    @cached_property
    def struct(self):
        return structural_predicates(self.lat)

    @cached_property
    def top_s(self) -> bool:
        return decide_top_s(self.lat).is_topology

    @cached_property
    def top_c(self) -> bool:
        return decide_top_c(self.lat).is_topology

    @cached_property
    def spec_s_in_sh(self) -> bool:
        return self.an.second & ~self.an.sh == 0

    @cached_property
    def spec_c_in_si(self) -> bool:
        return self.an.coprime & ~self.an.si == 0

    @cached_property
    def min_property(self) -> bool:
        return has_min_property(self.lat).holds

    @cached_property
    def complete_max_property(self) -> bool:
        return has_complete_max_property(self.lat).holds

    @cached_property
    def tags(self) -> tuple[str, ...]:
        s = self.struct
        flags = {
            "cyclic": s.is_cyclic,
            "simple": s.is_simple,
            "multiplication": s.is_multiplication,
            "comultiplication": s.is_comultiplication,
            "uniserial": s.is_uniserial,
            "semisimple": s.is_semisimple,
            "homogeneous_semisimple": s.is_homogeneous_semisimple,
            "distributive": s.is_distributive,
            "hollow": s.is_hollow,
            "local": s.is_local,
            "colocal": s.is_colocal,
            "uniform": s.is_uniform,
            "top_s": self.top_s,
            "top_c": self.top_c,
            "spec_s_in_sh": self.spec_s_in_sh,
            "spec_c_in_si": self.spec_c_in_si,
            "min_property": self.min_property,
            "complete_max_property": self.complete_max_property,
        }
        return tuple(k for k in HYPOTHESIS_CLASSES if flags[k])

    def space(self, kind: str) -> FiniteSpace | None:
        """The space for ``kind``, or None when the varieties are not a topology."""
        if kind not in self._spaces:
            if kind == "xi_s" and not self.top_s or kind == "xi_c" and not self.top_c:
                self._spaces[kind] = None
            else:
                self._spaces[kind] = build_space(self.lat, kind)
        return self._spaces[kind]

    def varieties(self, kind: str) -> tuple[tuple[int, ...], tuple[int, ...]]:
        if kind not in self._masks:
            self._masks[kind] = variety_masks(self.lat, kind)
        return self._masks[kind]

    def subset_masks(self, size: int, salt: str) -> Iterable[int]:
        """All subsets of a ``size``-point space, or a seeded sample."""
        if size <= SUBSET_EXHAUSTIVE:
            return range(1 << size)
        rng = random.Random(f"{self.label}:{salt}")
        return [rng.getrandbits(size) for _ in range(SUBSET_SAMPLES)]

    def families(self, salt: str) -> Iterable[tuple[int, ...]]:
        """Families of one to three lattice ids plus the full family."""
        n = self.an.size
        yield from ((i,) for i in range(n))
        yield from itertools.combinations(range(n), 2)
        if n <= FAMILY_EXHAUSTIVE:
            yield from itertools.combinations(range(n), 3)
        else:
            rng = random.Random(f"{self.label}:{salt}")
            for _ in range(FAMILY_SAMPLES):
                yield tuple(sorted(rng.sample(range(n), 3)))
        yield tuple(range(n))

    def ids(self, space: FiniteSpace, subset: int) -> list[int]:
        return list(space.ids_of(subset))

    def position_mask(self, space: FiniteSpace, ids_mask: int) -> int:
        return space.subset_of(iter_bits(ids_mask))

    def image(self, d: int) -> int:
        """Lattice id of dM."""
        return self.core.mult(gcd(d, self.ring.modulus))[self.top]


def _has(mask: int, i: int) -> bool:
    return (mask >> i) & 1 == 1


def _ids(mask: int) -> list[int]:
    return list(iter_bits(mask))


def _popcount(x: int) -> int:
    return bin(x).count("1")


# ---------------------------------------------------------------------------
# probe protocol


class _Failed(Exception):
    def __init__(self, witness: dict):
        super().__init__(witness)
        self.witness = witness


class Probe:
    """Collects requirements; the first false one aborts with its witness."""

    def __init__(self) -> None:
        self.exercised = False

    def require(self, condition: bool, **witness) -> None:
        self.exercised = True
        if not condition:
            raise _Failed(witness)


Routine = Callable[[InstanceContext, Probe], None]


@dataclass(frozen=True)
class CheckDescriptor:
    id: str
    anchor: str
    hypotheses: tuple[str, ...]
    conclusion: str
    routine: Routine = field(compare=False, repr=False)
    unattainable: str | None = None

    def as_dict(self) -> dict:
        out = {
            "id": self.id,
            "anchor": self.anchor,
            "hypotheses": list(self.hypotheses),
            "conclusion": self.conclusion,
        }
        if self.unattainable:
            out["unattainable"] = self.unattainable
        return out


@dataclass(frozen=True)
class CheckResult:
    check: str
    instance: str
    status: str
    witness: dict | None = None

    def as_dict(self) -> dict:
        out = {"check_id": self.check, "instance": self.instance, "status": self.status}
        if self.witness is not None:
            out["witness"] = self.witness
        return out


CATALOG: dict[str, CheckDescriptor] = {}


def check(id: str, anchor: str, hypotheses: Iterable[str], conclusion: str, unattainable: str | None = None):
    def register(fn: Routine) -> Routine:
        if id in CATALOG:
            raise ValueError(f"duplicate check id {id}")
        CATALOG[id] = CheckDescriptor(id, anchor, tuple(hypotheses), conclusion, fn, unattainable)
        return fn

    return register


# ---------------------------------------------------------------------------
# coprime modules and coprime submodules


@check(
    "prop-IM",
    "coprime modules via annihilators of factor modules",
    (),
    "M coprime iff ann(M) = ann(M/L) for every proper L iff every proper L is coprime in M",
)
def _prop_im(ctx: InstanceContext, probe: Probe) -> None:
    lat, an = ctx.lat, ctx.an
    exp_m = ctx.core.exponents[ctx.top]
    module_route = is_coprime_module(ctx.shape).holds
    ann_route = all(colon_ideal(lat[i], lat.whole).divisor == exp_m for i in range(ctx.top))
    spectrum_route = an.coprime == an.all & ~(1 << ctx.top)
    probe.require(
        module_route == ann_route == spectrum_route,
        coprime_module=module_route,
        annihilators_agree=ann_route,
        every_proper_coprime=spectrum_route,
    )


@check(
    "prop-IM+K",
    "coprime submodules via factor modules",
    (),
    "for proper K: K coprime in M iff every L with K <= L < M is coprime iff every M/L is coprime iff M/K is coprime",
)
def _prop_im_k(ctx: InstanceContext, probe: Probe) -> None:
    lat, core = ctx.lat, ctx.core
    top = ctx.top
    by_definition = [is_coprime_in(lat[i]).holds for i in range(top)]
    by_quotient = [is_coprime_in_via_quotient(lat[i]).holds for i in range(top)]
    for k in range(top):
        above = [x for x in iter_bits(core.up[k]) if x != top]
        a = by_definition[k]
        b = all(by_definition[x] for x in above)
        c = all(by_quotient[x] for x in above)
        d = by_quotient[k]
        probe.require(a == b == c == d, K=k, definition=a, overmodules=b, factor_modules=c, quotient=d)


@check(
    "prop-c-exact",
    "coprimeness along an exact sequence",
    ("0 != L < M", "K coprime in M"),
    "K cap L is coprime in L, or (K+L)/L is coprime in M/L",
)
def _prop_c_exact(ctx: InstanceContext, probe: Probe) -> None:
    lat, core, an = ctx.lat, ctx.core, ctx.an
    top = ctx.top
    images = list(an.image.values())
    outer: dict[int, bool] = {}
    inner: dict[tuple[int, int], bool] = {}
    for k in iter_bits(an.coprime):
        for l in range(1, top):
            s = core.join(k, l)
            if s not in outer:
                # (K+L)/L coprime in M/L read back in M: dM + K + L = M or dM in K + L
                outer[s] = s != top and all(core.join(img, s) == top or core.leq(img, s) for img in images)
            if outer[s]:
                probe.require(True)
                continue
            m = core.meet(k, l)
            if (m, l) not in inner:
                inner[m, l] = m != l and is_coprime_in_sub(lat[m], lat[l]).holds
            probe.require(inner[m, l], K=k, L=l)


@check(
    "lem-cop-prime",
    "annihilators of coprime modules are prime",
    (),
    "a coprime module has prime annihilator and (K : M) is prime for every coprime K",
)
def _lem_cop_prime(ctx: InstanceContext, probe: Probe) -> None:
    lat = ctx.lat
    if is_coprime_module(lat).holds:
        probe.require(is_prime(ctx.core.exponents[ctx.top]), module=True)
    for k in iter_bits(ctx.an.coprime):
        q = colon_ideal(lat[k], lat.whole)
        probe.require(q.is_prime, K=k, colon=q.divisor)


def _is_multiplication_sub(ctx: InstanceContext, l: int) -> bool:
    core = ctx.core
    images = {core.mult(d)[l] for d in divisors(core.exponents[l])}
    return all(x in images for x in iter_bits(core.down[l]))


def _is_comultiplication_sub(ctx: InstanceContext, l: int) -> bool:
    core = ctx.core
    return all(core.meet(core.torsion(core.exponents[x]), l) == x for x in iter_bits(core.down[l]))


@check(
    "prop-c-ann-1",
    "coprime multiplication modules",
    ("multiplication",),
    "a multiplication module (M or any nonzero submodule) is coprime iff it is simple",
)
def _prop_c_ann_1(ctx: InstanceContext, probe: Probe) -> None:
    an = ctx.an
    for l in range(1, an.size):
        if _is_multiplication_sub(ctx, l):
            probe.require(_has(an.second, l) == _has(an.simple, l), L=l)


@check(
    "prop-c-ann-2",
    "coprime comultiplication modules",
    ("comultiplication",),
    "a comultiplication module (M or any nonzero submodule) is coprime iff its annihilator is prime",
)
def _prop_c_ann_2(ctx: InstanceContext, probe: Probe) -> None:
    an = ctx.an
    for l in range(1, an.size):
        if _is_comultiplication_sub(ctx, l):
            probe.require(_has(an.second, l) == is_prime(ctx.core.exponents[l]), L=l)


@check(
    "cor-mult-comult",
    "modules that are both multiplication and comultiplication",
    ("multiplication", "comultiplication"),
    "coprime iff prime annihilator iff simple",
)
def _cor_mult_comult(ctx: InstanceContext, probe: Probe) -> None:
    an = ctx.an
    for l in range(1, an.size):
        if _is_multiplication_sub(ctx, l) and _is_comultiplication_sub(ctx, l):
            a = _has(an.second, l)
            b = is_prime(ctx.core.exponents[l])
            c = _has(an.simple, l)
            probe.require(a == b == c, L=l, coprime=a, prime_annihilator=b, simple=c)


@check(
    "cor-com-s",
    "spectra of multiplication and comultiplication modules",
    ("multiplication or comultiplication",),
    "multiplication: Spec^c = Max; comultiplication: Spec^s = {L != 0 : ann L prime} = simple submodules",
)
def _cor_com_s(ctx: InstanceContext, probe: Probe) -> None:
    an, core = ctx.an, ctx.core
    if ctx.struct.is_multiplication:
        probe.require(an.coprime == an.maximal, part="coprime", spectrum=_ids(an.coprime), maximal=_ids(an.maximal))
    if ctx.struct.is_comultiplication:
        prime_ann = bits_of(i for i in range(1, an.size) if is_prime(core.exponents[i]))
        probe.require(an.second == prime_ann, part="second", spectrum=_ids(an.second), prime_annihilator=_ids(prime_ann))
        probe.require(an.second == an.simple, part="simple", spectrum=_ids(an.second), simple=_ids(an.simple))


@check(
    "cor-r-s-c",
    "spectra of the ring as a module over itself",
    ("M = R",),
    "Spec^c(R) = Max(R) = {pR}; Spec^s(R) = Min(R) = {(n/p)R} = {I : ann I prime}",
)
def _cor_r_s_c(ctx: InstanceContext, probe: Probe) -> None:
    n = ctx.ring.modulus
    if ctx.shape.invariant_factors != (n,):
        return
    lat, an = ctx.lat, ctx.an
    max_ideals = bits_of(lat.span(ctx.shape.element(p)).id for p in ctx.ring.primes)
    min_ideals = bits_of(lat.span(ctx.shape.element(n // p)).id for p in ctx.ring.primes)
    probe.require(an.coprime == max_ideals == an.maximal, part="coprime", spectrum=_ids(an.coprime))
    prime_ann = bits_of(i for i in range(1, an.size) if is_prime(ctx.core.exponents[i]))
    probe.require(an.second == min_ideals == an.simple == prime_ann, part="second", spectrum=_ids(an.second))


@check(
    "rem-gen-ass",
    "second spectrum against generalized associated primes",
    ("comultiplication",),
    "L -> ann(L) is a bijection Spec^s -> Ass(M) with inverse p -> (0 :_M p)",
)
def _rem_gen_ass(ctx: InstanceContext, probe: Probe) -> None:
    if not ctx.struct.is_comultiplication:
        return
    lat, core = ctx.lat, ctx.core
    ass = {p.divisor for p in generalized_associated_primes(lat)}
    forward = {k: core.exponents[k] for k in iter_bits(ctx.an.second)}
    probe.require(len(set(forward.values())) == len(forward), part="injective", image=sorted(forward.values()))
    probe.require(set(forward.values()) == ass, part="onto", image=sorted(forward.values()), ass=sorted(ass))
    for p in sorted(ass):
        back = annihilator_in_module(Ideal(ctx.ring, p), lat).id
        probe.require(forward.get(back) == p, part="inverse", prime=p, image=back)


def _zero_divisors_mod(q: int) -> frozenset[int]:
    return frozenset(r for r in range(q) if any(r * s % q == 0 for s in range(1, q)))


@check(
    "lem-coprime-div",
    "coprime submodules via divisibility",
    (),
    "K coprime iff q = (K : M) is prime and rM + K = M for every r regular modulo q",
)
def _lem_coprime_div(ctx: InstanceContext, probe: Probe) -> None:
    lat, core, an = ctx.lat, ctx.core, ctx.an
    n = ctx.ring.modulus
    zero_divs: dict[int, frozenset[int]] = {}
    for k in range(ctx.top):
        q = colon_ideal(lat[k], lat.whole).divisor
        if q not in zero_divs:
            zero_divs[q] = _zero_divisors_mod(q)
        divisible = all(
            core.join(ctx.image(r), k) == ctx.top for r in range(n) if r % q not in zero_divs[q]
        )
        b = is_prime(q) and divisible
        probe.require(_has(an.coprime, k) == b, K=k, colon=q)


@check(
    "prop-div-2",
    "coprimeness passes to relatively divisible submodules",
    ("L relatively divisible, L != M", "K < L coprime in M"),
    "K is coprime in L",
)
def _prop_div_2(ctx: InstanceContext, probe: Probe) -> None:
    lat, core, an = ctx.lat, ctx.core, ctx.an
    for l in range(1, ctx.top):
        inside = an.coprime & core.down[l] & ~(1 << l)
        if not inside or not is_relatively_divisible(lat[l]).holds:
            continue
        for k in iter_bits(inside):
            probe.require(is_coprime_in_sub(lat[k], lat[l]).holds, K=k, L=l)


def _splits(factors: tuple[int, ...]) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    k = len(factors)
    for r in range(1, k):
        for chosen in itertools.combinations(range(1, k), r - 1):
            left = (0,) + chosen
            right = tuple(i for i in range(k) if i not in left)
            if right:
                yield tuple(factors[i] for i in left), tuple(factors[i] for i in right)


@check(
    "prop-sum-cop",
    "coprimeness of direct sums",
    ("rank >= 2",),
    "a coprime direct sum has coprime summands; with equal annihilators the sum is coprime iff every summand is",
)
def _prop_sum_cop(ctx: InstanceContext, probe: Probe) -> None:
    factors = ctx.shape.invariant_factors
    if len(factors) < 2:
        return
    ring = ctx.ring
    whole = is_coprime_module(ctx.lat).holds
    families = [[ModuleShape(ring, a), ModuleShape(ring, b)] for a, b in _splits(factors)]
    families.append([ModuleShape(ring, (f,)) for f in factors])
    for family in families:
        parts = [is_coprime_module(s).holds for s in family]
        names = [str(s) for s in family]
        if whole:
            probe.require(all(parts), part="summands", family=names)
        if len({s.exponent for s in family}) == 1:
            probe.require(whole == all(parts), part="equal annihilators", family=names)


@check(
    "prop-sum-less",
    "direct sums of modules without coprime submodules",
    ("every summand has empty coprime spectrum",),
    "the direct sum has empty coprime spectrum",
    unattainable="a nonzero finite module has a maximal submodule, which is coprime, so no summand has empty Spec^c",
)
def _prop_sum_less(ctx: InstanceContext, probe: Probe) -> None:
    factors = ctx.shape.invariant_factors
    ring = ctx.ring
    for a, b in _splits(factors):
        left = enumerate_submodules(ModuleShape(ring, a))
        right = enumerate_submodules(ModuleShape(ring, b))
        if analysis(left).coprime == 0 and analysis(right).coprime == 0:
            probe.require(ctx.an.coprime == 0, left=list(a), right=list(b))


@check(
    "ex-acc",
    "existence of coprime submodules over a noetherian ring",
    (),
    "qM is coprime in M for some prime q, so Spec^c(M) is nonempty",
)
def _ex_acc(ctx: InstanceContext, probe: Probe) -> None:
    lat = ctx.lat
    good = []
    for p in ctx.ring.primes:
        sub = ideal_times_module(Ideal(ctx.ring, p), lat.whole)
        if not sub.is_whole and is_coprime_in(sub).holds:
            good.append(p)
    probe.require(bool(good) and ctx.an.coprime != 0, primes=list(ctx.ring.primes))


@check(
    "lem-s-max",
    "maximal second submodules under a submodule",
    ("atomic", "comultiplication"),
    "every nonzero L has a maximal element in V^s(L)",
)
def _lem_s_max(ctx: InstanceContext, probe: Probe) -> None:
    if not (ctx.struct.is_atomic and ctx.struct.is_comultiplication):
        return
    core, an = ctx.core, ctx.an
    for l in range(1, an.size):
        v = an.vs(l)
        has_max = any(core.up[k] & v == 1 << k for k in iter_bits(v))
        probe.require(has_max, L=l)


# ---------------------------------------------------------------------------
# varieties


@check(
    "lem-s-prop-1-2",
    "basic identities of second varieties",
    (),
    "V^s(0) is empty, V^s(M) = Spec^s, and intersections of varieties are varieties of intersections",
)
def _lem_s_prop_12(ctx: InstanceContext, probe: Probe) -> None:
    an, core = ctx.an, ctx.core
    probe.require(an.vs(0) == 0 and an.vs(ctx.top) == an.second, part="extremes")
    var = [an.vs(i) for i in range(an.size)]
    for fam in ctx.families("lem-s-prop-1-2"):
        lhs = an.all
        for i in fam:
            lhs &= var[i]
        if lhs != var[core.meet_all(fam)]:
            probe.require(False, family=list(fam))
    probe.require(True)


@check(
    "lem-c-prop-1-2",
    "basic identities of coprime varieties",
    (),
    "V^c(M) is empty, V^c(0) = Spec^c, and intersections of varieties are varieties of sums",
)
def _lem_c_prop_12(ctx: InstanceContext, probe: Probe) -> None:
    an, core = ctx.an, ctx.core
    probe.require(an.vc(ctx.top) == 0 and an.vc(0) == an.coprime, part="extremes")
    var = [an.vc(i) for i in range(an.size)]
    for fam in ctx.families("lem-c-prop-1-2"):
        lhs = an.all
        for i in fam:
            lhs &= var[i]
        if lhs != var[core.join_all(fam)]:
            probe.require(False, family=list(fam))
    probe.require(True)


@check(
    "lem-s-prop-3",
    "unions of second varieties of annihilator submodules",
    (),
    "V^s((0:I)) u V^s((0:J)) = V^s((0:I) + (0:J)) = V^s((0 : I cap J)) = V^s((0 : IJ))",
)
def _lem_s_prop_3(ctx: InstanceContext, probe: Probe) -> None:
    an, core, lat = ctx.an, ctx.core, ctx.lat
    ideals = ctx.ring.ideals()
    for i, j in itertools.combinations_with_replacement(ideals, 2):
        ti = annihilator_in_module(i, lat).id
        tj = annihilator_in_module(j, lat).id
        union = an.vs(ti) | an.vs(tj)
        via_sum = an.vs(core.join(ti, tj))
        via_meet = an.vs(annihilator_in_module(i & j, lat).id)
        via_product = an.vs(annihilator_in_module(i * j, lat).id)
        probe.require(union == via_sum == via_meet == via_product, I=i.divisor, J=j.divisor)


@check(
    "lem-c-prop-3",
    "unions of coprime varieties of submodules IM",
    (),
    "V^c(IM) u V^c(JM) = V^c(IM cap JM) = V^c((I cap J)M) = V^c(IJM)",
)
def _lem_c_prop_3(ctx: InstanceContext, probe: Probe) -> None:
    an, core, lat = ctx.an, ctx.core, ctx.lat
    whole = lat.whole
    for i, j in itertools.combinations_with_replacement(ctx.ring.ideals(), 2):
        im = ideal_times_module(i, whole).id
        jm = ideal_times_module(j, whole).id
        union = an.vc(im) | an.vc(jm)
        via_meet = an.vc(core.meet(im, jm))
        via_ideal_meet = an.vc(ideal_times_module(i & j, whole).id)
        via_product = an.vc(ideal_times_module(i * j, whole).id)
        probe.require(union == via_meet == via_ideal_meet == via_product, I=i.divisor, J=j.divisor)


@check(
    "thm-s-top-1",
    "the restricted second varieties form a topology",
    (),
    "{V^s(L) : L = (0 :_M (0 :_R L))} satisfies the closed-set axioms",
)
def _thm_s_top_1(ctx: InstanceContext, probe: Probe) -> None:
    points, var = ctx.varieties("xi_s")
    family = {var[i] for i in iter_bits(ctx.an.l_c())}
    problem = check_axioms(points, family)
    probe.require(problem is None, problem=None if problem is None else problem[0])


@check(
    "thm-s-top-2",
    "strongly hollow second submodules give a topology",
    ("Spec^s in SH",),
    "M is a top^s-module",
)
def _thm_s_top_2(ctx: InstanceContext, probe: Probe) -> None:
    if ctx.spec_s_in_sh:
        decision = decide_top_s(ctx.lat)
        probe.require(decision.is_topology, pair=list(decision.witness or ()))


@check(
    "thm-c-top-1",
    "the restricted coprime varieties form a topology",
    (),
    "{V^c(IM) : I an ideal} satisfies the closed-set axioms",
)
def _thm_c_top_1(ctx: InstanceContext, probe: Probe) -> None:
    points, var = ctx.varieties("xi_c")
    family = {var[i] for i in iter_bits(ctx.an.l_m())}
    problem = check_axioms(points, family)
    probe.require(problem is None, problem=None if problem is None else problem[0])


@check(
    "thm-c-top-2",
    "strongly irreducible coprime submodules give a topology",
    ("Spec^c in SI",),
    "M is a top^c-module",
)
def _thm_c_top_2(ctx: InstanceContext, probe: Probe) -> None:
    if ctx.spec_c_in_si:
        decision = decide_top_c(ctx.lat)
        probe.require(decision.is_topology, pair=list(decision.witness or ()))


@check(
    "prop-com-prop",
    "comultiplication modules are top^s-modules",
    ("comultiplication",),
    "Spec^s in SH, every second submodule completely hollow, top^s, min-property",
)
def _prop_com_prop(ctx: InstanceContext, probe: Probe) -> None:
    if not ctx.struct.is_comultiplication:
        return
    an = ctx.an
    probe.require(ctx.spec_s_in_sh, part="strongly hollow", outside=_ids(an.second & ~an.sh))
    for k in iter_bits(an.second):
        probe.require(an.lower_star(k) != k, part="completely hollow", L=k)
    probe.require(ctx.top_s, part="top")
    probe.require(ctx.min_property, part="min-property")


@check(
    "prop-mul-prop",
    "multiplication modules are top^c-modules",
    ("multiplication",),
    "Spec^c in SI, every coprime submodule completely irreducible, top^c, max-property",
)
def _prop_mul_prop(ctx: InstanceContext, probe: Probe) -> None:
    if not ctx.struct.is_multiplication:
        return
    an = ctx.an
    probe.require(ctx.spec_c_in_si, part="strongly irreducible", outside=_ids(an.coprime & ~an.si))
    for k in iter_bits(an.coprime):
        probe.require(an.upper_star(k) != k, part="completely irreducible", L=k)
    probe.require(ctx.top_c, part="top")
    probe.require(has_max_property(ctx.lat).holds, part="max-property")


# ---------------------------------------------------------------------------
# closures and the lattice/topology correspondence


@check(
    "lem-closure-s",
    "closure in the second spectrum",
    ("top^s",),
    "cl(A) = V^s(H(A)) where H(A) is the sum of the members of A",
)
def _lem_closure_s(ctx: InstanceContext, probe: Probe) -> None:
    space = ctx.space("xi_s")
    if space is None:
        return
    _, var = ctx.varieties("xi_s")
    for a in ctx.subset_masks(space.size, "lem-closure-s"):
        h = ctx.core.join_all(space.ids_of(a))
        probe.require(space.closure(a) == var[h], subset=ctx.ids(space, a))


@check(
    "lem-closure-c",
    "closure in the coprime spectrum",
    ("top^c",),
    "cl(A) = V^c(J(A)) where J(A) is the intersection of the members of A",
)
def _lem_closure_c(ctx: InstanceContext, probe: Probe) -> None:
    space = ctx.space("xi_c")
    if space is None:
        return
    _, var = ctx.varieties("xi_c")
    for a in ctx.subset_masks(space.size, "lem-closure-c"):
        j = ctx.core.meet_all(space.ids_of(a))
        probe.require(space.closure(a) == var[j], subset=ctx.ids(space, a))


@check(
    "thm-11",
    "coradical submodules against closed sets",
    ("top^s",),
    "L -> V^s(L) is an order isomorphism from {L : Corad(L) = L} onto the closed sets",
)
def _thm_11(ctx: InstanceContext, probe: Probe) -> None:
    space = ctx.space("xi_s")
    if space is None:
        return
    an, core = ctx.an, ctx.core
    _, var = ctx.varieties("xi_s")
    fixed = [i for i in range(an.size) if an.corad(i) == i]
    images = [var[i] for i in fixed]
    probe.require(len(set(images)) == len(fixed), part="injective", fixed=fixed)
    probe.require(set(images) == set(space.closed_sets), part="onto", fixed=fixed)
    for x, y in itertools.product(range(len(fixed)), repeat=2):
        sub_order = core.leq(fixed[x], fixed[y])
        set_order = images[x] & images[y] == images[x]
        probe.require(sub_order == set_order, part="order", L1=fixed[x], L2=fixed[y])


@check(
    "thm-c-11",
    "radical submodules against closed sets",
    ("top^c",),
    "L -> V^c(L) is an order-reversing bijection from {L : Rad(L) = L} onto the closed sets",
)
def _thm_c_11(ctx: InstanceContext, probe: Probe) -> None:
    space = ctx.space("xi_c")
    if space is None:
        return
    an, core = ctx.an, ctx.core
    _, var = ctx.varieties("xi_c")
    fixed = [i for i in range(an.size) if an.rad(i) == i]
    images = [var[i] for i in fixed]
    probe.require(len(set(images)) == len(fixed), part="injective", fixed=fixed)
    probe.require(set(images) == set(space.closed_sets), part="onto", fixed=fixed)
    for x, y in itertools.product(range(len(fixed)), repeat=2):
        sub_order = core.leq(fixed[x], fixed[y])
        set_order = images[y] & images[x] == images[y]
        probe.require(sub_order == set_order, part="order", L1=fixed[x], L2=fixed[y])


# ---------------------------------------------------------------------------
# irreducible subsets


@check(
    "prop-duo-irr",
    "irreducible subsets of the second spectrum",
    ("top^s",),
    "A irreducible implies H(A) second; if Spec^s in SH, A irreducible iff H(A) second iff H(A) nonzero strongly hollow",
)
def _prop_duo_irr(ctx: InstanceContext, probe: Probe) -> None:
    space = ctx.space("xi_s")
    if space is None:
        return
    an, core = ctx.an, ctx.core
    for a in ctx.subset_masks(space.size, "prop-duo-irr"):
        irr = is_irreducible_subset(space, a)
        h = core.join_all(space.ids_of(a))
        second = _has(an.second, h)
        if irr:
            probe.require(second, part="1", subset=ctx.ids(space, a))
        if ctx.spec_s_in_sh:
            sh = h != 0 and _has(an.sh, h)
            probe.require(irr == second == sh, part="2", subset=ctx.ids(space, a))


@check(
    "prop-c-irr",
    "irreducible subsets of the coprime spectrum",
    ("completely distributive", "top^c"),
    "A irreducible implies J(A) coprime; if Spec^c in SI, A irreducible iff J(A) coprime iff J(A) proper strongly irreducible",
)
def _prop_c_irr(ctx: InstanceContext, probe: Probe) -> None:
    if not ctx.struct.is_completely_distributive:
        return
    space = ctx.space("xi_c")
    if space is None:
        return
    an, core = ctx.an, ctx.core
    for a in ctx.subset_masks(space.size, "prop-c-irr"):
        irr = is_irreducible_subset(space, a)
        j = core.meet_all(space.ids_of(a))
        coprime = _has(an.coprime, j)
        if irr:
            probe.require(coprime, part="1", subset=ctx.ids(space, a))
        if ctx.spec_c_in_si:
            si = j != ctx.top and _has(an.si, j)
            probe.require(irr == coprime == si, part="2", subset=ctx.ids(space, a))


@check(
    "thm-corad-s",
    "irreducibility of the second spectrum and of the simple submodules",
    ("top^s",),
    "Spec^s irreducible implies Corad(M) second; S(M) irreducible implies Soc(M) second; "
    "three-way equivalences when Spec^s in SH",
)
def _thm_corad_s(ctx: InstanceContext, probe: Probe) -> None:
    space = ctx.space("xi_s")
    if space is None:
        return
    an = ctx.an
    cases = (
        ("spectrum", space.full, an.corad(ctx.top)),
        ("simple", ctx.position_mask(space, an.simple), an.socle),
    )
    for name, subset, target in cases:
        irr = is_irreducible_subset(space, subset)
        second = _has(an.second, target)
        if irr:
            probe.require(second, part=f"{name}:1", target=target)
        if ctx.spec_s_in_sh:
            sh = target != 0 and _has(an.sh, target)
            probe.require(irr == second == sh, part=f"{name}:2", target=target)


@check(
    "thm-corad-c",
    "irreducibility of the coprime spectrum and of the maximal submodules",
    ("completely distributive", "top^c"),
    "Spec^c irreducible implies Rad^c(0) coprime; Max irreducible implies Rad(M) coprime; "
    "three-way equivalences when Spec^c in SI",
)
def _thm_corad_c(ctx: InstanceContext, probe: Probe) -> None:
    if not ctx.struct.is_completely_distributive:
        return
    space = ctx.space("xi_c")
    if space is None:
        return
    an = ctx.an
    cases = (
        ("spectrum", space.full, an.rad(0)),
        ("maximal", ctx.position_mask(space, an.maximal), an.radical),
    )
    for name, subset, target in cases:
        irr = is_irreducible_subset(space, subset)
        coprime = _has(an.coprime, target)
        if irr:
            probe.require(coprime, part=f"{name}:1", target=target)
        if ctx.spec_c_in_si:
            si = target != ctx.top and _has(an.si, target)
            probe.require(irr == coprime == si, part=f"{name}:2", target=target)


@check(
    "prop-max-irr",
    "points against irreducible closed sets, second side",
    ("Spec^s in SH",),
    "K -> V^s(K) bijects Spec^s with the irreducible closed sets and maximal second submodules with the components",
)
def _prop_max_irr(ctx: InstanceContext, probe: Probe) -> None:
    if not ctx.spec_s_in_sh:
        return
    probe.require(ctx.top_s, part="top")
    space = ctx.space("xi_s")
    an, core = ctx.an, ctx.core
    _, var = ctx.varieties("xi_s")
    points = list(iter_bits(an.second))
    images = [var[k] for k in points]
    probe.require(len(set(images)) == len(points), part="1:injective")
    probe.require(set(images) == set(irreducible_closed_sets(space)), part="1:onto")
    tops = [k for k in points if core.up[k] & an.second == 1 << k]
    comp = [var[k] for k in tops]
    probe.require(sorted(comp) == sorted(irreducible_components(space)), part="2", maximal=tops)


@check(
    "prop-c-max-irr",
    "points against irreducible closed sets, coprime side",
    ("completely distributive", "Spec^c in SI"),
    "K -> V^c(K) bijects Spec^c with the irreducible closed sets and minimal coprime submodules with the components",
)
def _prop_c_max_irr(ctx: InstanceContext, probe: Probe) -> None:
    if not (ctx.struct.is_completely_distributive and ctx.spec_c_in_si):
        return
    probe.require(ctx.top_c, part="top")
    space = ctx.space("xi_c")
    an, core = ctx.an, ctx.core
    _, var = ctx.varieties("xi_c")
    points = list(iter_bits(an.coprime))
    images = [var[k] for k in points]
    probe.require(len(set(images)) == len(points), part="1:injective")
    probe.require(set(images) == set(irreducible_closed_sets(space)), part="1:onto")
    bottoms = [k for k in points if core.down[k] & an.coprime == 1 << k]
    comp = [var[k] for k in bottoms]
    probe.require(sorted(comp) == sorted(irreducible_components(space)), part="2", minimal=bottoms)


@check("cor-sober-s", "sobriety of the second spectrum", ("Spec^s in SH",), "Spec^s is a sober space")
def _cor_sober_s(ctx: InstanceContext, probe: Probe) -> None:
    if ctx.spec_s_in_sh:
        probe.require(ctx.top_s, part="top")
        probe.require(is_sober(ctx.space("xi_s")), part="sober")


@check(
    "cor-sober-c",
    "sobriety of the coprime spectrum",
    ("completely distributive", "Spec^c in SI"),
    "Spec^c is a sober space",
)
def _cor_sober_c(ctx: InstanceContext, probe: Probe) -> None:
    if ctx.struct.is_completely_distributive and ctx.spec_c_in_si:
        probe.require(ctx.top_c, part="top")
        probe.require(is_sober(ctx.space("xi_c")), part="sober")


# ---------------------------------------------------------------------------
# connectedness


@check(
    "prop-uniform",
    "uniform modules and ultraconnected second spectra",
    ("atomic", "top^s"),
    "M uniform iff Spec^s ultraconnected",
)
def _prop_uniform(ctx: InstanceContext, probe: Probe) -> None:
    if ctx.struct.is_atomic and ctx.top_s:
        uniform = ctx.struct.is_uniform
        ultra = is_ultraconnected(ctx.space("xi_s"))
        probe.require(uniform == ultra, uniform=uniform, ultraconnected=ultra)


@check(
    "thm-c-hollow",
    "hollow modules and ultraconnected coprime spectra",
    ("coatomic", "top^c"),
    "M hollow iff Spec^c ultraconnected",
)
def _thm_c_hollow(ctx: InstanceContext, probe: Probe) -> None:
    if ctx.struct.is_coatomic and ctx.top_c:
        hollow = ctx.struct.is_hollow
        ultra = is_ultraconnected(ctx.space("xi_c"))
        probe.require(hollow == ultra, hollow=hollow, ultraconnected=ultra)


@check(
    "prop-it-irr",
    "discreteness when every second submodule is simple",
    ("top^s", "Spec^s = S(M)"),
    "min-property implies discrete; a unique simple submodule iff min-property and connected",
)
def _prop_it_irr(ctx: InstanceContext, probe: Probe) -> None:
    an = ctx.an
    if not (ctx.top_s and an.second & ~an.simple == 0):
        return
    space = ctx.space("xi_s")
    if ctx.min_property:
        probe.require(is_discrete(space), part="1")
    unique = _popcount(an.simple) == 1
    connected = is_connected_subset(space, space.full)
    probe.require(unique == (ctx.min_property and connected), part="2", unique=unique, connected=connected)


@check(
    "prop-irr-c",
    "discreteness when every coprime submodule is maximal",
    ("top^c", "Spec^c = Max(M)"),
    "complete max-property implies discrete; a unique maximal submodule iff complete max-property and connected",
)
def _prop_irr_c(ctx: InstanceContext, probe: Probe) -> None:
    an = ctx.an
    if not (ctx.top_c and an.coprime & ~an.maximal == 0):
        return
    space = ctx.space("xi_c")
    if ctx.complete_max_property:
        probe.require(is_discrete(space), part="1")
    unique = _popcount(an.maximal) == 1
    connected = is_connected_subset(space, space.full)
    probe.require(
        unique == (ctx.complete_max_property and connected), part="2", unique=unique, connected=connected
    )


@check(
    "thm-colocal",
    "colocal modules and connected second spectra",
    ("atomic", "S(M) = Spec^s", "Spec^s in SH"),
    "M colocal iff Spec^s connected",
)
def _thm_colocal(ctx: InstanceContext, probe: Probe) -> None:
    an = ctx.an
    if not (ctx.struct.is_atomic and an.simple == an.second and ctx.spec_s_in_sh):
        return
    probe.require(ctx.top_s, part="top")
    space = ctx.space("xi_s")
    colocal = ctx.struct.is_colocal
    connected = is_connected_subset(space, space.full)
    probe.require(colocal == connected, colocal=colocal, connected=connected)


@check(
    "thm-c-colocal",
    "local modules and connected coprime spectra",
    ("coatomic", "top^c", "complete max-property", "Spec^c = Max(M)"),
    "M local iff Spec^c connected",
)
def _thm_c_colocal(ctx: InstanceContext, probe: Probe) -> None:
    an = ctx.an
    if not (ctx.struct.is_coatomic and ctx.top_c and ctx.complete_max_property and an.coprime == an.maximal):
        return
    space = ctx.space("xi_c")
    local = ctx.struct.is_local
    connected = is_connected_subset(space, space.full)
    probe.require(local == connected, local=local, connected=connected)


_CONNECTED_VACUOUS = (
    "{side} in {strong} forces every point to be a simple/maximal submodule, so the space is discrete "
    "and has no connected subset with two or more points"
)


def _comparable_partners(ctx: InstanceContext, space: FiniteSpace, salt: str, probe: Probe) -> None:
    core = ctx.core
    for a in ctx.subset_masks(space.size, salt):
        if _popcount(a) < 2 or not is_connected_subset(space, a):
            continue
        members = space.ids_of(a)
        for x in members:
            ok = any(y != x and (core.leq(x, y) or core.leq(y, x)) for y in members)
            probe.require(ok, subset=list(members), point=x)


@check(
    "lem-1n",
    "connected subsets of the second spectrum",
    ("Spec^s in SH", "A connected, |A| >= 2"),
    "each member of A is comparable with another member of A",
    unattainable=_CONNECTED_VACUOUS.format(side="Spec^s", strong="SH"),
)
def _lem_1n(ctx: InstanceContext, probe: Probe) -> None:
    if ctx.spec_s_in_sh and ctx.top_s:
        _comparable_partners(ctx, ctx.space("xi_s"), "lem-1n", probe)


@check(
    "lem-c-1n",
    "connected subsets of the coprime spectrum",
    ("Spec^c in SI", "A connected, |A| >= 2"),
    "each member of A is comparable with another member of A",
    unattainable=_CONNECTED_VACUOUS.format(side="Spec^c", strong="SI"),
)
def _lem_c_1n(ctx: InstanceContext, probe: Probe) -> None:
    if ctx.spec_c_in_si and ctx.top_c:
        _comparable_partners(ctx, ctx.space("xi_c"), "lem-c-1n", probe)


# ---------------------------------------------------------------------------
# separation


@check(
    "lem-s-t1",
    "closed points of the second spectrum",
    ("atomic", "top^s"),
    "L simple iff L second with V^s(L) = {L} iff {L} closed",
)
def _lem_s_t1(ctx: InstanceContext, probe: Probe) -> None:
    if not (ctx.struct.is_atomic and ctx.top_s):
        return
    an = ctx.an
    space = ctx.space("xi_s")
    for l in range(an.size):
        a = _has(an.simple, l)
        b = _has(an.second, l) and an.vs(l) == 1 << l
        c = _has(an.second, l) and space.is_closed(1 << space.position[l])
        probe.require(a == b == c, L=l)


@check(
    "prop-c-pts",
    "closed points of the coprime spectrum",
    ("coatomic", "top^c"),
    "L maximal iff L coprime with V^c(L) = {L} iff {L} closed",
)
def _prop_c_pts(ctx: InstanceContext, probe: Probe) -> None:
    if not (ctx.struct.is_coatomic and ctx.top_c):
        return
    an = ctx.an
    space = ctx.space("xi_c")
    for l in range(an.size):
        a = _has(an.maximal, l)
        b = _has(an.coprime, l) and an.vc(l) == 1 << l
        c = _has(an.coprime, l) and space.is_closed(1 << space.position[l])
        probe.require(a == b == c, L=l)


@check("prop-T1", "T1 second spectra", ("atomic", "top^s"), "Spec^s = S(M) iff the space is T1")
def _prop_t1(ctx: InstanceContext, probe: Probe) -> None:
    if ctx.struct.is_atomic and ctx.top_s:
        a = ctx.an.second == ctx.an.simple
        b = is_t1(ctx.space("xi_s"))
        probe.require(a == b, all_simple=a, t1=b)


@check("prop-c-T1", "T1 coprime spectra", ("coatomic", "top^c"), "Spec^c = Max(M) iff the space is T1")
def _prop_c_t1(ctx: InstanceContext, probe: Probe) -> None:
    if ctx.struct.is_coatomic and ctx.top_c:
        a = ctx.an.coprime == ctx.an.maximal
        b = is_t1(ctx.space("xi_c"))
        probe.require(a == b, all_maximal=a, t1=b)


@check(
    "thm-T2",
    "separation of the second spectrum",
    ("atomic", "top^s", "min-property"),
    "Spec^s = S(M) iff discrete iff T2 iff T1",
)
def _thm_t2(ctx: InstanceContext, probe: Probe) -> None:
    if not (ctx.struct.is_atomic and ctx.top_s and ctx.min_property):
        return
    space = ctx.space("xi_s")
    values = {
        "all_simple": ctx.an.second == ctx.an.simple,
        "discrete": is_discrete(space),
        "t2": is_t2(space),
        "t1": is_t1(space),
    }
    probe.require(len(set(values.values())) == 1, **values)


@check(
    "thm-c-T2",
    "separation of the coprime spectrum",
    ("coatomic", "top^c", "complete max-property"),
    "Spec^c = Max(M) iff discrete iff T2 iff T1",
)
def _thm_c_t2(ctx: InstanceContext, probe: Probe) -> None:
    if not (ctx.struct.is_coatomic and ctx.top_c and ctx.complete_max_property):
        return
    space = ctx.space("xi_c")
    values = {
        "all_maximal": ctx.an.coprime == ctx.an.maximal,
        "discrete": is_discrete(space),
        "t2": is_t2(space),
        "t1": is_t1(space),
    }
    probe.require(len(set(values.values())) == 1, **values)


# ---------------------------------------------------------------------------
# strongly hollow / irreducible, coradical, radical


@check(
    "rem-s-strong",
    "sources of strongly hollow submodules",
    ("uniserial, or S(M) in SH",),
    "uniserial implies every nonzero submodule SH; S(M) in SH implies min-property; "
    "Spec^s in SH iff V^s(L1) u V^s(L2) = V^s(L1 + L2) for all pairs",
)
def _rem_s_strong(ctx: InstanceContext, probe: Probe) -> None:
    an, core = ctx.an, ctx.core
    if ctx.struct.is_uniserial:
        probe.require(an.sh == an.all & ~1, part="uniserial")
    if an.simple & ~an.sh == 0:
        probe.require(ctx.min_property, part="min-property")
    unions = all(
        an.vs(a) | an.vs(b) == an.vs(core.join(a, b)) for a, b in itertools.combinations(range(an.size), 2)
    )
    probe.require(ctx.spec_s_in_sh == unions, part="pairs", contained=ctx.spec_s_in_sh, unions=unions)


@check(
    "ex-strong",
    "sources of strongly irreducible submodules",
    ("uniserial, or Max(M) in SI",),
    "uniserial implies every proper submodule SI; Max(M) in SI implies max-property; "
    "Spec^c in SI iff V^c(L1) u V^c(L2) = V^c(L1 cap L2) for all pairs",
)
def _ex_strong(ctx: InstanceContext, probe: Probe) -> None:
    an, core = ctx.an, ctx.core
    if ctx.struct.is_uniserial:
        probe.require(an.si == an.all & ~(1 << ctx.top), part="uniserial")
    if an.maximal & ~an.si == 0:
        probe.require(has_max_property(ctx.lat).holds, part="max-property")
    unions = all(
        an.vc(a) | an.vc(b) == an.vc(core.meet(a, b)) for a, b in itertools.combinations(range(an.size), 2)
    )
    probe.require(ctx.spec_c_in_si == unions, part="pairs", contained=ctx.spec_c_in_si, unions=unions)


@check(
    "rem-corad-2",
    "the second coradical is a kernel operator",
    (),
    "Corad(L) <= L, Corad is monotone and idempotent",
)
def _rem_corad_2(ctx: InstanceContext, probe: Probe) -> None:
    an, core = ctx.an, ctx.core
    corad = [an.corad(i) for i in range(an.size)]
    for i in range(an.size):
        probe.require(core.leq(corad[i], i) and corad[corad[i]] == corad[i], L=i)
        for j in iter_bits(core.up[i]):
            probe.require(core.leq(corad[i], corad[j]), L1=i, L2=j)


@check(
    "rem-rad-2",
    "the coprime radical is a closure operator",
    (),
    "L <= Rad(L), Rad is monotone and idempotent",
)
def _rem_rad_2(ctx: InstanceContext, probe: Probe) -> None:
    an, core = ctx.an, ctx.core
    rad = [an.rad(i) for i in range(an.size)]
    for i in range(an.size):
        probe.require(core.leq(i, rad[i]) and rad[rad[i]] == rad[i], L=i)
        for j in iter_bits(core.up[i]):
            probe.require(core.leq(rad[i], rad[j]), L1=i, L2=j)


@check(
    "rem-simple-char",
    "points, closures and empty varieties on the second side",
    ("top^s for the topological parts",),
    "T0; cl{L} = V^s(L); X^s(L) empty implies Soc <= L (iff when S(M) = Spec^s); atomic: V^s(L) empty iff L = 0",
)
def _rem_simple_char(ctx: InstanceContext, probe: Probe) -> None:
    an, core = ctx.an, ctx.core
    space = ctx.space("xi_s")
    if space is not None:
        _, var = ctx.varieties("xi_s")
        probe.require(is_t0(space), part="T0")
        for l in iter_bits(an.second):
            probe.require(space.point_closures[space.position[l]] == var[l], part="closure", L=l)
    all_simple = an.simple == an.second
    for l in range(an.size):
        empty_complement = an.second & ~an.vs(l) == 0
        socle_inside = core.leq(an.socle, l)
        if empty_complement:
            probe.require(socle_inside, part="socle", L=l)
        if all_simple and socle_inside:
            probe.require(empty_complement, part="socle converse", L=l)
        if ctx.struct.is_atomic:
            probe.require((an.vs(l) == 0) == (l == 0), part="atomic", L=l)


@check(
    "rem-max-char",
    "points, closures and empty varieties on the coprime side",
    ("top^c for the topological parts",),
    "T0; cl{L} = V^c(L); X^c(L) empty implies L <= Rad(M) (iff when Max(M) = Spec^c); "
    "coatomic: V^c(L) empty iff L = M",
)
def _rem_max_char(ctx: InstanceContext, probe: Probe) -> None:
    an, core = ctx.an, ctx.core
    space = ctx.space("xi_c")
    if space is not None:
        _, var = ctx.varieties("xi_c")
        probe.require(is_t0(space), part="T0")
        for l in iter_bits(an.coprime):
            probe.require(space.point_closures[space.position[l]] == var[l], part="closure", L=l)
    all_maximal = an.maximal == an.coprime
    for l in range(an.size):
        empty_complement = an.coprime & ~an.vc(l) == 0
        inside_radical = core.leq(l, an.radical)
        if empty_complement:
            probe.require(inside_radical, part="radical", L=l)
        if all_maximal and inside_radical:
            probe.require(empty_complement, part="radical converse", L=l)
        if ctx.struct.is_coatomic:
            probe.require((an.vc(l) == 0) == (l == ctx.top), part="coatomic", L=l)


# ---------------------------------------------------------------------------
# open questions recorded as checks


@check(
    "oq-tau-sc-equal",
    "full against restricted second topology",
    ("comultiplication",),
    "every L equals (0 :_M (0 :_R L)) and the two closed-set families coincide",
)
def _oq_tau_sc(ctx: InstanceContext, probe: Probe) -> None:
    if not ctx.struct.is_comultiplication:
        return
    probe.require(ctx.an.l_c() == ctx.an.all, part="all annihilator submodules")
    full = ctx.space("xi_s")
    probe.require(full is not None, part="top")
    restricted = ctx.space("xi_s_c")
    probe.require(full.closed_sets == restricted.closed_sets, part="families")


@check(
    "oq-tau-cm-equal",
    "full against restricted coprime topology",
    ("multiplication",),
    "every L equals IM for some ideal I and the two closed-set families coincide",
)
def _oq_tau_cm(ctx: InstanceContext, probe: Probe) -> None:
    if not ctx.struct.is_multiplication:
        return
    probe.require(ctx.an.l_m() == ctx.an.all, part="all submodules IM")
    full = ctx.space("xi_c")
    probe.require(full is not None, part="top")
    restricted = ctx.space("xi_c_m")
    probe.require(full.closed_sets == restricted.closed_sets, part="families")


@check(
    "oq-distributive",
    "distributive against completely distributive",
    (),
    "the submodule lattice is distributive iff it is completely distributive",
)
def _oq_distributive(ctx: InstanceContext, probe: Probe) -> None:
    d = distributive_witness(ctx.lat)
    c = completely_distributive_witness(ctx.lat)
    probe.require(
        (d is None) == (c is None),
        distributive_witness=None if d is None else list(d),
        completely_distributive_witness=None if c is None else list(c),
    )


# ---------------------------------------------------------------------------
# running


def select_checks(patterns: Iterable[str] | None = None) -> list[CheckDescriptor]:
    """Catalogue entries matching any of the shell-style ``patterns``."""
    if not patterns:
        return list(CATALOG.values())
    patterns = list(patterns)
    unknown = [p for p in patterns if not fnmatch.filter(CATALOG, p)]
    if unknown:
        raise UnknownCheck(f"no check matches {', '.join(unknown)}")
    return [d for d in CATALOG.values() if any(fnmatch.fnmatchcase(d.id, p) for p in patterns)]


def run_on_context(descriptor: CheckDescriptor, ctx: InstanceContext) -> CheckResult:
    probe = Probe()
    try:
        descriptor.routine(ctx, probe)
    except _Failed as failure:
        return CheckResult(descriptor.id, ctx.label, "fail", failure.witness)
    return CheckResult(descriptor.id, ctx.label, "pass" if probe.exercised else "vacuous")


def _context(shape: ModuleShape, budget: InstanceBudget) -> InstanceContext | BudgetExceeded:
    try:
        lat = enumerate_submodules(shape, budget=budget.max_lattice)
    except BudgetExceeded as exc:
        return exc
    return InstanceContext(shape, lat)


def run_check(
    descriptor: CheckDescriptor | str, instance: ModuleShape | str, budget: InstanceBudget | None = None
) -> CheckResult:
    if isinstance(descriptor, str):
        if descriptor not in CATALOG:
            raise UnknownCheck(f"unknown check {descriptor!r}")
        descriptor = CATALOG[descriptor]
    shape = ModuleShape.parse(instance) if isinstance(instance, str) else instance
    ctx = _context(shape, budget or InstanceBudget())
    if isinstance(ctx, BudgetExceeded):
        return CheckResult(descriptor.id, str(shape), "skipped", ctx.as_dict())
    return run_on_context(descriptor, ctx)


def replay(result: CheckResult, budget: InstanceBudget | None = None) -> CheckResult:
    """Re-run the check recorded in ``result`` on the same instance."""
    return run_check(result.check, result.instance, budget)


@dataclass
class SuiteReport:
    budget: InstanceBudget
    checks: list[CheckDescriptor]
    results: list[CheckResult]
    instances: int
    hypothesis_classes: dict[str, int]
    distributive: dict[str, int]

    @cached_property
    def counts(self) -> dict[str, dict[str, int]]:
        out = {d.id: dict.fromkeys(STATUSES, 0) for d in self.checks}
        for r in self.results:
            out[r.check][r.status] += 1
        return out

    @property
    def failures(self) -> list[CheckResult]:
        return [r for r in self.results if r.status == "fail"]

    @property
    def ok(self) -> bool:
        return not self.failures

    @property
    def coverage_gaps(self) -> list[str]:
        """Checks never exercised and not explained as unattainable."""
        return [d.id for d in self.checks if self.counts[d.id]["pass"] + self.counts[d.id]["fail"] == 0 and not d.unattainable]

    @property
    def unattainable(self) -> list[dict]:
        out = []
        for d in self.checks:
            if d.unattainable:
                c = self.counts[d.id]
                out.append({"id": d.id, "reason": d.unattainable, "exercised": c["pass"] + c["fail"]})
        return out

    def to_dict(self, include_results: str = "all") -> dict:
        """``include_results``: "all", "failures" (fail and skipped) or "none"."""
        if include_results == "all":
            rows = self.results
        elif include_results == "failures":
            rows = [r for r in self.results if r.status in ("fail", "skipped")]
        elif include_results == "none":
            rows = []
        else:
            raise ValueError(f"unknown results selection {include_results!r}")
        totals = dict.fromkeys(STATUSES, 0)
        for c in self.counts.values():
            for k, v in c.items():
                totals[k] += v
        return {
            "tool": "modspec",
            "version": __version__,
            "command": "verify",
            "instance": None,
            "budget": self.budget.as_dict(),
            "checks": [d.as_dict() for d in self.checks],
            "results": [r.as_dict() for r in rows],
            "summary": {
                "ok": self.ok,
                "instances": self.instances,
                "totals": totals,
                "per_check": self.counts,
                "coverage_gaps": self.coverage_gaps,
                "unattainable": self.unattainable,
                "hypothesis_classes": self.hypothesis_classes,
                "distributive": self.distributive,
                "sampling": {
                    "subsets_exhaustive_up_to": SUBSET_EXHAUSTIVE,
                    "subset_samples": SUBSET_SAMPLES,
                    "triple_families_exhaustive_up_to": FAMILY_EXHAUSTIVE,
                    "triple_family_samples": FAMILY_SAMPLES,
                },
            },
        }

    def to_json(self, include_results: str = "all") -> str:
        return json.dumps(self.to_dict(include_results), indent=1, separators=(",", ": ")) + "\n"


def run_suite(
    budget: InstanceBudget | None = None,
    check_filter: Iterable[str] | None = None,
    progress: Callable[[str], None] | None = None,
) -> SuiteReport:
    budget = budget or InstanceBudget()
    checks = select_checks(check_filter)
    results: list[CheckResult] = []
    classes = dict.fromkeys(HYPOTHESIS_CLASSES, 0)
    classes["over_budget"] = 0
    dist = {"distributive": 0, "completely_distributive": 0, "distributive_not_completely": 0}
    instances = 0
    for shape in enumerate_instances(budget):
        instances += 1
        if progress:
            progress(str(shape))
        ctx = _context(shape, budget)
        if isinstance(ctx, BudgetExceeded):
            classes["over_budget"] += 1
            results.extend(CheckResult(d.id, str(shape), "skipped", ctx.as_dict()) for d in checks)
            continue
        for tag in ctx.tags:
            classes[tag] += 1
        d = ctx.struct.is_distributive
        c = ctx.struct.is_completely_distributive
        dist["distributive"] += d
        dist["completely_distributive"] += c
        dist["distributive_not_completely"] += d and not c
        results.extend(run_on_context(desc, ctx) for desc in checks)
    return SuiteReport(budget, checks, results, instances, classes, dist)
