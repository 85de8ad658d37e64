"""Exact arithmetic for finite modules over Z/nZ.

A module is presented by its invariant factors d_1 | d_2 | ... | d_k, so
M = Z/d_1 + ... + Z/d_k and every element is a coordinate tuple.  Elements are
indexed lexicographically (first coordinate most significant), and a submodule
is stored as a bitmask over those indices.  The whole submodule lattice is
enumerated once per isomorphism type and shared by every ring Z/nZ that acts
on it.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import cached_property, reduce
from itertools import product
from typing import Iterable, Iterator, Sequence

import numpy as np

DEFAULT_MEMBER_BUDGET = 5000
DEFAULT_ELEMENT_BUDGET = 4096
# lattices at most this large are re-checked for sum/intersection closure on construction
_AUTO_VERIFY_LIMIT = 150


class AlgebraError(ValueError):
    pass


class InstanceParseError(AlgebraError):
    pass


class NotProper(AlgebraError):
    """Raised when an operation needs a proper submodule K < M and got M."""


class BudgetExceeded(RuntimeError):
    def __init__(self, kind: str, limit: int, observed: int, factors: Sequence[int] = ()):
        self.kind = kind
        self.limit = limit
        self.observed = observed
        self.factors = tuple(factors)
        super().__init__(f"{kind} budget exceeded: {observed} > {limit} for invariant factors {list(factors)}")

    def as_dict(self) -> dict:
        return {"kind": self.kind, "limit": self.limit, "observed": self.observed}


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % p for p in range(2, math.isqrt(n) + 1))


def prime_factorization(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def lcm(*xs: int) -> int:
    return reduce(lambda a, b: a * b // math.gcd(a, b), xs, 1)


# ---------------------------------------------------------------------------
# ring and ideals


@dataclass(frozen=True)
class RingZn:
    """The ring Z/nZ, n >= 2."""

    modulus: int

    def __post_init__(self) -> None:
        if not isinstance(self.modulus, int) or self.modulus < 2:
            raise AlgebraError(f"modulus must be an integer >= 2, got {self.modulus!r}")

    @cached_property
    def primes(self) -> tuple[int, ...]:
        return tuple(sorted(prime_factorization(self.modulus)))

    @cached_property
    def divisors(self) -> tuple[int, ...]:
        return tuple(divisors(self.modulus))

    def ideal(self, divisor: int) -> Ideal:
        return Ideal(self, divisor)

    def ideals(self) -> list[Ideal]:
        """All ideals, ordered by generating divisor (R first, 0 last)."""
        return [Ideal(self, d) for d in self.divisors]

    def prime_ideals(self) -> list[Ideal]:
        return [Ideal(self, p) for p in self.primes]

    # every prime ideal of Z/nZ is maximal
    maximal_ideals = prime_ideals

    def minimal_ideals(self) -> list[Ideal]:
        return [Ideal(self, self.modulus // p) for p in self.primes]

    def zero_divisors(self) -> frozenset[int]:
        n = self.modulus
        return frozenset(r for r in range(n) if any((r * s) % n == 0 for s in range(1, n)))

    def units(self) -> frozenset[int]:
        return frozenset(r for r in range(self.modulus) if math.gcd(r, self.modulus) == 1)

    def __str__(self) -> str:
        return f"Z/{self.modulus}"


@dataclass(frozen=True)
class Ideal:
    """The ideal dZ/nZ, stored by its canonical generator d | n.

    d = 1 is the whole ring and d = n the zero ideal.
    """

    ring: RingZn
    divisor: int

    def __post_init__(self) -> None:
        n = self.ring.modulus
        if not 1 <= self.divisor <= n or n % self.divisor:
            raise AlgebraError(f"ideal divisor {self.divisor} does not divide {n}")

    @classmethod
    def generated_by(cls, ring: RingZn, *gens: int) -> Ideal:
        return cls(ring, math.gcd(ring.modulus, *gens))

    @property
    def is_zero(self) -> bool:
        return self.divisor == self.ring.modulus

    @property
    def is_whole(self) -> bool:
        return self.divisor == 1

    @property
    def is_prime(self) -> bool:
        return is_prime(self.divisor)

    is_maximal = is_prime

    def elements(self) -> list[int]:
        return list(range(0, self.ring.modulus, self.divisor))

    def __contains__(self, r: int) -> bool:
        return (r % self.ring.modulus) % self.divisor == 0

    def __le__(self, other: Ideal) -> bool:
        return self.divisor % other.divisor == 0

    def __lt__(self, other: Ideal) -> bool:
        return self <= other and self != other

    def __add__(self, other: Ideal) -> Ideal:
        return Ideal(self.ring, math.gcd(self.divisor, other.divisor))

    def __mul__(self, other: Ideal) -> Ideal:
        return Ideal.generated_by(self.ring, self.divisor * other.divisor)

    def __and__(self, other: Ideal) -> Ideal:
        return Ideal(self.ring, lcm(self.divisor, other.divisor))

    def __str__(self) -> str:
        return f"({self.divisor})"


# ---------------------------------------------------------------------------
# modules and elements


_INSTANCE_RE = re.compile(r"^\s*n\s*=\s*(\d+)\s*;\s*M\s*=\s*(\d+(?:\s*,\s*\d+)*)\s*$")


@dataclass(frozen=True)
class ModuleShape:
    """A finite Z/nZ-module given by invariant factors d_1 | ... | d_k."""

    ring: RingZn
    invariant_factors: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "invariant_factors", tuple(self.invariant_factors))
        fs = self.invariant_factors
        n = self.ring.modulus
        if not fs:
            raise AlgebraError("a module needs at least one invariant factor")
        for d in fs:
            if d < 2:
                raise AlgebraError(f"invariant factor {d} must be >= 2")
            if n % d:
                raise AlgebraError(f"invariant factor {d} does not divide the modulus {n}")
        for a, b in zip(fs, fs[1:]):
            if b % a:
                canon = ",".join(map(str, _canonical_factors(fs)))
                raise AlgebraError(
                    f"invariant factors {','.join(map(str, fs))} are not a divisibility chain "
                    f"({a} does not divide {b}); the isomorphic chain is {canon}"
                )

    @classmethod
    def parse(cls, text: str) -> ModuleShape:
        """Parse ``n=<modulus>;M=<d1,...,dk>``."""
        m = _INSTANCE_RE.match(text)
        if not m:
            raise InstanceParseError(f"cannot parse instance {text!r}; expected n=<modulus>;M=<d1,d2,...>")
        try:
            ring = RingZn(int(m.group(1)))
            return cls(ring, tuple(int(x) for x in m.group(2).split(",")))
        except AlgebraError as exc:
            raise InstanceParseError(f"invalid instance {text!r}: {exc}") from None

    @classmethod
    def cyclic(cls, ring: RingZn, d: int | None = None) -> ModuleShape:
        return cls(ring, (ring.modulus if d is None else d,))

    @property
    def order(self) -> int:
        return math.prod(self.invariant_factors)

    @property
    def exponent(self) -> int:
        return self.invariant_factors[-1]

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)

    @property
    def is_cyclic(self) -> bool:
        return self.rank == 1

    def is_isomorphic(self, other: ModuleShape) -> bool:
        return self.invariant_factors == other.invariant_factors

    def element(self, *coords: int) -> Element:
        if len(coords) == 1 and isinstance(coords[0], (tuple, list)):
            coords = tuple(coords[0])
        return Element(self, tuple(coords))

    @property
    def zero(self) -> Element:
        return Element(self, (0,) * self.rank)

    def elements(self) -> Iterator[Element]:
        for c in product(*(range(d) for d in self.invariant_factors)):
            yield Element(self, c)

    def __str__(self) -> str:
        return f"n={self.ring.modulus};M={','.join(map(str, self.invariant_factors))}"


@dataclass(frozen=True)
class Element:
    shape: ModuleShape
    coords: tuple[int, ...]

    def __post_init__(self) -> None:
        fs = self.shape.invariant_factors
        if len(self.coords) != len(fs):
            raise AlgebraError(f"element {self.coords} has wrong length for {self.shape}")
        object.__setattr__(self, "coords", tuple(int(a) % d for a, d in zip(self.coords, fs)))

    def __add__(self, other: Element) -> Element:
        return Element(self.shape, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> Element:
        return Element(self.shape, tuple(-a for a in self.coords))

    def __sub__(self, other: Element) -> Element:
        return self + (-other)

    def __rmul__(self, r: int) -> Element:
        return Element(self.shape, tuple(r * a for a in self.coords))

    @property
    def order(self) -> int:
        return lcm(*(d // math.gcd(a, d) for a, d in zip(self.coords, self.shape.invariant_factors)))

    @property
    def index(self) -> int:
        idx = 0
        for a, d in zip(self.coords, self.shape.invariant_factors):
            idx = idx * d + a
        return idx

    def __str__(self) -> str:
        if len(self.coords) == 1:
            return str(self.coords[0])
        return "(" + ",".join(map(str, self.coords)) + ")"


def _canonical_factors(cyclic_orders: Iterable[int]) -> tuple[int, ...]:
    """Invariant factors of a direct sum of cyclic groups of the given orders."""
    powers: dict[int, list[int]] = {}
    for d in cyclic_orders:
        for p, e in prime_factorization(d).items():
            powers.setdefault(p, []).append(p**e)
    if not powers:
        return ()
    k = max(len(v) for v in powers.values())
    factors = [1] * k
    for ps in powers.values():
        # largest prime powers go into the largest invariant factors
        for i, q in enumerate(sorted(ps, reverse=True)):
            factors[k - 1 - i] *= q
    return tuple(f for f in factors if f > 1)


def direct_sum(m1: ModuleShape, m2: ModuleShape) -> ModuleShape:
    if m1.ring != m2.ring:
        raise AlgebraError("direct summands must be modules over the same ring")
    return ModuleShape(m1.ring, _canonical_factors(m1.invariant_factors + m2.invariant_factors))


# ---------------------------------------------------------------------------
# lattice enumeration


class _LatticeCore:
    """Submodule lattice of one finite abelian group, independent of the ring."""

    def __init__(self, factors: tuple[int, ...], member_budget: int):
        self.factors = factors
        self.order = math.prod(factors)
        self.exponent = factors[-1]
        k = len(factors)
        self._dvec = np.array(factors, dtype=np.int64)
        w = [1] * k
        for i in range(k - 2, -1, -1):
            w[i] = w[i + 1] * factors[i + 1]
        self._weights = np.array(w, dtype=np.int64)
        self.coords = np.array(list(product(*(range(d) for d in factors))), dtype=np.int64).reshape(self.order, k)
        self._mult: dict[int, list[int]] = {}
        self._torsion: dict[int, int] = {}
        self._enumerate(member_budget)

    # element helpers ---------------------------------------------------

    def encode(self, c: np.ndarray) -> np.ndarray:
        return (c % self._dvec) @ self._weights

    def mask_of(self, idx: np.ndarray) -> int:
        bits = np.zeros(self.order, dtype=bool)
        bits[idx] = True
        return int.from_bytes(np.packbits(bits, bitorder="little").tobytes(), "little")

    def indices(self, i: int) -> np.ndarray:
        return self._idx[i]

    def id_of_indices(self, idx: np.ndarray) -> int:
        return self.id_by_mask[self.mask_of(idx)]

    # enumeration -------------------------------------------------------

    def _enumerate(self, budget: int) -> None:
        e = self.exponent
        steps = np.arange(e, dtype=np.int64)[:, None]
        cyclics: dict[int, tuple[int, np.ndarray]] = {}
        for g in range(self.order):
            seq = self.encode(steps * self.coords[g])
            # multiples in order 0, g, 2g, ... up to the order of g
            zeros = np.flatnonzero(seq[1:] == 0)
            o = int(zeros[0]) + 1 if len(zeros) else e
            mults = seq[:o]
            m = self.mask_of(mults)
            if m not in cyclics:
                cyclics[m] = (g, mults)
        cyc = sorted(cyclics.items(), key=lambda kv: (len(kv[1][1]), kv[1][0]))

        zero_idx = np.array([0], dtype=np.int64)
        found: dict[int, tuple[np.ndarray, tuple[int, ...]]] = {1: (zero_idx, ())}
        level = [1]
        while level:
            nxt = []
            for xm in level:
                x_idx, gens = found[xm]
                xc = self.coords[x_idx]
                for _, (g, mults) in cyc:
                    if (xm >> g) & 1:
                        continue
                    parts = [x_idx]
                    for t in mults[1:]:
                        if (xm >> int(t)) & 1:
                            break
                        parts.append(self.encode(xc + self.coords[t]))
                    y_idx = np.sort(np.concatenate(parts))
                    ym = self.mask_of(y_idx)
                    if ym in found:
                        continue
                    found[ym] = (y_idx, gens + (g,))
                    nxt.append(ym)
                    if len(found) > budget:
                        raise BudgetExceeded("lattice", budget, len(found), self.factors)
            level = nxt

        items = sorted(found.items(), key=lambda kv: (len(kv[1][0]), tuple(kv[1][0].tolist())))
        self.masks: list[int] = [m for m, _ in items]
        self._idx: list[np.ndarray] = [v[0] for _, v in items]
        self.generators: list[tuple[int, ...]] = [tuple(sorted(v[1])) for _, v in items]
        self.sizes: list[int] = [len(v[0]) for _, v in items]
        self.id_by_mask: dict[int, int] = {m: i for i, m in enumerate(self.masks)}
        self._build_order()

    def _build_order(self) -> None:
        n = len(self.masks)
        incid = np.zeros((n, self.order), dtype=np.float32)
        for i, idx in enumerate(self._idx):
            incid[i, idx] = 1.0
        sizes = np.array(self.sizes, dtype=np.float32)
        up = [0] * n
        down_bits = np.zeros((n, n), dtype=bool)
        chunk = 512
        for s in range(0, n, chunk):
            block = incid[s : s + chunk] @ incid.T  # |A_i ∩ A_j|
            contained = block == sizes[s : s + chunk, None]
            down_bits[s : s + chunk] = contained
            for r, row in enumerate(contained):
                up[s + r] = int.from_bytes(np.packbits(row, bitorder="little").tobytes(), "little")
        down = [int.from_bytes(np.packbits(col, bitorder="little").tobytes(), "little") for col in down_bits.T]
        self.up = up
        self.down = down

    # lattice operations on ids -----------------------------------------

    def join(self, a: int, b: int) -> int:
        common = self.up[a] & self.up[b]
        return (common & -common).bit_length() - 1

    def meet(self, a: int, b: int) -> int:
        return (self.down[a] & self.down[b]).bit_length() - 1

    def join_all(self, ids: Iterable[int]) -> int:
        common = self.up[0]
        for i in ids:
            common &= self.up[i]
        return (common & -common).bit_length() - 1

    def meet_all(self, ids: Iterable[int]) -> int:
        common = self.down[-1]
        for i in ids:
            common &= self.down[i]
        return common.bit_length() - 1

    def leq(self, a: int, b: int) -> bool:
        return (self.up[a] >> b) & 1 == 1

    def mult(self, d: int) -> list[int]:
        """Table i -> id of d*L_i.

        d*L only depends on gcd(d, exponent) because L has exponent dividing
        the group exponent.
        """
        g = math.gcd(d, self.exponent)
        if g not in self._mult:
            image = self.encode(self.coords * g)
            self._mult[g] = [self.id_of_indices(np.unique(image[idx])) for idx in self._idx]
        return self._mult[g]

    def torsion(self, d: int) -> int:
        """Id of (0 :_M d) = {m : dm = 0}."""
        g = math.gcd(d, self.exponent)
        if g not in self._torsion:
            image = self.encode(self.coords * g)
            self._torsion[g] = self.id_of_indices(np.flatnonzero(image == 0))
        return self._torsion[g]

    @cached_property
    def exponents(self) -> list[int]:
        divs = divisors(self.exponent)
        out = []
        for i in range(len(self.masks)):
            out.append(next(d for d in divs if self.mult(d)[i] == 0))
        return out


_CORES: dict[tuple[tuple[int, ...], int], _LatticeCore | BudgetExceeded] = {}


def _core(factors: tuple[int, ...], member_budget: int) -> _LatticeCore:
    key = (factors, member_budget)
    hit = _CORES.get(key)
    if hit is None:
        try:
            hit = _LatticeCore(factors, member_budget)
        except BudgetExceeded as exc:
            hit = exc
        _CORES[key] = hit
    if isinstance(hit, BudgetExceeded):
        raise hit
    return hit


class Submodule:
    """A member of L(M); equality is equality of element sets."""

    __slots__ = ("lattice", "id")

    def __init__(self, lattice: Lattice, id: int):
        self.lattice = lattice
        self.id = id

    @property
    def shape(self) -> ModuleShape:
        return self.lattice.shape

    @property
    def mask(self) -> int:
        return self.lattice.core.masks[self.id]

    @property
    def elements(self) -> tuple[Element, ...]:
        shape = self.shape
        coords = self.lattice.core.coords
        return tuple(Element(shape, tuple(coords[i].tolist())) for i in self.lattice.core.indices(self.id))

    @property
    def generators(self) -> tuple[Element, ...]:
        shape = self.shape
        coords = self.lattice.core.coords
        return tuple(Element(shape, tuple(coords[g].tolist())) for g in self.lattice.core.generators[self.id])

    @property
    def cardinality(self) -> int:
        return self.lattice.core.sizes[self.id]

    def __len__(self) -> int:
        return self.cardinality

    @property
    def name(self) -> str:
        gens = self.generators
        return "0" if not gens else "<" + ",".join(str(g) for g in gens) + ">"

    @property
    def is_zero(self) -> bool:
        return self.id == 0

    @property
    def is_whole(self) -> bool:
        return self.id == self.lattice.top

    def __contains__(self, x: Element) -> bool:
        return (self.mask >> x.index) & 1 == 1

    def __le__(self, other: Submodule) -> bool:
        return self.mask & other.mask == self.mask

    def __lt__(self, other: Submodule) -> bool:
        return self <= other and self.mask != other.mask

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Submodule):
            return NotImplemented
        return self.shape == other.shape and self.mask == other.mask

    def __hash__(self) -> int:
        return hash((self.shape, self.mask))

    def __repr__(self) -> str:
        return f"Submodule({self.name} in {self.shape}, id={self.id})"


class Lattice:
    """All submodules of M, indexed in (cardinality, element list) order."""

    def __init__(self, shape: ModuleShape, core: _LatticeCore):
        self.shape = shape
        self.core = core
        self.members: tuple[Submodule, ...] = tuple(Submodule(self, i) for i in range(len(core.masks)))

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[Submodule]:
        return iter(self.members)

    def __getitem__(self, i: int) -> Submodule:
        return self.members[i]

    @property
    def ring(self) -> RingZn:
        return self.shape.ring

    @property
    def zero(self) -> Submodule:
        return self.members[0]

    @property
    def top(self) -> int:
        return len(self.members) - 1

    @property
    def whole(self) -> Submodule:
        return self.members[-1]

    def leq(self, a: int, b: int) -> bool:
        return self.core.leq(a, b)

    def order_matrix(self) -> np.ndarray:
        n = len(self)
        return np.array([[self.core.leq(i, j) for j in range(n)] for i in range(n)], dtype=bool)

    def find(self, elements: Iterable[Element]) -> Submodule:
        """The submodule whose element set is exactly ``elements``."""
        idx = np.array(sorted({e.index for e in elements}), dtype=np.int64)
        m = self.core.mask_of(idx)
        if m not in self.core.id_by_mask:
            raise AlgebraError("element set is not a submodule")
        return self.members[self.core.id_by_mask[m]]

    def span(self, *gens: Element) -> Submodule:
        sub = self.zero
        for g in gens:
            idx = self.core.encode(np.arange(self.shape.exponent)[:, None] * np.array(g.coords))
            cyc = self.members[self.core.id_of_indices(np.unique(idx))]
            sub = submodule_sum(sub, cyc)
        return sub

    def covers(self) -> list[tuple[int, int]]:
        """Hasse diagram edges (a, b) with b covering a."""
        core = self.core
        edges = []
        for a in range(len(self)):
            above = core.up[a] & ~(1 << a)
            b_bits = above
            while b_bits:
                low = b_bits & -b_bits
                b = low.bit_length() - 1
                b_bits ^= low
                # b covers a iff nothing strictly between
                between = above & core.down[b] & ~(1 << b)
                if not between:
                    edges.append((a, b))
        return edges

    def verify_closure(self) -> None:
        """Check that members are closed under sum and intersection."""
        core = self.core
        n = len(self)
        assert core.masks[0] == 1 and core.sizes[-1] == core.order
        assert len(set(core.masks)) == n
        for i in range(n):
            for j in range(i, n):
                if core.masks[i] & core.masks[j] not in core.id_by_mask:
                    raise AssertionError(f"intersection of {i} and {j} is not a member")
                s = core.join(i, j)
                xs = core.coords[core.indices(i)]
                ys = core.coords[core.indices(j)]
                summed = np.unique(core.encode(xs[:, None, :] + ys[None, :, :]).ravel())
                if core.mask_of(summed) != core.masks[s]:
                    raise AssertionError(f"sum of {i} and {j} is not a member")


def enumerate_submodules(
    shape: ModuleShape,
    budget: int = DEFAULT_MEMBER_BUDGET,
    element_budget: int = DEFAULT_ELEMENT_BUDGET,
) -> Lattice:
    """Every submodule of ``shape`` exactly once.

    Raises BudgetExceeded when |M| exceeds ``element_budget`` or the lattice
    grows past ``budget`` members.
    """
    if shape.order > element_budget:
        raise BudgetExceeded("elements", element_budget, shape.order, shape.invariant_factors)
    lat = Lattice(shape, _core(shape.invariant_factors, budget))
    if len(lat) <= _AUTO_VERIFY_LIMIT and not getattr(lat.core, "_verified", False):
        lat.verify_closure()
        lat.core._verified = True
    return lat


# ---------------------------------------------------------------------------
# submodule arithmetic


def _same_lattice(a: Submodule, b: Submodule) -> Lattice:
    if a.shape != b.shape:
        raise AlgebraError("submodules of different modules")
    return a.lattice


def submodule_sum(a: Submodule, b: Submodule) -> Submodule:
    lat = _same_lattice(a, b)
    return lat.members[lat.core.join(a.id, b.id)]


def submodule_intersection(a: Submodule, b: Submodule) -> Submodule:
    lat = _same_lattice(a, b)
    return lat.members[lat.core.id_by_mask[a.mask & b.mask]]


def ideal_times_module(ideal: Ideal, sub: Submodule) -> Submodule:
    """IN = dN for I = (d)."""
    if ideal.ring != sub.shape.ring:
        raise AlgebraError("ideal and module over different rings")
    lat = sub.lattice
    return lat.members[lat.core.mult(ideal.divisor)[sub.id]]


def colon_ideal(k: Submodule, n: Submodule) -> Ideal:
    """(K :_R N) = {r : rN in K}."""
    lat = _same_lattice(k, n)
    core = lat.core
    for d in lat.ring.divisors:
        if core.leq(core.mult(d)[n.id], k.id):
            return Ideal(lat.ring, d)
    raise AssertionError("the zero ideal always lies in the colon")


def annihilator(sub: Submodule) -> Ideal:
    return colon_ideal(sub.lattice.zero, sub)


def annihilator_in_module(ideal: Ideal, shape_or_lattice: ModuleShape | Lattice) -> Submodule:
    """(0 :_M I) = {m : dm = 0} for I = (d)."""
    lat = shape_or_lattice if isinstance(shape_or_lattice, Lattice) else enumerate_submodules(shape_or_lattice)
    if ideal.ring != lat.ring:
        raise AlgebraError("ideal and module over different rings")
    return lat.members[lat.core.torsion(ideal.divisor)]


# ---------------------------------------------------------------------------
# quotients


def smith_normal_form(a: Sequence[Sequence[int]]) -> tuple[list[int], list[list[int]]]:
    """Diagonal of the Smith normal form of an integer k x r matrix and a
    unimodular U (k x k) with U A V = D for some unimodular V."""
    A = [list(row) for row in a]
    k = len(A)
    r = len(A[0]) if k else 0
    U = [[int(i == j) for j in range(k)] for i in range(k)]

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def add_row(dst, src, c):  # row_dst += c * row_src
        A[dst] = [x + c * y for x, y in zip(A[dst], A[src])]
        U[dst] = [x + c * y for x, y in zip(U[dst], U[src])]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]

    def add_col(dst, src, c):
        for row in A:
            row[dst] += c * row[src]

    for t in range(min(k, r)):
        while True:
            pivots = [(abs(A[i][j]), i, j) for i in range(t, k) for j in range(t, r) if A[i][j]]
            if not pivots:
                break
            _, pi, pj = min(pivots)
            swap_rows(t, pi)
            swap_cols(t, pj)
            p = A[t][t]
            done = True
            for i in range(t + 1, k):
                q = A[i][t] // p
                if q:
                    add_row(i, t, -q)
                if A[i][t]:
                    done = False
            for j in range(t + 1, r):
                q = A[t][j] // p
                if q:
                    add_col(j, t, -q)
                if A[t][j]:
                    done = False
            if not done:
                continue
            bad = next(((i, j) for i in range(t + 1, k) for j in range(t + 1, r) if A[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
    diag = [A[i][i] if i < r else 0 for i in range(k)]
    return diag, U


@dataclass(frozen=True)
class Quotient:
    """M/L: its invariant-factor shape (None for the zero module) and the
    canonical surjection on elements."""

    source: ModuleShape
    kernel: Submodule
    shape: ModuleShape | None
    _rows: tuple[tuple[int, ...], ...]
    _moduli: tuple[int, ...]

    @property
    def is_zero(self) -> bool:
        return self.shape is None

    @property
    def order(self) -> int:
        return 1 if self.shape is None else self.shape.order

    def project(self, x: Element) -> Element | None:
        if self.shape is None:
            return None
        coords = tuple(sum(u * a for u, a in zip(row, x.coords)) % m for row, m in zip(self._rows, self._moduli))
        return Element(self.shape, coords)


def quotient_module(sub: Submodule) -> Quotient:
    shape = sub.shape
    k = shape.rank
    rel = [[d if i == j else 0 for j in range(k)] for i, d in enumerate(shape.invariant_factors)]
    gens = [g.coords for g in sub.generators]
    # columns: d_i e_i and the generators of L
    cols = [tuple(r[i] for r in rel) for i in range(k)] + gens
    a = [[c[i] for c in cols] for i in range(k)]
    diag, u = smith_normal_form(a)
    keep = [i for i, d in enumerate(diag) if d != 1]
    if not keep:
        return Quotient(shape, sub, None, (), ())
    moduli = tuple(diag[i] for i in keep)
    order = sorted(range(len(keep)), key=lambda j: moduli[j])
    qshape = ModuleShape(shape.ring, tuple(moduli[j] for j in order))
    rows = tuple(tuple(u[keep[j]]) for j in order)
    return Quotient(shape, sub, qshape, rows, tuple(moduli[j] for j in order))
