"""Brute-force reference implementations on explicit element sets.

Nothing here touches the bitmask lattice; subgroups are frozensets of
coordinate tuples and every predicate is the textbook definition, looped
over all ideals and all submodules.  Only meant for groups of order <= 32.
"""

from __future__ import annotations

import itertools
from functools import lru_cache


def elements(factors):
    return [tuple(c) for c in itertools.product(*(range(d) for d in factors))]


def add(factors, x, y):
    return tuple((a + b) % d for a, b, d in zip(x, y, factors))


def scale(factors, r, x):
    return tuple((r * a) % d for a, d in zip(x, factors))


def zero(factors):
    return tuple(0 for _ in factors)


def span(factors, gens):
    out = {zero(factors)}
    frontier = list(out)
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = add(factors, x, g)
            if y not in out:
                out.add(y)
                frontier.append(y)
    return frozenset(out)


@lru_cache(maxsize=None)
def subgroups(factors):
    """All subgroups, by closing every subgroup under one more generator."""
    factors = tuple(factors)
    elems = elements(factors)
    found = {span(factors, [])}
    frontier = list(found)
    while frontier:
        h = frontier.pop()
        for g in elems:
            if g in h:
                continue
            k = span(factors, list(h) + [g])
            if k not in found:
                found.add(k)
                frontier.append(k)
    return frozenset(found)


def set_sum(factors, a, b):
    return frozenset(add(factors, x, y) for x in a for y in b)


def times(factors, r, a):
    return frozenset(scale(factors, r, x) for x in a)


def ring_divisors(n):
    return [d for d in range(1, n + 1) if n % d == 0]


def whole(factors):
    return frozenset(elements(factors))


def is_second(n, factors, sub):
    z = frozenset([zero(factors)])
    if sub == z:
        return False
    return all(times(factors, r, sub) in (sub, z) for r in range(n))


def is_coprime(n, factors, k):
    m = whole(factors)
    if k == m:
        return False
    for r in range(n):
        rm = times(factors, r, m)
        if set_sum(factors, rm, k) != m and not rm <= k:
            return False
    return True


def strongly_hollow(factors, sub):
    subs = subgroups(factors)
    for a, b in itertools.product(subs, repeat=2):
        if sub <= set_sum(factors, a, b) and not sub <= a and not sub <= b:
            return False
    return True


def strongly_irreducible(factors, sub):
    subs = subgroups(factors)
    for a, b in itertools.product(subs, repeat=2):
        if a & b <= sub and not a <= sub and not b <= sub:
            return False
    return True


def is_distributive(factors):
    subs = list(subgroups(factors))
    for a, b, c in itertools.product(subs, repeat=3):
        if a & set_sum(factors, b, c) != set_sum(factors, a & b, a & c):
            return False
    return True


def annihilator(n, factors, sub):
    """Least positive generator of {r : rL = 0} as a divisor of n."""
    z = frozenset([zero(factors)])
    return min(d for d in ring_divisors(n) if times(factors, d, sub) == z)


def is_prime(p):
    return p > 1 and all(p % q for q in range(2, int(p**0.5) + 1))


def is_multiplication(n, factors):
    m = whole(factors)
    images = {times(factors, r, m) for r in range(n)}
    return all(s in images for s in subgroups(factors))


def is_comultiplication(n, factors):
    elems = elements(factors)
    kernels = {frozenset(x for x in elems if scale(factors, r, x) == zero(factors)) for r in range(n)}
    return all(s in kernels for s in subgroups(factors))


def varieties(n, factors, side):
    """(points, {submodule: variety}) for side 's' or 'c'."""
    subs = subgroups(factors)
    if side == "s":
        points = frozenset(s for s in subs if is_second(n, factors, s))
        return points, {l: frozenset(k for k in points if k <= l) for l in subs}
    points = frozenset(s for s in subs if is_coprime(n, factors, s))
    return points, {l: frozenset(k for k in points if l <= k) for l in subs}


def is_top(n, factors, side):
    _, var = varieties(n, factors, side)
    family = set(var.values())
    return all(a | b in family for a, b in itertools.combinations(family, 2))


def closure(closed_sets, subset):
    out = None
    for c in closed_sets:
        if subset <= c:
            out = c if out is None else out & c
    return out

