from __future__ import annotations

import itertools
from collections import Counter
from math import gcd, prod

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

import oracle
from modspec.algebra import (
    BudgetExceeded,
    Ideal,
    InstanceParseError,
    ModuleShape,
    RingZn,
    annihilator,
    annihilator_in_module,
    colon_ideal,
    direct_sum,
    enumerate_submodules,
    ideal_times_module,
    quotient_module,
    smith_normal_form,
    submodule_intersection,
    submodule_sum,
)
from modspec.verify import InstanceBudget, enumerate_instances

SMALL = [s for s in enumerate_instances(InstanceBudget(max_modulus=16, max_order=16)) if s.order <= 16]


def as_set(sub):
    return frozenset(x.coords for x in sub.elements)


# ring and ideals ----------------------------------------------------------


def test_ring_ideals_are_divisors():
    ring = RingZn(12)
    assert [i.divisor for i in ring.ideals()] == [1, 2, 3, 4, 6, 12]
    assert [i.divisor for i in ring.prime_ideals()] == [2, 3]
    assert sorted(i.divisor for i in ring.minimal_ideals()) == [4, 6]


@given(st.integers(2, 60), st.data())
def test_ideal_operations_match_element_sets(n, data):
    ring = RingZn(n)
    a = data.draw(st.sampled_from(ring.divisors))
    b = data.draw(st.sampled_from(ring.divisors))
    i, j = Ideal(ring, a), Ideal(ring, b)
    ei, ej = set(i.elements()), set(j.elements())
    assert set((i + j).elements()) == {(x + y) % n for x in ei for y in ej}
    assert set((i & j).elements()) == ei & ej
    prods = {(x * y) % n for x in ei for y in ej}
    # IJ is the additive closure of the products
    closure = set(prods)
    for x, y in itertools.product(list(closure), repeat=2):
        closure.add((x + y) % n)
    assert set((i * j).elements()) == closure
    assert (i <= j) == ei.issubset(ej)


@pytest.mark.parametrize("n", range(2, 61))
def test_prime_ideals_by_definition(n):
    ring = RingZn(n)
    primes = []
    for d in ring.divisors:
        elems = set(Ideal(ring, d).elements())
        if d == 1:
            continue
        if all((x * y) % n not in elems or x in elems or y in elems for x in range(n) for y in range(n)):
            primes.append(d)
    assert [p.divisor for p in ring.prime_ideals()] == primes


def test_zero_divisors_and_units():
    ring = RingZn(12)
    assert ring.units() == {1, 5, 7, 11}
    assert ring.zero_divisors() == {0, 2, 3, 4, 6, 8, 9, 10}


# instance parsing ---------------------------------------------------------


def test_parse_and_print_roundtrip():
    shape = ModuleShape.parse("n=12; M=2, 6")
    assert shape.invariant_factors == (2, 6)
    assert str(shape) == "n=12;M=2,6"
    assert ModuleShape.parse(str(shape)) == shape


@pytest.mark.parametrize(
    "text",
    ["n=6;M=2,3", "n=6;M=4", "n=1;M=1", "n=6;M=", "M=6;n=6", "n=6;M=6,3", "n=6;M=1", "garbage"],
)
def test_parse_rejects(text):
    with pytest.raises(InstanceParseError):
        ModuleShape.parse(text)


def test_non_chain_names_isomorphic_chain():
    with pytest.raises(InstanceParseError, match="the isomorphic chain is 6"):
        ModuleShape.parse("n=6;M=2,3")


def test_direct_sum_normalises():
    ring = RingZn(6)
    m = direct_sum(ModuleShape(ring, (2,)), ModuleShape(ring, (3,)))
    assert m.invariant_factors == (6,)
    ring = RingZn(12)
    m = direct_sum(ModuleShape(ring, (2, 6)), ModuleShape(ring, (4,)))
    assert m.invariant_factors == (2, 2, 12)


def test_element_arithmetic():
    shape = ModuleShape.parse("n=4;M=2,4")
    x = shape.element(1, 3)
    assert (x + x).coords == (0, 2)
    assert (3 * x).coords == (1, 1)
    assert x.order == 4 and str(x) == "(1,3)"
    assert (x - x) == shape.zero


# lattice enumeration against brute force ----------------------------------


@pytest.mark.parametrize("shape", SMALL, ids=str)
def test_lattice_matches_brute_force(shape):
    lat = enumerate_submodules(shape)
    mine = [as_set(s) for s in lat]
    assert len(set(mine)) == len(mine)
    assert set(mine) == oracle.subgroups(shape.invariant_factors)


@pytest.mark.parametrize("shape", SMALL, ids=str)
def test_meet_join_and_order(shape):
    lat = enumerate_submodules(shape)
    f = shape.invariant_factors
    sets = [as_set(s) for s in lat]
    for a, b in itertools.product(lat, repeat=2):
        assert as_set(submodule_sum(a, b)) == oracle.set_sum(f, sets[a.id], sets[b.id])
        assert as_set(submodule_intersection(a, b)) == sets[a.id] & sets[b.id]
        assert (a <= b) == (sets[a.id] <= sets[b.id])


@pytest.mark.parametrize("shape", SMALL, ids=str)
def test_module_ideal_operations(shape):
    lat = enumerate_submodules(shape)
    n = shape.ring.modulus
    f = shape.invariant_factors
    for d in shape.ring.divisors:
        ideal = Ideal(shape.ring, d)
        tors = {x for x in oracle.elements(f) if oracle.scale(f, d, x) == oracle.zero(f)}
        assert as_set(annihilator_in_module(ideal, lat)) == tors
        for sub in lat:
            assert as_set(ideal_times_module(ideal, sub)) == oracle.times(f, d, as_set(sub))
    for sub in lat:
        assert annihilator(sub).divisor == oracle.annihilator(n, f, as_set(sub))
        for k in lat:
            expected = min(
                d for d in shape.ring.divisors if oracle.times(f, d, as_set(sub)) <= as_set(k)
            )
            assert colon_ideal(k, sub).divisor == expected


def test_known_lattice_sizes():
    # Z/12 has one subgroup per divisor; (Z/2)^2 is the diamond; (Z/p)^2 has p + 3
    assert len(enumerate_submodules(ModuleShape.parse("n=12;M=12"))) == 6
    assert len(enumerate_submodules(ModuleShape.parse("n=2;M=2,2"))) == 5
    assert len(enumerate_submodules(ModuleShape.parse("n=3;M=3,3"))) == 6
    assert len(enumerate_submodules(ModuleShape.parse("n=2;M=2,2,2"))) == 16
    assert len(enumerate_submodules(ModuleShape.parse("n=4;M=4,4"))) == 15


def test_members_sorted_and_named():
    lat = enumerate_submodules(ModuleShape.parse("n=12;M=12"))
    assert [s.name for s in lat] == ["0", "<6>", "<4>", "<3>", "<2>", "<1>"]
    assert lat.zero.is_zero and lat.whole.is_whole
    assert lat.span(lat.shape.element(8)).name == "<4>"


def test_budget_exceeded():
    with pytest.raises(BudgetExceeded) as info:
        enumerate_submodules(ModuleShape.parse("n=2;M=2,2,2"), budget=10)
    assert info.value.kind == "lattice"
    with pytest.raises(BudgetExceeded) as info:
        enumerate_submodules(ModuleShape.parse("n=2;M=2,2,2"), element_budget=4)
    assert info.value.kind == "elements"


def test_covers_form_hasse_diagram():
    lat = enumerate_submodules(ModuleShape.parse("n=2;M=2,2"))
    assert sorted(lat.covers()) == [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)]


# Smith normal form and quotients -----------------------------------------


@settings(max_examples=150, deadline=None)
@given(
    st.integers(1, 4).flatmap(
        lambda r: st.integers(1, 5).flatmap(
            lambda c: st.lists(st.lists(st.integers(-20, 20), min_size=c, max_size=c), min_size=r, max_size=r)
        )
    )
)
def test_snf_matches_sympy(rows):
    diag, _ = smith_normal_form(rows)
    ref = sympy_snf(sympy.Matrix(rows), domain=sympy.ZZ)
    expected = [abs(int(ref[i, i])) for i in range(min(ref.shape))]
    assert [abs(d) for d in diag[: len(expected)]] == expected


@pytest.mark.parametrize("shape", SMALL, ids=str)
def test_quotient_order_and_projection(shape):
    lat = enumerate_submodules(shape)
    f = shape.invariant_factors
    for sub in lat:
        q = quotient_module(sub)
        assert q.order * sub.cardinality == shape.order
        if q.is_zero:
            assert sub.is_whole
            continue
        # projection is a surjective homomorphism with kernel L
        images = {}
        for x in shape.elements():
            images.setdefault(q.project(x).coords, []).append(x.coords)
        assert len(images) == q.order
        kernel = {x.coords for x in shape.elements() if all(c == 0 for c in q.project(x).coords)}
        assert kernel == as_set(sub)
        for x, y in itertools.product(list(shape.elements())[:8], repeat=2):
            assert q.project(x + y) == q.project(x) + q.project(y)
        # orders of cosets determine M/L up to isomorphism
        members = as_set(sub)
        coset_orders = Counter()
        for x in oracle.elements(f):
            coset_orders[next(t for t in range(1, shape.order + 1) if oracle.scale(f, t, x) in members)] += 1
        coset_orders = Counter({k: v // sub.cardinality for k, v in coset_orders.items()})
        assert coset_orders == Counter(x.order for x in q.shape.elements())
        assert prod(q.shape.invariant_factors) == q.order


def test_quotient_example():
    lat = enumerate_submodules(ModuleShape.parse("n=4;M=4"))
    q = quotient_module(lat.span(lat.shape.element(2)))
    assert str(q.shape) == "n=4;M=2"


@given(st.integers(2, 60), st.data())
def test_cyclic_quotient_is_gcd(n, data):
    shape = ModuleShape(RingZn(n), (n,))
    lat = enumerate_submodules(shape)
    g = data.draw(st.integers(0, n - 1))
    sub = lat.span(shape.element(g))
    q = quotient_module(sub)
    expected = gcd(g, n)
    assert q.order == expected
