from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracle
from modspec.algebra import ModuleShape, enumerate_submodules
from modspec.topology import (
    NotATopology,
    build_space,
    check_axioms,
    decide_top_c,
    decide_top_s,
    generic_points,
    irreducible_components,
    is_connected_subset,
    is_discrete,
    is_irreducible_subset,
    is_sober,
    is_t0,
    is_t1,
    is_t2,
    is_ultraconnected,
    make_space,
    topological_properties,
    variety_masks,
    verify_witness,
)
from modspec.verify import InstanceBudget, enumerate_instances

SMALL = [s for s in enumerate_instances(InstanceBudget(max_modulus=16, max_order=16)) if s.order <= 16]


def as_set(sub):
    return frozenset(x.coords for x in sub.elements)


def lat_of(text):
    return enumerate_submodules(ModuleShape.parse(text))


# decisions against brute force -------------------------------------------


@pytest.mark.parametrize("shape", SMALL, ids=str)
def test_top_decisions_match_oracle(shape):
    lat = enumerate_submodules(shape)
    n, f = shape.ring.modulus, shape.invariant_factors
    for side, decide, kind in (("s", decide_top_s, "xi_s"), ("c", decide_top_c, "xi_c")):
        decision = decide(lat)
        assert decision.is_topology == oracle.is_top(n, f, side)
        assert verify_witness(lat, kind, decision)


@pytest.mark.parametrize("shape", SMALL, ids=str)
def test_variety_masks_match_oracle(shape):
    lat = enumerate_submodules(shape)
    n, f = shape.ring.modulus, shape.invariant_factors
    for side, kind in (("s", "xi_s"), ("c", "xi_c")):
        pts, var = oracle.varieties(n, f, side)
        points, masks = variety_masks(lat, kind)
        assert {as_set(lat[p]) for p in points} == pts
        for sub in lat:
            got = {as_set(lat[points[k]]) for k in range(len(points)) if masks[sub.id] >> k & 1}
            assert got == var[as_set(sub)]


@pytest.mark.parametrize("shape", SMALL, ids=str)
def test_closures_match_oracle(shape):
    lat = enumerate_submodules(shape)
    n, f = shape.ring.modulus, shape.invariant_factors
    for side, kind in (("s", "xi_s"), ("c", "xi_c")):
        if not oracle.is_top(n, f, side):
            with pytest.raises(NotATopology):
                build_space(lat, kind)
            continue
        space = build_space(lat, kind)
        pts, var = oracle.varieties(n, f, side)
        closed = set(var.values()) | {frozenset(), pts}

        def to_set(mask):
            return frozenset(as_set(lat[p]) for p in space.ids_of(mask))

        assert {to_set(c) for c in space.closed_sets} == closed
        for subset in space.subsets():
            assert to_set(space.closure(subset)) == oracle.closure(closed, to_set(subset))


def test_klein_four_is_not_a_topology():
    lat = lat_of("n=2;M=2,2")
    decision = decide_top_s(lat)
    assert not decision
    assert decision.witness == (1, 2)
    assert not decide_top_c(lat)


def test_cyclic_space_is_discrete():
    space = build_space(lat_of("n=12;M=12"), "xi_s")
    assert [space.lattice[p].name for p in space.points] == ["<6>", "<4>"]
    props = topological_properties(space)
    assert props.is_discrete and props.is_T2 and props.is_sober
    assert not props.is_connected


def test_restricted_families_are_always_topologies():
    for text in ("n=2;M=2,2", "n=4;M=2,4", "n=6;M=6,6"):
        lat = lat_of(text)
        for kind in ("xi_s_c", "xi_c_m"):
            space = build_space(lat, kind)
            assert check_axioms(space.points, space.closed_sets) is None


def test_unknown_kind():
    with pytest.raises(ValueError):
        variety_masks(lat_of("n=4;M=4"), "xi_q")


# hand-made spaces ------------------------------------------------------------


def test_sierpinski_space():
    space = make_space((0, 1), [0b01], "sierpinski")
    assert is_t0(space) and not is_t1(space)
    assert is_sober(space)
    assert is_ultraconnected(space)
    assert is_connected_subset(space, space.full)
    assert generic_points(space, space.full) == [1]


def test_indiscrete_space():
    space = make_space((0, 1, 2), [], "indiscrete")
    assert not is_t0(space)
    assert not is_sober(space)
    assert is_irreducible_subset(space, space.full)
    assert irreducible_components(space) == [space.full]


def test_discrete_space():
    closed = [m for m in range(8)]
    space = make_space((0, 1, 2), closed, "discrete")
    assert is_discrete(space) and is_t1(space) and is_t2(space) and is_sober(space)
    assert not is_connected_subset(space, space.full)
    assert sorted(irreducible_components(space)) == [1, 2, 4]


def test_make_space_rejects_non_topologies():
    with pytest.raises(NotATopology) as info:
        make_space((0, 1, 2), [0b001, 0b010], "broken")
    assert info.value.witness == (0b001, 0b010)
    assert check_axioms((0, 1), [0b11]) == ("empty set is not closed", ())


# properties against definitions on random finite topologies ----------------


def _close(family, full):
    fam = set(family) | {0, full}
    changed = True
    while changed:
        changed = False
        for a, b in itertools.combinations(list(fam), 2):
            for c in (a | b, a & b):
                if c not in fam:
                    fam.add(c)
                    changed = True
    return fam


@st.composite
def spaces(draw):
    size = draw(st.integers(1, 4))
    full = (1 << size) - 1
    family = draw(st.lists(st.integers(0, full), max_size=4))
    return make_space(tuple(range(size)), _close(family, full), "random")


def _bits(mask):
    return {k for k in range(mask.bit_length()) if mask >> k & 1}


@settings(max_examples=300, deadline=None)
@given(spaces())
def test_properties_match_definitions(space):
    full = space.full
    closed = set(space.closed_sets)
    opens = {full & ~c for c in closed}
    pts = range(space.size)
    subsets = range(full + 1)
    # T0: any two points are told apart by an open set
    t0 = all(any((u >> x & 1) != (u >> y & 1) for u in opens) for x, y in itertools.combinations(pts, 2))
    t1 = all(any(u >> x & 1 and not u >> y & 1 for u in opens) for x in pts for y in pts if x != y)
    t2 = all(
        any(u >> x & 1 and v >> y & 1 and not u & v for u in opens for v in opens)
        for x, y in itertools.combinations(pts, 2)
    )
    assert is_t0(space) == t0
    assert is_t1(space) == t1
    assert is_t2(space) == t2
    assert is_discrete(space) == (len(opens) == 1 << space.size)

    def irreducible(s):
        # every pair of opens meeting s meets within s
        return bool(s) and all(not (u & s and v & s) or u & v & s for u in opens for v in opens)

    def connected(s):
        return bool(s) and not any(
            u & s and v & s and not u & v & s and (u | v) & s == s for u in opens for v in opens
        )

    for s in subsets:
        assert is_irreducible_subset(space, s) == irreducible(s)
        assert is_connected_subset(space, s) == connected(s)
    nonempty_closed = [c for c in closed if c]
    assert is_ultraconnected(space) == all(a & b for a in nonempty_closed for b in nonempty_closed)
    sober = all(
        sum(1 for k in _bits(c) if space.closure(1 << k) == c) == 1 for c in closed if irreducible(c)
    )
    assert is_sober(space) == sober
    comps = [c for c in closed if irreducible(c) and not any(d != c and d & c == c and irreducible(d) for d in subsets)]
    assert sorted(irreducible_components(space)) == sorted(comps)
