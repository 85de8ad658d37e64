"""Acceptance criteria; every test carries the number of the criterion it covers.

Every comparison is exact.  The full default-budget suite runs once per
session and is shared by criteria 5 to 8.
"""

from __future__ import annotations

import os
import subprocess
import sys
import time

import pytest

from modspec.algebra import ModuleShape, RingZn, direct_sum, enumerate_submodules, is_prime
from modspec.spectra import (
    annihilator_divisor,
    generalized_associated_primes,
    is_coprime_in,
    is_coprime_in_via_quotient,
    is_coprime_module,
    maximal_submodules,
    simple_submodules,
    spec_c,
    spec_s,
    structural_predicates,
)
from modspec.topology import build_space, check_axioms, decide_top_c, decide_top_s, verify_witness
from modspec.verify import CATALOG, InstanceBudget, enumerate_instances, run_suite

DEFAULT = InstanceBudget()


def elements_of(sub):
    return frozenset(x.coords for x in sub.elements)


def multiples(n, step):
    return frozenset((x,) for x in range(0, n, step))


def prime_divisors(n):
    return [p for p in range(2, n + 1) if n % p == 0 and all(p % q for q in range(2, p))]


@pytest.fixture(scope="session")
def full_report():
    start = time.perf_counter()
    report = run_suite(DEFAULT)
    return report, time.perf_counter() - start


def statuses(report, check_id):
    return report.counts[check_id]


# ---------------------------------------------------------------------------


@pytest.mark.criterion(1, "coprime spectrum of Z/n is {pZ/n} = Max, n = 2..60")
def test_criterion_1_coprime_spectrum_of_the_ring():
    start = time.perf_counter()
    for n in range(2, 61):
        lat = enumerate_submodules(ModuleShape(RingZn(n), (n,)))
        expected = {multiples(n, p) for p in prime_divisors(n)}
        assert {elements_of(s) for s in spec_c(lat)} == expected
        assert {elements_of(s) for s in maximal_submodules(lat)} == expected
    elapsed = time.perf_counter() - start
    print(f"criterion 1: 59 rings in {elapsed:.3f}s")
    assert elapsed < 1.0


@pytest.mark.criterion(2, "second spectrum of Z/n is the minimal ideals {(n/p)Z/n}, n = 2..60")
def test_criterion_2_second_spectrum_of_the_ring():
    start = time.perf_counter()
    for n in range(2, 61):
        lat = enumerate_submodules(ModuleShape(RingZn(n), (n,)))
        expected = {multiples(n, n // p) for p in prime_divisors(n)}
        assert {elements_of(s) for s in spec_s(lat)} == expected
        assert {elements_of(s) for s in simple_submodules(lat)} == expected
    elapsed = time.perf_counter() - start
    print(f"criterion 2: 59 rings in {elapsed:.3f}s")
    assert elapsed < 1.0


@pytest.mark.criterion(3, "Z/2 + Z/3 is not coprime, with a valid least witness")
def test_criterion_3_z2_plus_z3():
    ring = RingZn(6)
    shape = direct_sum(ModuleShape(ring, (2,)), ModuleShape(ring, (3,)))
    verdict = is_coprime_module(shape)
    assert not verdict.holds
    d = verdict.witness.divisor
    assert d == 2
    image = {(d * x.coords[0]) % 6 for x in shape.elements()}
    # dM is neither M nor 0
    assert 0 < len(image) - 1 and len(image) < shape.order
    # both (2) and (3) are witnesses; (1) and (6) are not
    for r, ok in ((2, True), (3, True), (1, False), (6, False)):
        size = len({(r * x.coords[0]) % 6 for x in shape.elements()})
        assert (1 < size < 6) == ok


@pytest.mark.criterion(4, "(Z/p)^2 for p = 2, 3: full spectra, no top, restricted topologies exist")
@pytest.mark.parametrize("p", [2, 3])
def test_criterion_4_plane_over_prime_field(p):
    lat = enumerate_submodules(ModuleShape.parse(f"n={p};M={p},{p}"))
    assert len(lat) == p + 3
    assert {s.id for s in spec_s(lat)} == {s.id for s in lat if not s.is_zero}
    assert {s.id for s in spec_c(lat)} == {s.id for s in lat if not s.is_whole}
    for decide, kind in ((decide_top_s, "xi_s"), (decide_top_c, "xi_c")):
        decision = decide(lat)
        assert not decision.is_topology
        assert verify_witness(lat, kind, decision)
        i, j = decision.witness
        # the witness is a pair of lines
        assert lat[i].cardinality == lat[j].cardinality == p
    for kind in ("xi_s_c", "xi_c_m"):
        space = build_space(lat, kind)
        assert check_axioms(space.points, space.closed_sets) is None


@pytest.mark.criterion(5, "closure equals V^s(H(A)) and V^c(J(A)) on the default budget")
def test_criterion_5_closure_formulas(full_report):
    report, _ = full_report
    for cid in ("lem-closure-s", "lem-closure-c"):
        c = statuses(report, cid)
        print(f"criterion 5: {cid} {c}")
        assert c["fail"] == 0 and c["skipped"] == 0
        assert c["pass"] > 0


@pytest.mark.criterion(6, "full catalogue on the default budget: no failures, full coverage, < 5 min")
def test_criterion_6_full_suite(full_report):
    report, elapsed = full_report
    print(f"criterion 6: {report.instances} instances, {len(report.results)} results in {elapsed:.1f}s")
    assert report.instances == sum(1 for _ in enumerate_instances(DEFAULT))
    assert [r.as_dict() for r in report.failures] == []
    assert report.coverage_gaps == []
    for entry in report.unattainable:
        assert entry["reason"]
        print(f"criterion 6: unattainable {entry['id']}: {entry['reason']}")
    assert len(report.checks) == len(CATALOG)
    assert elapsed < 300


@pytest.mark.criterion(7, "equivalence chains agree pairwise on every applicable instance")
def test_criterion_7_equivalence_chains(full_report):
    report, _ = full_report
    for cid in ("prop-IM", "prop-IM+K", "thm-T2", "thm-c-T2"):
        c = statuses(report, cid)
        print(f"criterion 7: {cid} {c}")
        assert c["fail"] == 0 and c["skipped"] == 0 and c["pass"] > 0


@pytest.mark.criterion(7, "equivalence chains agree pairwise on every applicable instance")
def test_criterion_7_coprime_in_routes_directly():
    compared = 0
    for shape in enumerate_instances(DEFAULT):
        lat = enumerate_submodules(shape)
        for k in lat:
            if k.is_whole:
                continue
            assert is_coprime_in(k).holds == is_coprime_in_via_quotient(k).holds, (str(shape), k.name)
            compared += 1
    print(f"criterion 7: {compared} proper submodules compared by both routes")


@pytest.mark.criterion(8, "on comultiplication modules Spec^s = {L != 0 : ann(L) prime} and matches associated primes")
def test_criterion_8_comultiplication_spectra(full_report):
    report, _ = full_report
    for cid in ("cor-com-s", "rem-gen-ass"):
        c = statuses(report, cid)
        assert c["fail"] == 0 and c["pass"] > 0
    instances = 0
    for shape in enumerate_instances(DEFAULT):
        lat = enumerate_submodules(shape)
        if not structural_predicates(lat).is_comultiplication:
            continue
        instances += 1
        second = spec_s(lat)
        by_annihilator = [s for s in lat if not s.is_zero and is_prime(annihilator_divisor(s))]
        assert [s.id for s in second] == [s.id for s in by_annihilator]
        primes = [p.divisor for p in generalized_associated_primes(lat)]
        # L -> ann(L) is a bijection from the second spectrum onto the associated primes
        assert sorted(annihilator_divisor(s) for s in second) == primes
    print(f"criterion 8: {instances} comultiplication instances")
    assert instances > 0


@pytest.mark.criterion(9, "two verify runs with identical flags give byte-identical JSON")
def test_criterion_9_determinism(tmp_path):
    procs = []
    for seed in ("0", "12345"):
        env = dict(os.environ, PYTHONHASHSEED=seed)
        out = tmp_path / f"run-{seed}.json"
        cmd = [sys.executable, "-m", "modspec.cli", "verify", "--format", "json", "--output", str(out)]
        procs.append((subprocess.Popen(cmd, env=env), out))
    for proc, _ in procs:
        assert proc.wait(timeout=600) == 0
    first, second = (out.read_bytes() for _, out in procs)
    print(f"criterion 9: {len(first)} bytes per report")
    assert first == second
