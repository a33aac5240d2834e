"""Acceptance suite: one test per criterion, each printing a PASS/FAIL
line (run with ``pytest tests/test_acceptance.py -v -s``).

Criterion 7 runs the full Mom-3 census and is the slow one (about two
minutes on the accelerated kernel; hours on the pure-Python fallback).
"""

import time
from fractions import Fraction
from functools import wraps

import mpmath as mp

from conftest import DATA
from momcensus.census import run_census, vertex_links
from momcensus.census.gluing import _edge_relations
from momcensus.fillings import (
    closed_volume_chain,
    fkp_length_cutoff,
    fkp_volume_lower_bound,
)
from momcensus.formats import parse_diagram, parse_triangulation
from momcensus.horoballs import CuspDiagram, enumerate_triples, ortho_spectrum
from momcensus.intervals import Interval, PI, RigorousComplex
from momcensus.lobachevsky import lobachevsky, triangulation_volume, ShapeSolution
from momcensus.momstruct import area_lower_bound, find_mom_structures, is_torus_friendly

from oracles import sympy_invariant_factors, whitehead_exterior_h1
from test_census import FROZEN_COUNTS
from test_fillings import brute_force_equality_trials
from test_horoballs import test_lattice_invariance as _lattice_invariance_check
from test_intervals import containment_trials
from test_lobachevsky import identity_trials
from test_momstruct import (
    test_exhaustiveness_matches_brute_force as _mom_brute_force_check,
)


def criterion(number, summary):
    def deco(fn):
        @wraps(fn)
        def wrapper(*args, **kwargs):
            try:
                fn(*args, **kwargs)
            except BaseException:
                print(f"CRITERION {number:2d} FAIL: {summary}")
                raise
            print(f"CRITERION {number:2d} PASS: {summary}")
        return wrapper
    return deco


@criterion(1, "3 L(pi/3) encloses 1.01494..., width <= 1e-9, under 1 s")
def test_criterion_01_lobachevsky_constant():
    lobachevsky(PI / 6)  # warm the series tables
    start = time.perf_counter()
    value = lobachevsky(PI / 3) * 3
    elapsed = time.perf_counter() - start
    with mp.workdps(40):
        assert mp.mpf(value.lo) <= mp.mpf("1.01494160640965362506360766282") <= mp.mpf(value.hi)
    assert value.width <= 1e-9
    assert elapsed < 1.0


@criterion(2, "figure-8 file volume encloses 2.029883..., width <= 1e-8, under 1 s")
def test_criterion_02_figure8_volume():
    start = time.perf_counter()
    tri = parse_triangulation((DATA / "fig8.tri").read_text())
    volume = triangulation_volume(tri.shape_solution())
    elapsed = time.perf_counter() - start
    with mp.workdps(40):
        assert mp.mpf(volume.lo) <= mp.mpf("2.02988321281930725012721532564") <= mp.mpf(volume.hi)
    assert volume.width <= 1e-8
    assert tri.delta == Interval.point(0.0)
    assert elapsed < 1.0


@criterion(3, "four z=i tetrahedra enclose 3.663862..., width <= 1e-8")
def test_criterion_03_octahedral_volume():
    sol = ShapeSolution(shapes=(RigorousComplex.point(1j),) * 4,
                        delta=Interval.point(0.0))
    volume = triangulation_volume(sol)
    with mp.workdps(40):
        assert mp.mpf(volume.lo) <= mp.mpf("3.66386237670887606021841405973") <= mp.mpf(volume.hi)
    assert volume.width <= 1e-8


@criterion(4, "chain at 2.848 stays above 0.943 and encloses the exact ratio")
def test_criterion_04_bound_chain():
    out = closed_volume_chain(Interval.from_literal("2.848"))
    assert out.lo > 0.943
    exact = Fraction("2.848") / Fraction("3.02")
    assert Fraction(out.lo) <= exact <= Fraction(out.hi)


@criterion(5, "area bound at e2 = 1 encloses sqrt(3), volume sqrt(3)/2, width <= 1e-12")
def test_criterion_05_area_dichotomy():
    report = area_lower_bound(Interval.point(1.0), Interval.point(1.0))
    with mp.workdps(40):
        assert mp.mpf(report.area_lower.lo) <= mp.sqrt(3) <= mp.mpf(report.area_lower.hi)
        assert mp.mpf(report.volume_lower.lo) <= mp.sqrt(3) / 2 <= mp.mpf(report.volume_lower.hi)
    assert report.area_lower.width <= 1e-12
    assert report.volume_lower.width <= 1e-12


@criterion(6, "the worked triple multiset gives exactly one torus-friendly Mom-3")
def test_criterion_06_mom_detection():
    diagram = parse_diagram((DATA / "m069_style.diagram").read_text())
    spectrum = ortho_spectrum(diagram, Interval.from_literal("2.8"))
    triples = enumerate_triples(diagram, spectrum)
    assert sorted(t.type for t in triples) == [(1, 1, 2), (1, 3, 3), (2, 2, 3)]
    mom3 = find_mom_structures(triples, 3)
    mom2 = find_mom_structures(triples, 2)
    assert len(mom3) == 1
    assert mom3[0].pair_set == frozenset({1, 2, 3})
    assert mom2 == []
    assert is_torus_friendly(mom3[0])


@criterion(7, "census: links all tori, polar closure, Whitehead-type H1, frozen counts, "
              "Mom-2 < 1 min and Mom-3 < 1 h")
def test_criterion_07_census_properties():
    start = time.perf_counter()
    mom2 = run_census(2)
    mom2_elapsed = time.perf_counter() - start
    assert mom2_elapsed < 60.0

    start = time.perf_counter()
    mom3 = run_census(3)
    mom3_elapsed = time.perf_counter() - start
    assert mom3_elapsed < 3600.0

    gluings = [(g, ic.inventory.tag) for res in (mom2, mom3)
               for ic in res.inventories for g in ic.gluings]
    assert len(gluings) == mom2.dedup_count + mom3.dedup_count

    # (a) every retained gluing has all vertex links of Euler characteristic 0
    # (b) polar vertices glue only to polar vertices
    for g, _tag in gluings:
        report = vertex_links(g)
        assert report.all_torus
        assert g.polar_violations() == []
        for link in report.links:
            assert link.vertex_class in ("polar", "equatorial")

    # (c) a Whitehead-type Mom-2 gluing: H1 rank 2, no torsion, against
    # the independent Smith-normal-form oracle
    whitehead_like = [rec for rec in mom2.records
                      if rec.h1.rank == 2 and rec.h1.torsion == ()]
    assert whitehead_like
    sample = next(g for ic in mom2.inventories for g in ic.gluings)
    relations, gens = _edge_relations(sample)
    factors = sympy_invariant_factors(relations)
    n_poly = len(sample.assembly.inventory.sides)
    d1 = [[0] * len(gens) for _ in range(n_poly)]
    for col, (tail, head) in enumerate(gens):
        d1[head][col] += 1
        d1[tail][col] -= 1
    oracle_rank = len(gens) - len(sympy_invariant_factors(d1)) - len(factors)
    oracle_torsion = [f for f in factors if f > 1]
    assert (oracle_rank, oracle_torsion) == (2, [])
    assert whitehead_exterior_h1() == (2, [])

    # (d) raw/kept/deduped counts are frozen regression values
    for res in (mom2, mom3):
        for ic in res.inventories:
            assert (ic.raw_count, ic.kept_count, ic.dedup_count) == \
                FROZEN_COUNTS[ic.inventory.tag], ic.inventory.tag


@criterion(8, "slope enumeration equals the |p|,|q| <= 200 brute force on 1000 shapes, "
              "under 1 min")
def test_criterion_08_slope_enumeration():
    start = time.perf_counter()
    assert brute_force_equality_trials(1000, seed=101) == 1000
    assert time.perf_counter() - start < 60.0


@criterion(9, "the FKP cutoff and volume bound are mutually inverse at the threshold")
def test_criterion_09_fkp_consistency():
    parent = Interval.from_literal("2.0299")
    target = Interval.from_literal("0.9427")
    bound = fkp_length_cutoff(parent, target)
    back = fkp_volume_lower_bound(parent, bound.length_cutoff)
    assert back.overlaps(target)
    assert back.contains(0.9427)


@criterion(10, "property suites: containment 1e5, identities 1e3, lattice invariance, "
               "Mom brute force, census worker determinism")
def test_criterion_10_property_suites():
    assert containment_trials(100_000, seed=103) == 100_000
    identity_trials(1000, seed=107)

    from conftest import make_ball, make_lattice
    labeled = CuspDiagram(
        lattice=make_lattice("20", "0", "0", "20"),
        balls=(make_ball("0", "0", "1"), make_ball("2", "0", "1"),
               make_ball("0", "1", "0.0625"),
               make_ball("8", "0", "0.25"), make_ball("9", "0", "0.25")),
        labels=(1, 1, 3, 2, 2),
        edge_labels=((0, 1, 0, 0, 2), (0, 2, 0, 0, 3), (3, 4, 0, 0, 3)),
    )
    _lattice_invariance_check(labeled)

    _mom_brute_force_check()

    runs = [run_census(2, workers=w) for w in (1, 2, 3)]
    sigs = [[rec.signature for rec in r.records] for r in runs]
    assert sigs[0] == sigs[1] == sigs[2]
