import math
import random

import mpmath as mp
import pytest

from momcensus.errors import PreconditionError
from momcensus.fillings import (
    CuspShape,
    Slope,
    SlopeFlag,
    closed_volume_chain,
    enumerate_short_slopes,
    fkp_length_cutoff,
    fkp_volume_lower_bound,
    slope_length,
)
from momcensus.intervals import Interval, RigorousComplex

from oracles import brute_force_short_slopes, exact_fraction_div


def shape_of(mu: complex, lam: complex) -> CuspShape:
    return CuspShape(RigorousComplex.point(mu), RigorousComplex.point(lam))


def test_slope_normalization():
    assert Slope.normalized(-1, 2) == Slope(1, -2)
    assert Slope.normalized(0, -3 // 3) == Slope(0, 1)
    with pytest.raises(PreconditionError):
        Slope(2, 4)
    with pytest.raises(PreconditionError):
        Slope(0, 0)
    with pytest.raises(PreconditionError):
        Slope(-1, 2)


def test_slope_length_basis_vector():
    s = shape_of(1, 6j)
    assert slope_length(s, Slope(1, 0)).contains(1.0)


def test_slope_length_right_angle():
    s = shape_of(6, 6j)
    assert slope_length(s, Slope(1, 1)).contains(6 * math.sqrt(2))


def test_slope_length_oracle_containment():
    rng = random.Random(59)
    with mp.workdps(40):
        for _ in range(300):
            mu = complex(rng.uniform(0.5, 3), rng.uniform(-1, 1))
            lam = complex(rng.uniform(-1, 1), rng.uniform(0.5, 3))
            if (mu.conjugate() * lam).imag <= 0.05:
                continue
            p, q = rng.randint(0, 20), rng.randint(-20, 20)
            if math.gcd(p, abs(q)) != 1:
                continue
            got = slope_length(shape_of(mu, lam), Slope(p, q))
            want = mp.sqrt((mp.mpf(p) * mu.real + q * lam.real) ** 2
                           + (mp.mpf(p) * mu.imag + q * lam.imag) ** 2)
            assert mp.mpf(got.lo) <= want <= mp.mpf(got.hi)


def test_fkp_cutoff_reference_values():
    bound = fkp_length_cutoff(Interval.from_literal("2.0299"),
                              Interval.from_literal("0.9427"))
    assert bound.length_cutoff.contains(9.930839656419496)
    assert bound.length_cutoff.lo >= 2 * math.pi - 1e-12


def test_fkp_cutoff_small_target_limit():
    bound = fkp_length_cutoff(Interval.from_literal("2.8"),
                              Interval.from_literal("1e-9"))
    assert bound.length_cutoff.lo >= 2 * math.pi - 1e-12
    assert bound.length_cutoff.hi <= 2 * math.pi + 1e-5


def test_fkp_cutoff_preconditions():
    v = Interval.from_literal("2.848")
    with pytest.raises(PreconditionError):
        fkp_length_cutoff(v, v)
    with pytest.raises(PreconditionError):
        fkp_length_cutoff(Interval.from_literal("1.0"), Interval.from_literal("2.0"))


def test_fkp_cutoff_monotonicity():
    parents = [2.1, 2.5, 3.0, 3.5]
    targets = [0.5, 0.8, 1.1, 1.4]
    prev = None
    for t in targets:
        c = fkp_length_cutoff(Interval.point(2.9), Interval.point(t)).length_cutoff
        if prev is not None:
            assert c.hi >= prev.hi and c.lo >= prev.lo
        prev = c
    prev = None
    for p in parents:
        c = fkp_length_cutoff(Interval.point(p), Interval.point(1.5)).length_cutoff
        if prev is not None:
            assert c.hi <= prev.hi and c.lo <= prev.lo
        prev = c


def test_volume_bound_limits():
    parent = Interval.from_literal("2.0299")
    near = fkp_volume_lower_bound(parent, Interval.point(1e9))
    assert near.hi >= parent.lo - 1e-6  # factor tends to 1
    low = fkp_volume_lower_bound(parent, Interval.point(2 * math.pi + 1e-6))
    assert low.lo >= 0.0 and low.hi <= 1e-3  # factor tends to 0
    with pytest.raises(PreconditionError):
        fkp_volume_lower_bound(parent, Interval.point(6.0))


def test_fkp_round_trip_at_threshold():
    parent = Interval.from_literal("2.0299")
    target = Interval.from_literal("0.9427")
    bound = fkp_length_cutoff(parent, target)
    back = fkp_volume_lower_bound(parent, bound.length_cutoff)
    assert back.contains(0.9427)


def test_enumeration_simple_lattice():
    shape = shape_of(6, 6j)
    records = enumerate_short_slopes(shape, Interval.from_literal("6.5"))
    assert [(r.slope.p, r.slope.q) for r in records] == [(0, 1), (1, 0)]
    assert all(r.flag is SlopeFlag.OK for r in records)


def test_enumeration_empty_when_cutoff_below_shortest():
    shape = shape_of(2.0 + 0.3j, 0.1 + 2.5j)
    assert enumerate_short_slopes(shape, Interval.from_literal("1.5")) == []


def test_borderline_flagging():
    shape = shape_of(6, 6j)
    records = enumerate_short_slopes(shape, Interval.point(6.0))
    assert {(r.slope.p, r.slope.q): r.flag for r in records} == {
        (0, 1): SlopeFlag.BORDERLINE, (1, 0): SlopeFlag.BORDERLINE}


def slope_sets_match(shape: CuspShape, cutoff: float, oracle: set) -> bool:
    records = enumerate_short_slopes(shape, Interval.point(cutoff))
    got_certain = {(r.slope.p, r.slope.q) for r in records if r.flag is SlopeFlag.OK}
    got_all = {(r.slope.p, r.slope.q) for r in records}
    return got_certain <= oracle <= got_all


def random_shape_and_cutoff(rng):
    mu = complex(rng.uniform(0.8, 2.0), 0.0)
    lam = mu * complex(rng.uniform(-0.5, 0.5), rng.uniform(0.6, 2.0))
    shortest = min(abs(mu), abs(lam), abs(mu + lam), abs(mu - lam))
    cutoff = shortest * rng.uniform(1.1, 2.4)
    return shape_of(mu, lam), mu, lam, cutoff


def brute_force_equality_trials(n: int, seed: int = 61) -> int:
    rng = random.Random(seed)
    done = 0
    while done < n:
        shape, mu, lam, cutoff = random_shape_and_cutoff(rng)
        oracle = brute_force_short_slopes(mu, lam, cutoff, pq_max=200)
        assert slope_sets_match(shape, cutoff, oracle)
        done += 1
    return done


def test_enumeration_matches_brute_force_sample():
    assert brute_force_equality_trials(150) == 150


def test_swap_symmetry():
    rng = random.Random(67)
    for _ in range(50):
        shape, mu, lam, cutoff = random_shape_and_cutoff(rng)
        swapped = shape.swapped()
        a = {(r.slope.p, r.slope.q) for r in enumerate_short_slopes(shape, Interval.point(cutoff))}
        b = {(r.slope.p, r.slope.q) for r in enumerate_short_slopes(swapped, Interval.point(cutoff))}
        # generators swap with one negation, so slope (p, q) of the
        # swapped shape is slope +-(-q, p) of the original
        b_swapped = {(s.p, s.q) for s in (Slope.normalized(-q, p) for (p, q) in b)}
        assert a == b_swapped


def test_chain_reference_and_edge_cases():
    out = closed_volume_chain(Interval.from_literal("2.848"))
    assert out.lo > 0.943
    exact = exact_fraction_div("2.848", "3.02")
    assert out.lo <= float(exact) <= out.hi
    assert closed_volume_chain(Interval.from_literal("3.02")).contains(1.0)
    assert closed_volume_chain(Interval.point(0.0)).contains(0.0)
    with pytest.raises(PreconditionError):
        closed_volume_chain(Interval(-1.0, 1.0))
