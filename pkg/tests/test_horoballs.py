import math
import random

import pytest

from conftest import make_ball, make_lattice
from momcensus.errors import (
    AmbiguousSpectrumError,
    DegeneratePairError,
    PreconditionError,
)
from momcensus.horoballs import (
    AT_INFINITY,
    CuspDiagram,
    Horoball,
    center_distance_of_triple,
    default_cutoff,
    enumerate_triples,
    ortho_spectrum,
    orthodistance,
    shadow_of,
    validate_diagram,
)
from momcensus.intervals import Interval, RigorousComplex

from oracles import orthodistance_geodesic, orthodistance_to_infinity_quadrature


def test_tangent_ball_against_infinity():
    assert orthodistance(make_ball("0", "0", "1"), AT_INFINITY).contains(0.0)


def test_small_ball_against_infinity():
    t = 1.75
    ball = Horoball(RigorousComplex.point(0), Interval.point(math.exp(-t)))
    o = orthodistance(ball, AT_INFINITY)
    assert o.lo <= t <= o.hi
    assert abs(orthodistance_to_infinity_quadrature(math.exp(-t)) - t) < 1e-12


def test_half_diameter_pair_is_two_log_two():
    a = make_ball("0", "0", "0.5")
    b = make_ball("1", "0", "0.5")
    o = orthodistance(a, b)
    assert o.contains(2 * math.log(2))
    oracle = orthodistance_geodesic(0, 0.5, 1, 0.5)
    assert o.lo - 1e-12 <= oracle <= o.hi + 1e-12


def test_orthodistance_against_geodesic_oracle():
    rng = random.Random(23)
    for _ in range(25):
        c1 = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        c2 = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        d1 = rng.uniform(0.05, 1.0)
        d2 = rng.uniform(0.05, 1.0)
        if abs(c1 - c2) ** 2 <= d1 * d2 * 1.5:
            continue  # keep a clear gap between the balls
        a = Horoball(RigorousComplex.point(c1), Interval.point(d1))
        b = Horoball(RigorousComplex.point(c2), Interval.point(d2))
        o = orthodistance(a, b)
        want = orthodistance_geodesic(c1, d1, c2, d2)
        assert o.lo - 1e-10 <= want <= o.hi + 1e-10


def test_negative_orthodistance_not_clamped():
    a = make_ball("0", "0", "1")
    b = make_ball("0.5", "0", "1")
    assert orthodistance(a, b).hi < 0.0


def test_coincident_centers_raise():
    a = make_ball("0", "0", "0.5")
    b = make_ball("0", "0", "0.25")
    with pytest.raises(DegeneratePairError):
        orthodistance(a, b)


def test_both_infinite_raise():
    with pytest.raises(PreconditionError):
        orthodistance(AT_INFINITY, AT_INFINITY)


def test_shadow_full_sized():
    s = shadow_of(make_ball("0", "0", "1"))
    assert s.radius.contains(0.5)


def test_shadow_small_ball():
    d = math.exp(-2.0)
    s = shadow_of(Horoball(RigorousComplex.point(0), Interval.point(d)))
    assert s.radius.contains(0.5 * math.exp(-2.0))


def test_shadow_of_infinity_raises():
    with pytest.raises(PreconditionError):
        shadow_of(AT_INFINITY)


def test_shadow_consistency_random():
    rng = random.Random(29)
    for _ in range(200):
        d = rng.uniform(1e-6, 1.0)
        shadow_of(Horoball(RigorousComplex.point(0), Interval.point(d)))


def test_square_lattice_cutoff_one(square_diagram):
    spectrum = ortho_spectrum(square_diagram, Interval.from_literal("1"))
    assert len(spectrum) == 1
    assert spectrum[0].ortho.contains(0.0)
    assert spectrum[0].witnesses == (("inf", 0),)


def test_square_lattice_translate_class(square_diagram):
    spectrum = ortho_spectrum(square_diagram, Interval.from_literal("1.5"))
    assert len(spectrum) == 2
    cls = spectrum[1]
    assert cls.ortho.contains(2 * math.log(2))
    assert len(cls.witnesses) == 2  # both translate orbits, merged by symmetry
    assert cls.e.contains(2.0)


def test_square_lattice_without_symmetry_is_ambiguous():
    diagram = CuspDiagram(lattice=make_lattice("2", "0", "0", "2"),
                          balls=(make_ball("0", "0", "1"),))
    with pytest.raises(AmbiguousSpectrumError):
        ortho_spectrum(diagram, Interval.from_literal("1.5"))


def test_labeled_diagram_spectrum(labeled_diagram):
    spectrum = ortho_spectrum(labeled_diagram, Interval.from_literal("2.8"))
    assert [cls.index for cls in spectrum] == [1, 2, 3]
    assert spectrum[0].e.contains(1.0)
    assert spectrum[1].e.contains(2.0)
    assert spectrum[2].e.contains(4.0)
    # the declared labels land at their certified positions
    assert spectrum[0].ortho.contains(0.0)


def test_label_order_mismatch_raises():
    diagram = CuspDiagram(
        lattice=make_lattice("20", "0", "0", "20"),
        balls=(make_ball("0", "0", "1"), make_ball("5", "0", "0.25")),
        labels=(1, 3),  # declared 3, certified position 2
    )
    with pytest.raises(PreconditionError):
        ortho_spectrum(diagram, Interval.from_literal("2"))


def test_missing_tangency_rejected_in_spectrum():
    diagram = CuspDiagram(lattice=make_lattice("20", "0", "0", "20"),
                          balls=(make_ball("0", "0", "0.9"),))
    with pytest.raises(PreconditionError):
        ortho_spectrum(diagram, Interval.from_literal("1"))


def test_tangent_pair_triple():
    # two tangent full-sized balls whose mutual pair is class 2
    diagram = CuspDiagram(
        lattice=make_lattice("20", "0", "0", "20"),
        balls=(make_ball("0", "0", "1"), make_ball("1", "0", "1")),
        labels=(1, 1),
        edge_labels=((0, 1, 0, 0, 2),),
    )
    spectrum = ortho_spectrum(diagram, Interval.from_literal("0.5"))
    triples = enumerate_triples(diagram, spectrum)
    assert [t.type for t in triples] == [(1, 1, 2)]
    assert triples[0].multiplicity == 1


def test_center_distance_full_sized_pair():
    # centers of two full-sized shadows sit e_n apart
    diagram = CuspDiagram(
        lattice=make_lattice("20", "0", "0", "20"),
        balls=(make_ball("0", "0", "1"), make_ball("1.5", "0", "1")),
        labels=(1, 1),
        edge_labels=((0, 1, 0, 0, 2),),
    )
    spectrum = ortho_spectrum(diagram, Interval.from_literal("1"))
    dist = center_distance_of_triple(spectrum, to_infinity=(1, 1), mutual=2)
    assert dist.contains(1.5)
    assert spectrum[1].e.contains(1.5)


def test_labeled_diagram_triples(labeled_diagram):
    spectrum = ortho_spectrum(labeled_diagram, Interval.from_literal("2.8"))
    triples = enumerate_triples(labeled_diagram, spectrum)
    assert [t.type for t in triples] == [(1, 1, 2), (1, 3, 3), (2, 2, 3)]
    assert all(t.multiplicity == 1 for t in triples)


def test_center_distance_formula_cases():
    diagram = CuspDiagram(
        lattice=make_lattice("40", "0", "0", "40"),
        balls=(make_ball("0", "0", "1"), make_ball("3", "0", "0.25")),
        labels=(1, 2),
        edge_labels=((0, 1, 0, 0, 3),),
    )
    # o(2) = -log(1/4) = 2 log 2; pair (0,1): 2 log(3 / 0.5) = 2 log 6
    spectrum = ortho_spectrum(diagram, Interval.from_literal("3.6"))
    assert spectrum[1].e.contains(2.0)
    assert spectrum[2].e.contains(6.0)
    # (1,1,1) hypothetical evaluates to 1
    one = center_distance_of_triple(spectrum, to_infinity=(1, 1), mutual=1)
    assert one.contains(1.0)
    # (1,2,3): e_3/(e_1 e_2) = 6/2 = 3, the actual center distance
    d = center_distance_of_triple(spectrum, to_infinity=(1, 2), mutual=3)
    assert d.contains(3.0)
    with pytest.raises(PreconditionError):
        center_distance_of_triple(spectrum, to_infinity=(1, 7), mutual=2)


def test_center_distance_fractional_orthodistances():
    """Type (1,2,3) with o(2) = 0.2, o(3) = 0.5: the formula value
    exp(0.15) is realized by an explicit horoball triple."""
    d2 = "0.818730753077981858669935508619"  # exp(-0.2), 30 digits
    d3 = "0.606530659712633423603799534991"  # exp(-0.5)
    x = "1.161834242728283122616620214332"   # exp(0.15)
    diagram = CuspDiagram(
        lattice=make_lattice("30", "0", "0", "30"),
        balls=(make_ball("0", "0", "1"), make_ball(x, "0", d2),
               make_ball("10", "0", d3)),
        labels=(1, 2, 3),
        edge_labels=((0, 1, 0, 0, 3),),
    )
    spectrum = ortho_spectrum(diagram, Interval.from_literal("0.55"))
    assert [c.index for c in spectrum] == [1, 2, 3]
    dist = center_distance_of_triple(spectrum, to_infinity=(1, 2), mutual=3)
    assert dist.contains(math.exp(0.15))
    # the realizing pair: the actual center separation equals the formula
    sep = abs(diagram.balls[0].center - diagram.balls[1].center)
    assert sep.overlaps(dist)


def test_validate_labeled_diagram(labeled_diagram):
    assert validate_diagram(labeled_diagram, Interval.from_literal("2.8")).ok


def test_validate_non_maximal_diagram():
    diagram = CuspDiagram(lattice=make_lattice("2", "0", "0", "2"),
                          balls=(make_ball("0", "0", "0.9"),))
    report = validate_diagram(diagram, Interval.from_literal("0.5"))
    assert any("tangent" in f for f in report.failures)


def test_validate_overlapping_balls():
    diagram = CuspDiagram(lattice=make_lattice("20", "0", "0", "20"),
                          balls=(make_ball("0", "0", "1"), make_ball("0.5", "0", "1")))
    report = validate_diagram(diagram, Interval.from_literal("0.5"))
    assert any("overlap" in f for f in report.failures)


def test_validate_sees_negative_translate_overlaps():
    # ball 1 overlaps ball 0 only across the -mu translate
    diagram = CuspDiagram(lattice=make_lattice("20", "0", "0", "20"),
                          balls=(make_ball("0", "0", "1"), make_ball("19.5", "0", "1")))
    report = validate_diagram(diagram, Interval.from_literal("0.5"))
    assert any("overlap" in f for f in report.failures)


def test_validate_rejects_mmm_triple():
    # two tangent full-sized balls at distance exactly 1: a (1,1,1) triple
    diagram = CuspDiagram(
        lattice=make_lattice("20", "0", "0", "20"),
        balls=(make_ball("0", "0", "1"), make_ball("1", "0", "1")),
        labels=(1, 1),
        edge_labels=((0, 1, 0, 0, 1),),
    )
    report = validate_diagram(diagram, Interval.from_literal("0.5"))
    assert any("(1,1,1)" in f for f in report.failures)


def test_lattice_invariance(labeled_diagram):
    base = ortho_spectrum(labeled_diagram, Interval.from_literal("2.8"))
    mu = labeled_diagram.lattice.mu
    shifted = CuspDiagram(
        lattice=labeled_diagram.lattice,
        balls=tuple(b.translated(mu) for b in labeled_diagram.balls),
        labels=labeled_diagram.labels,
        edge_labels=labeled_diagram.edge_labels,
        symmetries=labeled_diagram.symmetries,
    )
    moved = ortho_spectrum(shifted, Interval.from_literal("2.8"))
    assert len(base) == len(moved)
    for a, b in zip(base, moved):
        assert a.ortho.overlaps(b.ortho)
        assert a.e.overlaps(b.e)


def test_scaling_covariance(labeled_diagram):
    s = 2.0
    scale = RigorousComplex.point(s)
    scaled = CuspDiagram(
        lattice=make_lattice("40", "0", "0", "40"),
        balls=tuple(Horoball(b.center * scale, b.diameter * s)
                    for b in labeled_diagram.balls),
        labels=labeled_diagram.labels,
        edge_labels=labeled_diagram.edge_labels,
        base_height=Interval.point(s),
    )
    base = ortho_spectrum(labeled_diagram, Interval.from_literal("2.8"))
    moved = ortho_spectrum(scaled, Interval.from_literal("2.8"))
    assert len(base) == len(moved)
    for a, b in zip(base, moved):
        assert a.ortho.overlaps(b.ortho)
    # finite-finite orthodistances are exactly unchanged by the scaling
    for i in range(len(labeled_diagram.balls)):
        for j in range(i + 1, len(labeled_diagram.balls)):
            o1 = orthodistance(labeled_diagram.balls[i], labeled_diagram.balls[j])
            o2 = orthodistance(scaled.balls[i], scaled.balls[j])
            assert o1.overlaps(o2)


def test_brute_force_triples_small_diagram(labeled_diagram):
    """Triples from the class machinery match a float brute force over a
    5x5 block of lattice translates."""
    cutoff = 2.8
    spectrum = ortho_spectrum(labeled_diagram, Interval.from_literal("2.8"))
    got = sorted(t.type for t in enumerate_triples(labeled_diagram, spectrum)
                 for _ in range(t.multiplicity))

    balls = [(complex(b.center.re.mid, b.center.im.mid), b.diameter.mid)
             for b in labeled_diagram.balls]
    mu, lam = 20.0, 20.0j
    classes = {1: 0.0, 2: 2 * math.log(2), 3: 4 * math.log(2)}

    def classify(o):
        for idx, val in classes.items():
            if abs(o - val) < 1e-9:
                return idx
        return None

    seen = set()
    want = []
    for i, (ci, di) in enumerate(balls):
        for j, (cj, dj) in enumerate(balls):
            for p in range(-2, 3):
                for q in range(-2, 3):
                    if i == j and (p, q) <= (0, 0):
                        continue
                    if j < i:
                        continue
                    cjt = cj + p * mu + q * lam
                    o = 2 * math.log(abs(ci - cjt) / math.sqrt(di * dj))
                    if o > cutoff:
                        continue
                    key = (i, j, p, q)
                    if key in seen:
                        continue
                    seen.add(key)
                    k = classify(-math.log(di))
                    l = classify(-math.log(dj))
                    m = classify(o)
                    assert None not in (k, l, m)
                    want.append(tuple(sorted((k, l, m))))
    assert got == sorted(want)


def test_default_cutoff_covers_infinity_classes(labeled_diagram):
    cutoff = default_cutoff(labeled_diagram)
    spectrum = ortho_spectrum(labeled_diagram, cutoff)
    assert len(spectrum) == 3
