import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from momcensus.horoballs import CuspDiagram, CuspLattice, DiagramSymmetry, Horoball
from momcensus.intervals import Interval, RigorousComplex

DATA = Path(__file__).parent / "data"


def make_ball(re: str, im: str, diameter: str) -> Horoball:
    return Horoball(RigorousComplex.from_literals(re, im), Interval.from_literal(diameter))


def make_lattice(mu_re: str, mu_im: str, lam_re: str, lam_im: str) -> CuspLattice:
    return CuspLattice(RigorousComplex.from_literals(mu_re, mu_im),
                       RigorousComplex.from_literals(lam_re, lam_im))


@pytest.fixture
def square_diagram() -> CuspDiagram:
    """One full-sized ball on a side-2 square lattice with the declared
    quarter-turn symmetry."""
    return CuspDiagram(
        lattice=make_lattice("2", "0", "0", "2"),
        balls=(make_ball("0", "0", "1"),),
        symmetries=(DiagramSymmetry.from_strings("0", "1", "0", "0"),),
    )


@pytest.fixture
def labeled_diagram() -> CuspDiagram:
    """Five labeled balls realizing orthopair classes with e = 1, 2, 4
    and triple types (1,1,2), (1,3,3), (2,2,3)."""
    return CuspDiagram(
        lattice=make_lattice("20", "0", "0", "20"),
        balls=(make_ball("0", "0", "1"), make_ball("2", "0", "1"),
               make_ball("0", "1", "0.0625"),
               make_ball("8", "0", "0.25"), make_ball("9", "0", "0.25")),
        labels=(1, 1, 3, 2, 2),
        edge_labels=((0, 1, 0, 0, 2), (0, 2, 0, 0, 3), (3, 4, 0, 0, 3)),
    )
