"""Combinatorial Mom-n detection, torus-friendliness, handle-safety
classification, and cusp-torus area/volume dichotomy bounds."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum

from .errors import PreconditionError, UncertifiableError
from .horoballs import TripleClass
from .intervals import Interval, SQRT2, SQRT3, PI

# Comparison cutoffs, stored as decimal literals widened one ulp outward.
E_SAFE_CUTOFF = SQRT2
E_CONDITIONAL_CUTOFF = Interval.from_literal("1.5152")


@dataclass(frozen=True)
class TripleInstance:
    """One distinct triple class.  Records with multiplicity m expand to
    m instances distinguished by ``copy``."""

    type: tuple[int, int, int]
    copy: int = 0

    @property
    def index_set(self) -> frozenset:
        return frozenset(self.type)


def expand_triples(triples: list[TripleClass] | tuple[TripleClass, ...]) -> list[TripleInstance]:
    out = []
    for record in triples:
        for c in range(record.multiplicity):
            out.append(TripleInstance(type=tuple(sorted(record.type)), copy=c))
    return out


@dataclass(frozen=True)
class CombinatorialMomStructure:
    """n distinct triple classes whose type indices fill exactly one
    n-element index set."""

    triples: tuple[TripleInstance, ...]
    pair_set: frozenset

    @property
    def n(self) -> int:
        return len(self.triples)


def _assert_structure(s: CombinatorialMomStructure) -> None:
    # independent re-check of the defining cardinality identity
    if len(set(s.triples)) != len(s.triples):
        raise PreconditionError("Mom structure repeats a triple class")
    union = frozenset(i for t in s.triples for i in t.type)
    if union != s.pair_set or len(s.pair_set) != len(s.triples) or len(s.triples) < 2:
        raise PreconditionError(
            f"not a combinatorial Mom structure: {len(s.triples)} triples on "
            f"indices {sorted(union)}")


def find_mom_structures(triples, n: int) -> list[CombinatorialMomStructure]:
    """All subsets of n distinct triple classes using exactly n orthopair
    indices.  Exhaustive and duplicate-free by construction."""
    if n < 2:
        raise PreconditionError(f"Mom-n needs n >= 2, got {n}")
    instances = expand_triples(triples) if triples and isinstance(triples[0], TripleClass) \
        else list(triples)
    out = []
    for combo in itertools.combinations(instances, n):
        union = frozenset(i for t in combo for i in t.type)
        if len(union) == n:
            s = CombinatorialMomStructure(triples=tuple(combo), pair_set=union)
            _assert_structure(s)
            out.append(s)
    return out


def is_torus_friendly(s: CombinatorialMomStructure) -> bool:
    """False exactly when the structure contains two (no more, no fewer)
    triple classes of one common type with three pairwise distinct
    indices -- the single configuration able to close off a sphere."""
    counts: dict[tuple, int] = {}
    for t in s.triples:
        if len(set(t.type)) == 3:
            counts[t.type] = counts.get(t.type, 0) + 1
    return not any(c == 2 for c in counts.values())


class HandleSafety(Enum):
    SAFE = 1          # e <= sqrt(2): self-intersections are geometrically impossible
    CONDITIONAL = 2   # e <= 1.5152: intersections force nearby horoball overlaps
    LARGE = 3         # e > 1.5152: the volume bound takes over


def classify_handle_safety(e: Interval) -> HandleSafety:
    """Monotone three-way classification of an orthopair parameter
    e = exp(o/2) against the sqrt(2) and 1.5152 cutoffs.

    Enclosures straddling a cutoff raise; the caller must refine."""
    if e.hi < 1.0 or e.lo <= 0.0:
        raise PreconditionError(f"orthopair parameter must satisfy e >= 1, got {e}")
    if e.certainly_le(E_SAFE_CUTOFF.lo):
        return HandleSafety.SAFE
    if e.lo > E_SAFE_CUTOFF.hi:
        if e.certainly_le(E_CONDITIONAL_CUTOFF.lo):
            return HandleSafety.CONDITIONAL
        if e.certainly_gt(E_CONDITIONAL_CUTOFF.hi):
            return HandleSafety.LARGE
        raise UncertifiableError(
            f"enclosure {e} straddles the 1.5152 cutoff; refine the input")
    raise UncertifiableError(
        f"enclosure {e} straddles the sqrt(2) cutoff; refine the input")


class AreaCase(Enum):
    BASELINE = "baseline"                # disjoint full-sized shadows alone
    E2_IMPROVED = "e2-improved"          # sqrt(3) e2^2, needs the (m,m,m)-exclusion
    OVERLAP_REFINED = "overlap-refined"  # radius-e3/2 disk union, one overlap allowed
    SMALL_E2_PLACEHOLDER = "small-e2-placeholder"  # extra-shadow branch, bound not published


@dataclass(frozen=True)
class DiagramFacts:
    """Census facts feeding the dichotomy.

    ``no_mmm_triples`` holds for every validated diagram; the
    ``at_most_one_112_triple`` refinement lets the two radius-e3/2 disks
    overlap along at most one path."""

    no_mmm_triples: bool = True
    at_most_one_112_triple: bool = False


@dataclass(frozen=True)
class AreaBoundReport:
    area_lower: Interval
    volume_lower: Interval
    case_tag: AreaCase


def _lens_area(r: Interval, d: Interval) -> Interval:
    """Intersection area of two radius-r disks at center distance d
    (0 for certainly-disjoint disks)."""
    if d.lo >= (r * 2.0).hi:
        return Interval(0.0, 0.0)
    ratio = d / (r * 2.0)
    # 2 r^2 acos(d/2r) - (d/2) sqrt(4 r^2 - d^2)
    root_arg = r * r * 4.0 - d * d
    root_arg = Interval(max(0.0, root_arg.lo), max(0.0, root_arg.hi))
    lens = r * r * 2.0 * ratio.acos() - (d / 2.0) * root_arg.sqrt()
    return Interval(max(0.0, lens.lo), max(0.0, lens.hi))


def area_lower_bound(e2: Interval, e3: Interval, facts: DiagramFacts = DiagramFacts()) -> AreaBoundReport:
    """Certified lower bound on the cusp-torus area and the cusp volume
    (half the area).

    Baseline sqrt(3) from the two disjoint full-sized shadows; improved
    to sqrt(3) e2^2 under the (m,m,m)-triple exclusion; optionally the
    union area of two radius-e3/2 disks overlapping at most once at
    center distance >= e2.  The returned bound is the best certified
    branch."""
    slack = 1e-9  # rounding slack on the e >= 1 normalization
    if e2.hi < 1.0 or e2.lo < 1.0 - slack:
        raise PreconditionError(f"maximal-cusp normalization forces e2 >= 1, got {e2}")
    if e3.hi < e2.lo - slack:
        raise PreconditionError(f"need e2 <= e3, got e2={e2}, e3={e3}")
    e2 = Interval(max(e2.lo, 1.0), max(e2.hi, 1.0))
    e3 = Interval(max(e3.lo, e2.lo), max(e3.hi, e2.lo))

    if facts.no_mmm_triples:
        area = SQRT3 * e2 * e2
        tag = AreaCase.E2_IMPROVED
    else:
        area = SQRT3
        tag = AreaCase.BASELINE

    if facts.at_most_one_112_triple:
        r = e3 / 2.0
        union = PI * r * r * 2.0 - _lens_area(r, e2)
        if union.lo > area.lo:
            area = Interval(union.lo, max(union.hi, area.hi))
            tag = AreaCase.OVERLAP_REFINED

    return AreaBoundReport(area_lower=area, volume_lower=area / 2.0, case_tag=tag)
