"""Upper-half-space horoball diagrams: orthodistances, shadows, the
orthopair spectrum, and typed horoball triples.

A cusp diagram holds one horoball representative per orbit of the
boundary-translation lattice, all beneath the base horoball B_inf
(a half-space above height ``base_height``, normally 1).  Pairs of
horoballs are enumerated together with the finitely many lattice
translates a certified box formula says could matter, then grouped into
orthopair classes.

Grouping is deliberately conservative.  Two pair enclosures are merged
only when a declared certificate says they are the same class: equal
declared labels (per-ball labels for pairs with B_inf, edge labels for
ball-ball pairs) or a declared exact symmetry of the diagram mapping one
witness to the other.  Overlapping enclosures with no certificate raise
``AmbiguousSpectrumError`` -- never a silent merge or split.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .errors import (
    AmbiguousSpectrumError,
    DegeneratePairError,
    InternalInconsistencyError,
    PreconditionError,
)
from .intervals import Interval, ONE, RigorousComplex

# Pair witnesses.  ("inf", i) is the pair {ball_i, B_inf}; ("fin", i, j,
# p, q) is the pair {ball_i, ball_j + p*mu + q*lam} with i <= j and, for
# i == j, (p, q) lexicographically positive.  One witness per orbit of
# the translation lattice.
Witness = tuple


def _canonical_fin(i: int, j: int, p: int, q: int) -> Witness:
    if i > j:
        i, j, p, q = j, i, -p, -q
    if i == j and (p < 0 or (p == 0 and q < 0)):
        p, q = -p, -q
    return ("fin", i, j, p, q)


class Horoball:
    """A Euclidean ball tangent to the boundary plane, or the base
    half-space horoball AT_INFINITY."""

    __slots__ = ("center", "diameter")

    def __init__(self, center: Optional[RigorousComplex], diameter: Optional[Interval]):
        if (center is None) != (diameter is None):
            raise PreconditionError("horoball needs both center and diameter, or neither")
        if diameter is not None and diameter.lo <= 0.0:
            raise PreconditionError(f"horoball diameter must be certainly positive: {diameter}")
        object.__setattr__(self, "center", center)
        object.__setattr__(self, "diameter", diameter)

    def __setattr__(self, name, value):
        raise AttributeError("Horoball is immutable")

    @property
    def is_infinite(self) -> bool:
        return self.center is None

    def __eq__(self, other):
        return (isinstance(other, Horoball)
                and self.center == other.center and self.diameter == other.diameter)

    def __hash__(self):
        return hash((self.center, self.diameter))

    def translated(self, offset: RigorousComplex) -> "Horoball":
        if self.is_infinite:
            raise PreconditionError("cannot translate the base horoball")
        return Horoball(self.center + offset, self.diameter)

    def __repr__(self):
        if self.is_infinite:
            return "Horoball(AT_INFINITY)"
        return f"Horoball(center={self.center}, diameter={self.diameter})"


AT_INFINITY = Horoball(None, None)


@dataclass(frozen=True)
class CuspLattice:
    """Generators of the translation group acting on the boundary plane."""

    mu: RigorousComplex
    lam: RigorousComplex

    def __post_init__(self):
        if self.covolume().lo <= 0.0:
            raise PreconditionError(
                "lattice generators must be independent with Im(lam/mu) > 0")

    def covolume(self) -> Interval:
        # Im(conj(mu) * lam)
        return (self.mu.conj() * self.lam).im

    def offset(self, p: int, q: int) -> RigorousComplex:
        return self.mu * p + self.lam * q

    def integer_coordinates(self, c: RigorousComplex) -> Optional[tuple[int, int]]:
        """(p, q) with c = p*mu + q*lam if the enclosures are consistent
        with exactly one integer solution, else None."""
        covol = self.covolume()
        x = -(self.lam.conj() * c).im / covol
        y = (self.mu.conj() * c).im / covol
        p = round(x.mid)
        q = round(y.mid)
        if not (x.contains(p) and y.contains(q)):
            return None
        residue = c - self.offset(p, q)
        if residue.re.contains(0.0) and residue.im.contains(0.0):
            return (p, q)
        return None


@dataclass(frozen=True)
class Shadow:
    center: RigorousComplex
    radius: Interval


@dataclass(frozen=True)
class DiagramSymmetry:
    """Declared exact affine isometry z -> a*z + b of the diagram.

    The coefficients are exact rationals; |a| must equal 1 exactly.  The
    declaration is an input assumption: construction verifies it is
    consistent with the stored enclosures (it permutes the ball set
    modulo the lattice and maps the lattice to itself), which catches
    blunders but cannot upgrade the assumption to a proof.
    """

    a_re: Fraction
    a_im: Fraction
    b_re: Fraction
    b_im: Fraction

    def __post_init__(self):
        if self.a_re * self.a_re + self.a_im * self.a_im != 1:
            raise PreconditionError("symmetry multiplier must have |a| = 1 exactly")

    @classmethod
    def from_strings(cls, a_re: str, a_im: str, b_re: str, b_im: str) -> "DiagramSymmetry":
        return cls(Fraction(a_re), Fraction(a_im), Fraction(b_re), Fraction(b_im))

    def a_rect(self) -> RigorousComplex:
        return RigorousComplex(Interval.from_fraction(self.a_re),
                               Interval.from_fraction(self.a_im))

    def b_rect(self) -> RigorousComplex:
        return RigorousComplex(Interval.from_fraction(self.b_re),
                               Interval.from_fraction(self.b_im))

    def apply(self, c: RigorousComplex) -> RigorousComplex:
        return self.a_rect() * c + self.b_rect()


@dataclass(frozen=True)
class _ResolvedSymmetry:
    """A declared symmetry resolved against a concrete diagram."""

    perm: tuple[int, ...]                  # ball i maps onto ball perm[i] ...
    offsets: tuple[tuple[int, int], ...]   # ... translated by these lattice coords
    lattice_matrix: tuple[int, int, int, int]  # a*mu = m11*mu + m12*lam; a*lam = m21*mu + m22*lam

    def map_witness(self, w: Witness) -> Witness:
        if w[0] == "inf":
            return ("inf", self.perm[w[1]])
        _, i, j, p, q = w
        m11, m12, m21, m22 = self.lattice_matrix
        ui, vi = self.offsets[i]
        uj, vj = self.offsets[j]
        np_ = uj + p * m11 + q * m21 - ui
        nq = vj + p * m12 + q * m22 - vi
        return _canonical_fin(self.perm[i], self.perm[j], np_, nq)


@dataclass(frozen=True)
class CuspDiagram:
    """Lattice plus one horoball per orbit, with optional declared
    labels, edge labels and symmetries used as grouping certificates."""

    lattice: CuspLattice
    balls: tuple[Horoball, ...]
    labels: tuple[Optional[int], ...] = ()
    edge_labels: tuple[tuple[int, int, int, int, int], ...] = ()  # (i, j, p, q, label)
    symmetries: tuple[DiagramSymmetry, ...] = ()
    base_height: Interval = field(default_factory=lambda: ONE)

    def __post_init__(self):
        if not self.balls:
            raise PreconditionError("diagram needs at least one horoball")
        if any(b.is_infinite for b in self.balls):
            raise PreconditionError("the base horoball is implicit, do not list it")
        if not self.labels:
            object.__setattr__(self, "labels", (None,) * len(self.balls))
        if len(self.labels) != len(self.balls):
            raise PreconditionError("labels must align with balls")
        for (i, j, p, q, _lab) in self.edge_labels:
            if not (0 <= i < len(self.balls) and 0 <= j < len(self.balls)):
                raise PreconditionError(f"edge label references missing ball ({i},{j})")
            if (i, j, p, q) != _canonical_fin(i, j, p, q)[1:]:
                raise PreconditionError(
                    f"edge label witness ({i},{j},{p},{q}) is not in canonical form")

    def edge_label_map(self) -> dict[Witness, int]:
        return {("fin", i, j, p, q): lab for (i, j, p, q, lab) in self.edge_labels}

    def resolve_symmetries(self) -> tuple[_ResolvedSymmetry, ...]:
        return tuple(self._resolve(s) for s in self.symmetries)

    def _resolve(self, sym: DiagramSymmetry) -> _ResolvedSymmetry:
        lat = self.lattice
        a = sym.a_rect()
        m_mu = lat.integer_coordinates(a * lat.mu)
        m_lam = lat.integer_coordinates(a * lat.lam)
        if m_mu is None or m_lam is None:
            raise PreconditionError("declared symmetry does not preserve the lattice")
        perm = []
        offsets = []
        for i, ball in enumerate(self.balls):
            image = sym.apply(ball.center)
            hit = None
            for j, other in enumerate(self.balls):
                coords = lat.integer_coordinates(image - other.center)
                if coords is None:
                    continue
                if not ball.diameter.overlaps(other.diameter):
                    continue
                if (self.labels[i] is not None and self.labels[j] is not None
                        and self.labels[i] != self.labels[j]):
                    continue
                hit = (j, coords)
                break
            if hit is None:
                raise PreconditionError(
                    f"declared symmetry does not map ball {i} onto the ball set")
            perm.append(hit[0])
            offsets.append(hit[1])
        return _ResolvedSymmetry(tuple(perm), tuple(offsets),
                                 (m_mu[0], m_mu[1], m_lam[0], m_lam[1]))


def orthodistance(a: Horoball, b: Horoball, base_height: Interval = ONE) -> Interval:
    """Hyperbolic distance between two disjoint horoballs (negative
    enclosures mean certified overlap and are returned, not clamped).

    Finite-finite: 2 log(|c_a - c_b| / sqrt(d_a d_b)); against the base
    horoball at height h: log(h / d)."""
    if a.is_infinite and b.is_infinite:
        raise PreconditionError("orthodistance needs at most one infinite horoball")
    if a.is_infinite or b.is_infinite:
        finite = b if a.is_infinite else a
        return (base_height / finite.diameter).log()
    delta = a.center - b.center
    dist_sq = delta.abs_squared()
    if dist_sq.lo <= 0.0:
        raise DegeneratePairError(
            f"centers {a.center} and {b.center} are not certifiably distinct")
    return (dist_sq / (a.diameter * b.diameter)).log()


def shadow_of(ball: Horoball, base_height: Interval = ONE) -> Shadow:
    """Shadow of a finite ball on the base horosphere.

    The radius is computed both as (1/2) exp(-orthodistance to B_inf)
    and as diameter/(2 h); their intersection is returned and disjoint
    enclosures signal a numerics bug."""
    if ball.is_infinite:
        raise PreconditionError("the base horoball casts no shadow")
    via_ortho = (-orthodistance(ball, AT_INFINITY, base_height)).exp() * 0.5
    direct = ball.diameter / (base_height * 2.0)
    if not via_ortho.overlaps(direct):
        raise InternalInconsistencyError(
            f"shadow radius enclosures disagree: {via_ortho} vs {direct}")
    return Shadow(ball.center, via_ortho.intersect(direct))


@dataclass(frozen=True)
class OrthopairClass:
    index: int
    ortho: Interval
    e: Interval
    witnesses: tuple[Witness, ...]


@dataclass(frozen=True)
class TripleClass:
    """All triple classes of one type.  ``multiplicity`` counts the
    certified-distinct classes (symmetry orbits of witnesses); the
    witnesses of every orbit are pooled."""

    type: tuple[int, int, int]
    witnesses: tuple[Witness, ...]
    multiplicity: int


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            # deterministic: smaller key becomes root
            if ry < rx:
                rx, ry = ry, rx
            self.parent[ry] = rx

    def groups(self):
        out: dict = {}
        for x in self.parent:
            out.setdefault(self.find(x), []).append(x)
        return out


def _translate_box(diagram: CuspDiagram, cutoff: Interval) -> tuple[int, int]:
    """Certified (p, q) ranges covering every lattice translate that can
    form a pair within the cutoff.

    A pair {ball_i, ball_j + t} has orthodistance <= cutoff only if
    |c_i - c_j - t| <= E := exp(cutoff/2) * max sqrt(d_i d_j), hence
    |t| <= R := E + max |c_i - c_j|.  Since |p*mu + q*lam| >=
    |p| covol/|lam| and symmetrically for q, it suffices to take
    |p| <= R |lam| / covol and |q| <= R |mu| / covol."""
    lat = diagram.lattice
    balls = diagram.balls
    dmax = max(b.diameter.hi for b in balls)
    e_bound = (cutoff / 2.0).exp() * Interval.point(dmax).sqrt()
    span = 0.0
    for i in range(len(balls)):
        for j in range(len(balls)):
            span = max(span, abs(balls[i].center - balls[j].center).hi)
    radius = e_bound.hi + span
    covol = lat.covolume()
    pmax = math.floor((Interval.point(radius) * abs(lat.lam) / covol).hi) + 1
    qmax = math.floor((Interval.point(radius) * abs(lat.mu) / covol).hi) + 1
    return pmax, qmax


def _enumerate_pair_orthos(diagram: CuspDiagram, cutoff: Interval) -> dict[Witness, Interval]:
    balls = diagram.balls
    lat = diagram.lattice
    h = diagram.base_height
    found: dict[Witness, Interval] = {}
    for i, ball in enumerate(balls):
        o = orthodistance(ball, AT_INFINITY, h)
        if o.lo <= cutoff.hi:
            found[("inf", i)] = o
    pmax, qmax = _translate_box(diagram, cutoff)
    for i in range(len(balls)):
        for j in range(i, len(balls)):
            for p in range(-pmax, pmax + 1):
                for q in range(-qmax, qmax + 1):
                    if i == j and (p, q) <= (0, 0):
                        continue  # self pair, or the mirror of one already seen
                    w = _canonical_fin(i, j, p, q)
                    if w in found:
                        continue
                    translated = balls[j].translated(lat.offset(p, q))
                    o = orthodistance(balls[i], translated, h)
                    if o.lo <= cutoff.hi:
                        found[w] = o
    return found


def _symmetry_unions(uf: _UnionFind, witnesses, resolved) -> None:
    for sym in resolved:
        for w in witnesses:
            image = sym.map_witness(w)
            if image in uf.parent:
                uf.union(w, image)


def ortho_spectrum(diagram: CuspDiagram, cutoff: Interval) -> list[OrthopairClass]:
    """Certified orthopair classes up to the cutoff, sorted ascending.

    Raises ``AmbiguousSpectrumError`` when two classes overlap without a
    declared certificate keeping them apart, and ``PreconditionError``
    when o(1) fails to enclose 0 or declared labels contradict the
    certified order."""
    if cutoff.hi < 0.0:
        raise PreconditionError(f"cutoff must be nonnegative, got {cutoff}")
    orthos = _enumerate_pair_orthos(diagram, cutoff)
    if not orthos:
        raise PreconditionError("no pairs within cutoff")
    uf = _UnionFind(orthos.keys())
    edge_map = diagram.edge_label_map()

    def declared_label(w: Witness) -> Optional[int]:
        if w[0] == "inf":
            return diagram.labels[w[1]]
        return edge_map.get(w)

    by_label: dict[int, Witness] = {}
    for w in orthos:
        lab = declared_label(w)
        if lab is not None:
            if lab in by_label:
                uf.union(by_label[lab], w)
            else:
                by_label[lab] = w
    _symmetry_unions(uf, list(orthos.keys()), diagram.resolve_symmetries())

    classes = []
    for members in uf.groups().values():
        members = sorted(members)
        common_lo = max(orthos[w].lo for w in members)
        common_hi = min(orthos[w].hi for w in members)
        if common_lo > common_hi:
            raise InternalInconsistencyError(
                f"witnesses declared equal have disjoint orthodistances: {members}")
        hull = Interval.hull(*(orthos[w] for w in members))
        labels = {declared_label(w) for w in members} - {None}
        if len(labels) > 1:
            raise PreconditionError(f"conflicting declared labels {labels} on one class")
        classes.append((hull, members, labels.pop() if labels else None))

    classes.sort(key=lambda c: (c[0].lo, c[0].hi, c[1][0]))
    for a in range(len(classes)):
        for b in range(a + 1, len(classes)):
            if classes[a][0].overlaps(classes[b][0]):
                if classes[a][2] is None or classes[b][2] is None:
                    raise AmbiguousSpectrumError(
                        f"orthodistance enclosures {classes[a][0]} and {classes[b][0]} "
                        "overlap with no certificate that they are equal or distinct")

    # overlapping classes are certified ties; their declared labels (all
    # present, by the check above) fix the order within each tie cluster
    ordered: list = []
    i = 0
    while i < len(classes):
        cluster = [classes[i]]
        j = i + 1
        while j < len(classes) and any(classes[j][0].overlaps(c[0]) for c in cluster):
            cluster.append(classes[j])
            j += 1
        if len(cluster) > 1:
            cluster.sort(key=lambda c: (c[2], c[1][0]))
        ordered.extend(cluster)
        i = j
    classes = ordered

    out = []
    for idx, (hull, members, label) in enumerate(classes, start=1):
        if label is not None and label != idx:
            raise PreconditionError(
                f"declared label {label} lands at certified position {idx}")
        out.append(OrthopairClass(index=idx, ortho=hull, e=(hull / 2.0).exp(),
                                  witnesses=tuple(members)))
    if not out[0].ortho.contains(0.0):
        raise PreconditionError(
            f"o(1) = {out[0].ortho} does not enclose 0: diagram is not "
            "maximal-cusp normalized")
    return out


def enumerate_triples(diagram: CuspDiagram, spectrum: list[OrthopairClass]) -> list[TripleClass]:
    """Typed triple classes (ball, ball, B_inf), one per certified orbit.

    A triple is emitted when all three of its pairs lie in the spectrum.
    Distinct symmetry orbits of the same type are pooled into one record
    with their count as multiplicity."""
    witness_class: dict[Witness, int] = {}
    for cls in spectrum:
        for w in cls.witnesses:
            witness_class[w] = cls.index
    fin_witnesses = [w for w in witness_class if w[0] == "fin"]
    uf = _UnionFind(fin_witnesses)
    _symmetry_unions(uf, fin_witnesses, diagram.resolve_symmetries())

    orbits = uf.groups()
    by_type: dict[tuple[int, int, int], list[list[Witness]]] = {}
    for root in sorted(orbits):
        members = sorted(orbits[root])
        _, i, j, _p, _q = members[0]
        k = witness_class.get(("inf", i))
        l = witness_class.get(("inf", j))
        if k is None or l is None:
            continue  # a pair with B_inf fell outside the cutoff
        m = witness_class[members[0]]
        ttype = tuple(sorted((k, l, m)))
        by_type.setdefault(ttype, []).append(members)

    out = []
    for ttype in sorted(by_type):
        orbit_list = by_type[ttype]
        pooled = tuple(w for orbit in orbit_list for w in orbit)
        out.append(TripleClass(type=ttype, witnesses=pooled,
                               multiplicity=len(orbit_list)))
    return out


def center_distance_of_triple(spectrum: list[OrthopairClass],
                              to_infinity: tuple[int, int], mutual: int) -> Interval:
    """Distance along the cusp torus between the shadow centers of the
    two balls of a (k, l, n)-triple: e_n / (e_k e_l), where k, l are the
    classes of the pairs with B_inf and n the class of the mutual pair."""
    by_index = {cls.index: cls for cls in spectrum}
    try:
        k, l = (by_index[i] for i in to_infinity)
        n = by_index[mutual]
    except KeyError as missing:
        raise PreconditionError(f"spectrum has no class {missing}") from None
    return n.e / (k.e * l.e)


def default_cutoff(diagram: CuspDiagram) -> Interval:
    """Cutoff reaching just past the farthest (ball, B_inf) pair: every
    class with a B_inf witness is covered, and so is every mutual pair
    short enough to close a triple over those classes."""
    top = max(orthodistance(b, AT_INFINITY, diagram.base_height).hi
              for b in diagram.balls)
    return Interval.point(top) + 1e-9


@dataclass(frozen=True)
class DiagramReport:
    failures: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.failures


def validate_diagram(diagram: CuspDiagram, cutoff: Optional[Interval] = None) -> DiagramReport:
    """Check maximality, embeddedness, the (m,m,m)-triple exclusion and
    shadow consistency.  Failures are report entries, never raises."""
    failures = []
    h = diagram.base_height

    tangent = any(b.diameter.overlaps(h) for b in diagram.balls)
    if not tangent:
        failures.append("no horoball is tangent to the base horosphere (o(1) != 0)")
    for i, b in enumerate(diagram.balls):
        if b.diameter.lo > h.hi:
            failures.append(f"ball {i} protrudes above the base horosphere")

    n = len(diagram.balls)
    lat = diagram.lattice
    for i in range(n):
        for j in range(i, n):
            for p in (-1, 0, 1):
                for q in (-1, 0, 1):
                    if i == j and (p, q) <= (0, 0):
                        continue  # self pair / sign mirror of an offset already checked
                    try:
                        o = orthodistance(diagram.balls[i],
                                          diagram.balls[j].translated(lat.offset(p, q)), h)
                    except DegeneratePairError:
                        failures.append(
                            f"balls {i} and {j}(+{p},{q}) have indistinguishable centers")
                        continue
                    if o.hi < 0.0:
                        failures.append(
                            f"balls {i} and {j}(+{p},{q}) certifiably overlap "
                            f"(orthodistance {o})")

    try:
        if cutoff is None:
            cutoff = default_cutoff(diagram)
        spectrum = ortho_spectrum(diagram, cutoff)
        for cls in enumerate_triples(diagram, spectrum):
            k, l, m = cls.type
            if k == l == m:
                failures.append(f"diagram admits a ({k},{k},{k})-triple class")
    except (AmbiguousSpectrumError, PreconditionError, InternalInconsistencyError) as exc:
        failures.append(f"spectrum not certifiable: {exc}")

    for i, b in enumerate(diagram.balls):
        try:
            shadow_of(b, h)
        except InternalInconsistencyError as exc:
            failures.append(f"ball {i}: {exc}")

    return DiagramReport(failures=tuple(failures))
