"""Text formats: cusp diagrams and ideal triangulations.

All numeric fields are decimal midpoint/radius pairs printed with 30
significant digits.  Parsing goes through exact rationals, so a number
written by the serializer recovers the original interval endpoints
exactly whenever that is representable (it is for every narrow interval)
and otherwise widens soundly.  ``#`` starts a comment; blank lines are
ignored.

Diagram grammar, one record per line:

    lattice MU_RE MU_IM LAM_RE LAM_IM        (four midpoint/radius pairs)
    height H                                  (optional, default 1 0)
    ball CENTER_RE CENTER_IM DIAMETER [label]
    edge I J P Q LABEL                        (declared ball-ball pair class)
    sym A_RE A_IM B_RE B_IM                   (declared exact symmetry z -> a z + b)

Triangulation grammar:

    tri NAME NTET NCUSPS
    tet IDX N0 N1 N2 N3 P0 P1 P2 P3           (neighbors + vertex permutations)
    shape RE IM                                (one per tetrahedron, in order)
    delta D
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction

from .errors import ParseError, StructuralError
from .horoballs import CuspDiagram, CuspLattice, DiagramSymmetry, Horoball
from .intervals import Interval, ONE, RigorousComplex, _frac_to_hi, _frac_to_lo
from .lobachevsky import ShapeSolution


def _fraction(token: str, line: int) -> Fraction:
    try:
        return Fraction(Decimal(token))
    except Exception:
        raise ParseError(f"not a decimal number: {token!r}", line=line) from None


def parse_interval(mid_token: str, rad_token: str, line: int = 0) -> Interval:
    mid = _fraction(mid_token, line)
    rad = _fraction(rad_token, line)
    if rad < 0:
        raise ParseError(f"negative radius {rad_token}", line=line)
    return Interval(_frac_to_lo(mid - rad), _frac_to_hi(mid + rad))


def format_interval(iv: Interval) -> str:
    """Midpoint/radius tokens whose parse recovers iv exactly.

    Floats are dyadic rationals, so (lo+hi)/2 and (hi-lo)/2 have finite
    decimal expansions; printing them exactly makes the round trip
    lossless (usually 20-55 digits, short for round values)."""
    lo, hi = Fraction(iv.lo), Fraction(iv.hi)
    return f"{_dyadic_decimal((lo + hi) / 2)} {_dyadic_decimal((hi - lo) / 2)}"


def _dyadic_decimal(f: Fraction) -> str:
    """Exact decimal expansion of a dyadic rational."""
    if f.denominator == 1:
        return str(f.numerator)
    k = f.denominator.bit_length() - 1
    if f.denominator != 1 << k:
        raise ValueError(f"not dyadic: {f}")
    digits = str(abs(f.numerator) * 5 ** k)
    sign = "-" if f.numerator < 0 else ""
    if len(digits) <= k:
        return f"{sign}0.{digits.zfill(k)}"
    return f"{sign}{digits[:-k]}.{digits[-k:]}"


def _tokens(text: str):
    """Yield (line_number, fields) for each meaningful line."""
    for ln, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if body:
            yield ln, body.split()


# -- cusp diagrams -----------------------------------------------------------


def parse_diagram(text: str) -> CuspDiagram:
    lattice = None
    height = ONE
    balls = []
    labels = []
    edges = []
    syms = []
    for ln, f in _tokens(text):
        kind = f[0]
        if kind == "lattice":
            if len(f) != 9:
                raise ParseError("lattice needs four midpoint/radius pairs", line=ln)
            mu = RigorousComplex(parse_interval(f[1], f[2], ln), parse_interval(f[3], f[4], ln))
            lam = RigorousComplex(parse_interval(f[5], f[6], ln), parse_interval(f[7], f[8], ln))
            lattice = CuspLattice(mu, lam)
        elif kind == "height":
            if len(f) != 3:
                raise ParseError("height needs one midpoint/radius pair", line=ln)
            height = parse_interval(f[1], f[2], ln)
        elif kind == "ball":
            if len(f) not in (7, 8):
                raise ParseError("ball needs three midpoint/radius pairs and an "
                                 "optional label", line=ln)
            center = RigorousComplex(parse_interval(f[1], f[2], ln),
                                     parse_interval(f[3], f[4], ln))
            diameter = parse_interval(f[5], f[6], ln)
            balls.append(Horoball(center, diameter))
            labels.append(int(f[7]) if len(f) == 8 else None)
        elif kind == "edge":
            if len(f) != 6:
                raise ParseError("edge needs: i j p q label", line=ln)
            edges.append(tuple(int(x) for x in f[1:6]))
        elif kind == "sym":
            if len(f) != 5:
                raise ParseError("sym needs: a_re a_im b_re b_im", line=ln)
            syms.append(DiagramSymmetry(*(_fraction(t, ln) for t in f[1:5])))
        else:
            raise ParseError(f"unknown record {kind!r}", line=ln)
    if lattice is None:
        raise ParseError("diagram has no lattice line", line=0)
    if not balls:
        raise ParseError("diagram has no balls", line=0)
    return CuspDiagram(lattice=lattice, balls=tuple(balls), labels=tuple(labels),
                       edge_labels=tuple(edges), symmetries=tuple(syms),
                       base_height=height)


def serialize_diagram(d: CuspDiagram) -> str:
    lines = [
        "lattice "
        f"{format_interval(d.lattice.mu.re)} {format_interval(d.lattice.mu.im)} "
        f"{format_interval(d.lattice.lam.re)} {format_interval(d.lattice.lam.im)}"
    ]
    if d.base_height != ONE:
        lines.append(f"height {format_interval(d.base_height)}")
    for ball, label in zip(d.balls, d.labels):
        line = (f"ball {format_interval(ball.center.re)} {format_interval(ball.center.im)} "
                f"{format_interval(ball.diameter)}")
        if label is not None:
            line += f" {label}"
        lines.append(line)
    for (i, j, p, q, lab) in d.edge_labels:
        lines.append(f"edge {i} {j} {p} {q} {lab}")
    for s in d.symmetries:
        lines.append(f"sym {s.a_re} {s.a_im} {s.b_re} {s.b_im}")
    return "\n".join(lines) + "\n"


# -- triangulations ----------------------------------------------------------


@dataclass(frozen=True)
class TriangulationFile:
    name: str
    cusp_count: int
    neighbors: tuple[tuple[int, int, int, int], ...]
    perms: tuple[tuple[tuple[int, int, int, int], ...], ...]
    shapes: tuple[RigorousComplex, ...]
    delta: Interval

    @property
    def tetra_count(self) -> int:
        return len(self.neighbors)

    def shape_solution(self) -> ShapeSolution:
        return ShapeSolution(shapes=self.shapes, delta=self.delta)


def _parse_perm(token: str, line: int) -> tuple[int, int, int, int]:
    if len(token) != 4 or set(token) != {"0", "1", "2", "3"}:
        raise ParseError(f"not a vertex permutation: {token!r}", line=line)
    return tuple(int(c) for c in token)


def _check_involution(neighbors, perms) -> None:
    nt = len(neighbors)
    for t in range(nt):
        for f in range(4):
            t2 = neighbors[t][f]
            if not 0 <= t2 < nt:
                raise StructuralError(
                    f"tetrahedron {t} face {f}: neighbor {t2} out of range")
            g = perms[t][f]
            f2 = g[f]
            if neighbors[t2][f2] != t:
                raise StructuralError(
                    f"gluing not involutive at tetrahedron {t} face {f}: "
                    f"neighbor {t2} face {f2} points back to {neighbors[t2][f2]}")
            back = perms[t2][f2]
            if any(back[g[i]] != i for i in range(4)):
                raise StructuralError(
                    f"gluing not involutive at tetrahedron {t} face {f}: "
                    f"permutation {back} is not the inverse of {g}")
            if t2 == t and f2 == f:
                raise StructuralError(
                    f"tetrahedron {t} face {f} is glued to itself")


def parse_triangulation(text: str) -> TriangulationFile:
    name = None
    ntet = ncusp = 0
    neighbors: list = []
    perms: list = []
    shapes: list = []
    delta = None
    for ln, f in _tokens(text):
        kind = f[0]
        if kind == "tri":
            if len(f) != 4:
                raise ParseError("tri needs: name ntet ncusps", line=ln)
            name = f[1]
            ntet, ncusp = int(f[2]), int(f[3])
        elif kind == "tet":
            if len(f) != 10:
                raise ParseError("tet needs: idx n0 n1 n2 n3 p0 p1 p2 p3", line=ln)
            if int(f[1]) != len(neighbors):
                raise ParseError(f"tet lines must appear in order, expected "
                                 f"{len(neighbors)}", line=ln)
            neighbors.append(tuple(int(x) for x in f[2:6]))
            perms.append(tuple(_parse_perm(t, ln) for t in f[6:10]))
        elif kind == "shape":
            if len(f) != 5:
                raise ParseError("shape needs two midpoint/radius pairs", line=ln)
            shapes.append(RigorousComplex(parse_interval(f[1], f[2], ln),
                                          parse_interval(f[3], f[4], ln)))
        elif kind == "delta":
            if len(f) != 3:
                raise ParseError("delta needs one midpoint/radius pair", line=ln)
            delta = parse_interval(f[1], f[2], ln)
        else:
            raise ParseError(f"unknown record {kind!r}", line=ln)
    if name is None:
        raise ParseError("triangulation has no tri header", line=0)
    if len(neighbors) != ntet:
        raise ParseError(f"header declares {ntet} tetrahedra, found {len(neighbors)}",
                         line=0)
    if len(shapes) != ntet:
        raise ParseError(f"expected {ntet} shapes, found {len(shapes)}", line=0)
    if delta is None:
        raise ParseError("triangulation has no delta line", line=0)
    _check_involution(neighbors, perms)
    return TriangulationFile(name=name, cusp_count=ncusp, neighbors=tuple(neighbors),
                             perms=tuple(perms), shapes=tuple(shapes), delta=delta)


def serialize_triangulation(t: TriangulationFile) -> str:
    lines = [f"tri {t.name} {t.tetra_count} {t.cusp_count}"]
    for i, (nbr, ps) in enumerate(zip(t.neighbors, t.perms)):
        perm_tokens = ["".join(str(v) for v in p) for p in ps]
        lines.append(f"tet {i} {' '.join(str(n) for n in nbr)} {' '.join(perm_tokens)}")
    for z in t.shapes:
        lines.append(f"shape {format_interval(z.re)} {format_interval(z.im)}")
    lines.append(f"delta {format_interval(t.delta)}")
    return "\n".join(lines) + "\n"
