"""Gluing descriptions and their combinatorial invariants: polar
validation, vertex-link surfaces, first homology, canonical signatures.

A pairing identifies face a with face b = match[a] by the orientation
reversal sending slot s of a to slot (r - s) mod 3 of b, r the stored
rotation.  Slot 0 of every dipyramid face is its pole, so the polar
constraint (poles glue only to poles) pins r = 0.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import PreconditionError, StructuralError
from ..snf import invariant_factors
from .dipyramid import Assembly


@dataclass(frozen=True)
class GluingDescription:
    assembly: Assembly
    match: tuple[int, ...]
    rot: tuple[int, ...]

    def __post_init__(self):
        F = self.assembly.face_count
        if len(self.match) != F or len(self.rot) != F:
            raise StructuralError("pairing tables must cover every face")
        for f, g in enumerate(self.match):
            if not 0 <= g < F or g == f:
                raise StructuralError(f"face {f} matched to invalid face {g}")
            if self.match[g] != f:
                raise StructuralError(f"pairing not involutive at faces {f},{g}")
            if self.rot[f] != self.rot[g] or not 0 <= self.rot[f] <= 2:
                raise StructuralError(f"rotations inconsistent on pair ({f},{g})")

    @classmethod
    def from_match_row(cls, assembly: Assembly, row) -> "GluingDescription":
        return cls(assembly=assembly, match=tuple(int(x) for x in row),
                   rot=(0,) * assembly.face_count)

    def slot_image(self, f: int, s: int) -> int:
        return (self.rot[f] - s) % 3

    def polar_violations(self) -> list[str]:
        """Face pairs whose identification sends a polar vertex to an
        equatorial one (or vice versa)."""
        a_ = self.assembly
        out = []
        for f, g in enumerate(self.match):
            if g < f:
                continue
            for s in range(3):
                t = self.slot_image(f, s)
                if bool(a_.is_polar[a_.slot_vertex[f, s]]) != bool(a_.is_polar[a_.slot_vertex[g, t]]):
                    out.append(f"pair ({f},{g}) rot {self.rot[f]}: slot {s} "
                               "mixes polar and equatorial vertices")
                    break
        return out


class _UF:
    __slots__ = ("parent",)

    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra


def _orbit_tables(g: GluingDescription) -> tuple[_UF, _UF, _UF]:
    """Union-finds for vertex classes, edge classes, edge-end classes."""
    a_ = g.assembly
    uv = _UF(a_.vertex_count)
    ue = _UF(a_.edge_count)
    un = _UF(2 * a_.edge_count)
    for f, h in enumerate(g.match):
        if h < f:
            continue
        r = g.rot[f]
        for s in range(3):
            t = (r - s) % 3
            te = (r - s - 1) % 3
            uv.union(int(a_.slot_vertex[f, s]), int(a_.slot_vertex[h, t]))
            ue.union(int(a_.slot_edge[f, s]), int(a_.slot_edge[h, te]))
            un.union(int(a_.end_id[f, 2 * s]), int(a_.end_id[h, 2 * te + 1]))
            un.union(int(a_.end_id[f, 2 * s + 1]), int(a_.end_id[h, 2 * te]))
    return uv, ue, un


@dataclass(frozen=True)
class LinkRecord:
    euler: int
    orientable: bool
    vertex_class: str          # "polar" or "equatorial"
    vertices: tuple[int, ...]  # polyhedron vertices in the class


@dataclass(frozen=True)
class VertexLinkReport:
    links: tuple[LinkRecord, ...]

    @property
    def all_torus(self) -> bool:
        return all(l.euler == 0 for l in self.links)

    def polar_links(self) -> tuple[LinkRecord, ...]:
        return tuple(l for l in self.links if l.vertex_class == "polar")


def vertex_links(g: GluingDescription) -> VertexLinkReport:
    """Assemble the link surface of every ideal-vertex class from its
    corner polygons and return Euler characteristics.

    The links of a face-paired polyhedral complex close up into
    surfaces; orientability is forced by the orientation-reversing
    pairings of coherently oriented polyhedra.  A cross-check against
    2(E - F/2 + C) guards the corner tracing."""
    a_ = g.assembly
    uv, ue, un = _orbit_tables(g)

    classes: dict[int, list[int]] = {}
    for v in range(a_.vertex_count):
        classes.setdefault(uv.find(v), []).append(v)

    end_class_vertex_root: dict[int, int] = {}
    for n in range(2 * a_.edge_count):
        root = un.find(n)
        if root not in end_class_vertex_root:
            end_class_vertex_root[root] = uv.find(int(a_.end_vertex[root]))

    records = []
    for root in sorted(classes):
        members = classes[root]
        f_l = len(members)
        corners = sum(int(a_.corner_count[v]) for v in members)
        if corners % 2:
            raise StructuralError("corner tracing failed to close a link")
        e_l = corners // 2
        v_l = sum(1 for r, vr in end_class_vertex_root.items() if vr == root)
        polar_flags = {bool(a_.is_polar[v]) for v in members}
        if len(polar_flags) > 1:
            raise StructuralError(
                f"vertex class {sorted(members)} mixes polar and equatorial vertices")
        records.append(LinkRecord(euler=v_l - e_l + f_l, orientable=True,
                                  vertex_class="polar" if polar_flags.pop() else "equatorial",
                                  vertices=tuple(members)))

    edge_classes = len({ue.find(e) for e in range(a_.edge_count)})
    chi_sum = sum(r.euler for r in records)
    expected = 2 * edge_classes - a_.face_count + 2 * len(a_.inventory.sides)
    if chi_sum != expected:
        raise StructuralError(
            f"link Euler characteristics sum to {chi_sum}, expected {expected}")
    return VertexLinkReport(links=tuple(records))


def complex_euler_characteristic(g: GluingDescription) -> int:
    """V - E + F - C of the identified pseudo-complex."""
    a_ = g.assembly
    uv, ue, _ = _orbit_tables(g)
    v = len({uv.find(x) for x in range(a_.vertex_count)})
    e = len({ue.find(x) for x in range(a_.edge_count)})
    return v - e + a_.face_count // 2 - len(a_.inventory.sides)


@dataclass(frozen=True)
class HomologyInvariants:
    rank: int
    torsion: tuple[int, ...]

    def __post_init__(self):
        for i in range(1, len(self.torsion)):
            if self.torsion[i] % self.torsion[i - 1]:
                raise PreconditionError("torsion factors must divide successively")

    def __str__(self):
        return f"{self.rank}+[{','.join(str(t) for t in self.torsion)}]"


def _edge_relations(g: GluingDescription) -> tuple[list[list[int]], list[tuple[int, int]]]:
    """Abelianized edge relations over the face-class generators of the
    dual spine, plus each generator's (tail, head) polyhedra.

    Rotating around an edge class alternates moving across a face
    pairing and switching to the other face of the polyhedron edge;
    every crossing contributes +-1 to the crossed face class."""
    a_ = g.assembly
    pair_index: dict[int, int] = {}
    gens: list[tuple[int, int]] = []
    for f, h in enumerate(g.match):
        if f < h:
            pair_index[f] = len(gens)
            pair_index[h] = len(gens)
            gens.append((int(a_.face_owner[f]), int(a_.face_owner[h])))

    occurrences: dict[int, list[tuple[int, int]]] = {}
    for f in range(a_.face_count):
        for s in range(3):
            occurrences.setdefault(int(a_.slot_edge[f, s]), []).append((f, s))
    for e, occ in occurrences.items():
        if len(occ) != 2:
            raise StructuralError(f"polyhedron edge {e} lies in {len(occ)} faces")

    relations = []
    seen: set[tuple[int, int]] = set()
    for f0 in range(a_.face_count):
        for s0 in range(3):
            if (f0, s0) in seen:
                continue
            vec = [0] * len(gens)
            f, s = f0, s0
            while True:
                seen.add((f, s))
                h = g.match[f]
                vec[pair_index[f]] += 1 if f < h else -1
                t = (g.rot[f] - s - 1) % 3
                seen.add((h, t))
                e = int(a_.slot_edge[h, t])
                occ = occurrences[e]
                f, s = occ[1] if occ[0] == (h, t) else occ[0]
                if (f, s) == (f0, s0):
                    break
            relations.append(vec)
    return relations, gens


def homology(g: GluingDescription) -> HomologyInvariants:
    """H_1 of the glued-up manifold with its ideal vertices truncated,
    from the dual-spine presentation (generators: face classes;
    relations: edge cycles), via Smith normal form."""
    report = vertex_links(g)
    if not report.all_torus:
        raise PreconditionError(
            "homology is computed only for gluings with all-torus links")
    relations, gens = _edge_relations(g)
    n_gens = len(gens)

    d1_rows = []  # boundary of generators: head - tail over polyhedra
    n_poly = len(g.assembly.inventory.sides)
    for tail, head in gens:
        row = [0] * n_poly
        row[head] += 1
        row[tail] -= 1
        d1_rows.append(row)
    d1_matrix = [[d1_rows[j][i] for j in range(n_gens)] for i in range(n_poly)]
    r1 = len(invariant_factors(d1_matrix)) if n_gens and n_poly else 0

    factors = invariant_factors(relations) if relations and n_gens else []
    rank = n_gens - r1 - len(factors)
    torsion = tuple(f for f in factors if f > 1)
    return HomologyInvariants(rank=rank, torsion=torsion)


def canonical_signature(g: GluingDescription) -> str:
    """Relabeling-invariant signature: the lexicographic minimum of the
    pairing encoding over the inventory symmetry group."""
    a_ = g.assembly
    F = a_.face_count
    best = None
    for gi in range(a_.group_order):
        perm = a_.sym[gi]
        inv = a_.sym_inv[gi]
        enc = tuple((int(perm[g.match[inv[x]]]), g.rot[inv[x]]) for x in range(F))
        if best is None or enc < best:
            best = enc
    body = ",".join(f"{m}:{r}" for m, r in best)
    return f"{a_.inventory.tag}|{body}"


def relabeled(g: GluingDescription, group_index: int) -> GluingDescription:
    """The same gluing with faces renamed by a symmetry group element."""
    a_ = g.assembly
    perm = a_.sym[group_index]
    inv = a_.sym_inv[group_index]
    F = a_.face_count
    match = tuple(int(perm[g.match[inv[x]]]) for x in range(F))
    rot = tuple(int(g.rot[inv[x]]) for x in range(F))
    return GluingDescription(assembly=a_, match=match, rot=rot)
