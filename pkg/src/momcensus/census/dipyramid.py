"""Ideal dipyramids, census inventories, and the precomputed incidence
tables the gluing search runs on.

A v-sided dipyramid has v equatorial ideal vertices, two polar ideal
vertices, and 2v triangular faces.  Face (N, i) carries the positively
oriented boundary cycle (poleN, eq_i, eq_{i+1}); face (S, i) carries
(poleS, eq_{i+1}, eq_i).  Slot 0 of every face is its pole, which pins
the orientation-reversing identification of two faces to the single
rotation matching pole to pole.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from ..errors import PreconditionError


@dataclass(frozen=True)
class Dipyramid:
    sides: int

    def __post_init__(self):
        if self.sides < 3:
            raise PreconditionError("dipyramids need at least 3 sides")

    @property
    def face_count(self) -> int:
        return 2 * self.sides

    @property
    def vertex_count(self) -> int:
        return self.sides + 2  # equatorials, then poleN, poleS

    @property
    def edge_count(self) -> int:
        return 3 * self.sides  # ring, N spokes, S spokes

    def face_cycle(self, f: int) -> tuple[int, int, int]:
        """Local vertex ids along the positively oriented boundary,
        pole first."""
        v = self.sides
        if f < v:
            return (v, f, (f + 1) % v)
        i = f - v
        return (v + 1, (i + 1) % v, i)

    def face_edges(self, f: int) -> tuple[int, int, int]:
        """Local edge ids for the face edges (slot s -> s+1).

        Ring edge i joins eq_i to eq_{i+1} (id i); north spoke i joins
        poleN to eq_i (id v+i); south spoke i joins poleS to eq_i
        (id 2v+i)."""
        v = self.sides
        if f < v:
            i = f
            return (v + i, i, v + (i + 1) % v)
        i = f - v
        return (2 * v + (i + 1) % v, i, 2 * v + i)

    def edge_ends(self, e: int) -> tuple[int, int]:
        """Canonical (vertex, vertex) of a local edge."""
        v = self.sides
        if e < v:
            return (e, (e + 1) % v)
        if e < 2 * v:
            return (v, e - v)
        return (v + 1, e - 2 * v)

    def symmetry_face_perms(self) -> list[tuple[int, ...]]:
        """The 2v orientation-preserving symmetries (axis rotations and
        pole-swapping equatorial flips) as slot-preserving face
        permutations, identity first."""
        v = self.sides
        perms = []
        for k in range(v):
            perm = [0] * (2 * v)
            for i in range(v):
                perm[i] = (i + k) % v
                perm[v + i] = v + (i + k) % v
            perms.append(tuple(perm))
        for m in range(v):
            perm = [0] * (2 * v)
            for i in range(v):
                perm[i] = v + (m - i - 1) % v
                perm[v + i] = (m - i - 1) % v
            perms.append(tuple(perm))
        return perms


OCTAHEDRON = Dipyramid(4)


@dataclass(frozen=True)
class Inventory:
    """A multiset of dipyramids together with the valence-2 handles that
    were flattened away at generation time."""

    n: int
    sides: tuple[int, ...]   # sorted descending, each >= 3
    flattened: int           # number of valence-2 parts removed

    @property
    def dipyramids(self) -> tuple[Dipyramid, ...]:
        return tuple(Dipyramid(v) for v in self.sides)

    @property
    def tag(self) -> str:
        return "+".join(f"d{v}" for v in self.sides)

    def valence_total(self) -> int:
        return sum(self.sides) + 2 * self.flattened


def polyhedron_inventories(n: int) -> list[Inventory]:
    """Possible polyhedral decompositions of a Mom-n: partitions of 3n
    into n 1-handle valences, each at least 2, with valence-2 handles
    flattened away."""
    if n not in (2, 3):
        raise PreconditionError(
            f"only Mom-2 and Mom-3 inventories are supported, got n={n}")
    partitions = set()

    def rec(remaining, parts, minimum):
        if len(parts) == n:
            if remaining == 0:
                partitions.add(tuple(sorted(parts, reverse=True)))
            return
        for part in range(minimum, remaining + 1):
            rec(remaining - part, parts + [part], part)

    rec(3 * n, [], 2)
    out = []
    for parts in sorted(partitions, reverse=True):
        sides = tuple(v for v in parts if v >= 3)
        out.append(Inventory(n=n, sides=sides, flattened=parts.count(2)))
    return out


@dataclass(frozen=True)
class Assembly:
    """Flattened incidence tables for one inventory, shared by the
    search kernels and the per-gluing computations.

    end ids are 2*edge + side with side 0 at the canonical first vertex
    of the edge; ``end_id[f, 2s]`` is the end of face-edge (f, s) at
    slot s, ``end_id[f, 2s+1]`` the end at slot s+1.
    """

    inventory: Inventory
    face_count: int
    vertex_count: int
    edge_count: int
    face_owner: np.ndarray    # (F,)   poly index
    slot_vertex: np.ndarray   # (F, 3) global vertex ids, slot 0 polar
    slot_edge: np.ndarray     # (F, 3) global edge ids
    end_id: np.ndarray        # (F, 6)
    end_vertex: np.ndarray    # (2E,)
    is_polar: np.ndarray      # (V,) bool
    corner_count: np.ndarray  # (V,)
    sym: np.ndarray           # (G, F) symmetry group as face permutations
    sym_inv: np.ndarray       # (G, F)

    @property
    def group_order(self) -> int:
        return self.sym.shape[0]


def build_assembly(inventory: Inventory) -> Assembly:
    polys = inventory.dipyramids
    if not polys:
        raise PreconditionError(f"inventory {inventory} has no polyhedra")
    face_off, vert_off, edge_off = [], [], []
    F = V = E = 0
    for d in polys:
        face_off.append(F)
        vert_off.append(V)
        edge_off.append(E)
        F += d.face_count
        V += d.vertex_count
        E += d.edge_count

    face_owner = np.zeros(F, dtype=np.int64)
    slot_vertex = np.zeros((F, 3), dtype=np.int64)
    slot_edge = np.zeros((F, 3), dtype=np.int64)
    end_id = np.zeros((F, 6), dtype=np.int64)
    end_vertex = np.zeros(2 * E, dtype=np.int64)
    is_polar = np.zeros(V, dtype=np.bool_)
    corner_count = np.zeros(V, dtype=np.int64)

    for p, d in enumerate(polys):
        v = d.sides
        for lv in range(d.vertex_count):
            gv = vert_off[p] + lv
            is_polar[gv] = lv >= v
            corner_count[gv] = v if lv >= v else 4
        for le in range(d.edge_count):
            a, b = d.edge_ends(le)
            ge = edge_off[p] + le
            end_vertex[2 * ge] = vert_off[p] + a
            end_vertex[2 * ge + 1] = vert_off[p] + b
        for lf in range(d.face_count):
            gf = face_off[p] + lf
            face_owner[gf] = p
            cyc = d.face_cycle(lf)
            edges = d.face_edges(lf)
            for s in range(3):
                slot_vertex[gf, s] = vert_off[p] + cyc[s]
                ge = edge_off[p] + edges[s]
                slot_edge[gf, s] = ge
                va = vert_off[p] + cyc[s]
                vb = vert_off[p] + cyc[(s + 1) % 3]
                first = end_vertex[2 * ge]
                end_id[gf, 2 * s] = 2 * ge + (0 if va == first else 1)
                end_id[gf, 2 * s + 1] = 2 * ge + (0 if vb == first else 1)
                assert {va, vb} == {end_vertex[2 * ge], end_vertex[2 * ge + 1]}

    sym_rows = _symmetry_group(inventory, polys, face_off)
    sym = np.array(sym_rows, dtype=np.int64)
    sym_inv = np.zeros_like(sym)
    for g in range(sym.shape[0]):
        sym_inv[g, sym[g]] = np.arange(F, dtype=np.int64)

    return Assembly(inventory=inventory, face_count=F, vertex_count=V, edge_count=E,
                    face_owner=face_owner, slot_vertex=slot_vertex, slot_edge=slot_edge,
                    end_id=end_id, end_vertex=end_vertex, is_polar=is_polar,
                    corner_count=corner_count, sym=sym, sym_inv=sym_inv)


def _symmetry_group(inventory: Inventory, polys, face_off) -> list[list[int]]:
    """Face permutations generated by each dipyramid's dihedral symmetry
    and by permutations of identical dipyramids; identity first."""
    local_syms = [d.symmetry_face_perms() for d in polys]
    blocks: dict[int, list[int]] = {}
    for p, d in enumerate(polys):
        blocks.setdefault(d.sides, []).append(p)
    block_perm_choices = [list(itertools.permutations(b)) for b in blocks.values()]

    F = sum(d.face_count for d in polys)
    rows = []
    for block_choice in itertools.product(*block_perm_choices):
        poly_perm = {}
        for source_block, target_block in zip(blocks.values(), block_choice):
            for src, dst in zip(source_block, target_block):
                poly_perm[src] = dst
        for locals_choice in itertools.product(*local_syms):
            row = [0] * F
            for p, d in enumerate(polys):
                target = poly_perm[p]
                lp = locals_choice[p]
                for lf in range(d.face_count):
                    row[face_off[p] + lf] = face_off[target] + lp[lf]
            rows.append(row)
    return rows
