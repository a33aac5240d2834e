"""Census of Mom-2/Mom-3 candidate polyhedral gluings.

Pipeline: enumerate perfect matchings of dipyramid faces with the
pole-pinned orientation-reversing identifications, filter by the
vertex-link Euler-characteristic-zero condition, canonicalize under the
inventory symmetry group, deduplicate, then compute links and first
homology per surviving gluing.

The search tree is sharded at the first matching choice, which is also
the checkpoint granularity and the unit handed to worker threads;
results are merged in branch order, so the output is identical for any
worker count.
"""

from __future__ import annotations

import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator, Optional

import numpy as np

from ..errors import PreconditionError
from .dipyramid import Assembly, Dipyramid, Inventory, build_assembly, polyhedron_inventories
from .gluing import (
    GluingDescription,
    HomologyInvariants,
    VertexLinkReport,
    canonical_signature,
    complex_euler_characteristic,
    homology,
    relabeled,
    vertex_links,
)
from .kernels import backend_name, run_search

__all__ = [
    "Assembly",
    "CensusRecord",
    "CensusResult",
    "Dipyramid",
    "GluingDescription",
    "HomologyInvariants",
    "InventoryCensus",
    "VertexLinkReport",
    "backend_name",
    "build_assembly",
    "canonical_signature",
    "census_inventory",
    "complex_euler_characteristic",
    "enumerate_gluings",
    "homology",
    "polyhedron_inventories",
    "relabeled",
    "run_census",
    "vertex_links",
]


@dataclass(frozen=True)
class InventoryCensus:
    inventory: Inventory
    raw_count: int          # matchings visited
    kept_count: int         # leaves surviving the (optional) Euler filter
    gluings: tuple[GluingDescription, ...]  # deduped, sorted by signature

    @property
    def dedup_count(self) -> int:
        return len(self.gluings)


def _branches(assembly: Assembly) -> list[int]:
    return list(range(1, assembly.face_count))


def _run_branch(assembly: Assembly, branch: int, euler_only: bool,
                backend: Optional[str]) -> tuple[np.ndarray, int, int]:
    """(branch-local unique canonical rows, raw leaves, surviving leaves)."""
    rows, raw = run_search(assembly, euler_only=euler_only, first_partner=branch,
                           backend=backend)
    kept = rows.shape[0]
    unique = np.unique(rows, axis=0) if kept else rows
    return unique, raw, kept


def census_inventory(inventory: Inventory, *, euler_zero_only: bool = True,
                     backend: Optional[str] = None, workers: int = 1,
                     checkpoint: Optional["Checkpoint"] = None) -> InventoryCensus:
    """Search one inventory completely and return its deduped census."""
    assembly = build_assembly(inventory)
    branches = _branches(assembly)
    results: dict[int, tuple[np.ndarray, int, int]] = {}
    if checkpoint is not None:
        for branch in list(branches):
            cached = checkpoint.load(inventory, branch, euler_zero_only)
            if cached is not None:
                results[branch] = cached
                branches.remove(branch)

    if workers > 1 and branches:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = {b: pool.submit(_run_branch, assembly, b, euler_zero_only, backend)
                       for b in branches}
            for b in branches:
                results[b] = futures[b].result()
    else:
        for b in branches:
            results[b] = _run_branch(assembly, b, euler_zero_only, backend)
    if checkpoint is not None:
        for b in sorted(results):
            checkpoint.store(inventory, b, euler_zero_only, *results[b])

    raw = sum(results[b][1] for b in results)
    kept = sum(results[b][2] for b in results)
    rows = [results[b][0] for b in sorted(results)]
    stacked = np.concatenate(rows, axis=0) if rows else np.zeros((0, assembly.face_count), int)
    unique = np.unique(stacked, axis=0) if stacked.shape[0] else stacked
    gluings = tuple(GluingDescription.from_match_row(assembly, row) for row in unique)
    gluings = tuple(sorted(gluings, key=canonical_signature))
    return InventoryCensus(inventory=inventory, raw_count=raw, kept_count=kept,
                           gluings=gluings)


def enumerate_gluings(inventory: Inventory, *, euler_zero_only: bool = False,
                      backend: Optional[str] = None) -> Iterator[GluingDescription]:
    """Deterministic stream of gluings for one inventory, one per
    symmetry class (deduped by canonical signature), sorted."""
    yield from census_inventory(inventory, euler_zero_only=euler_zero_only,
                                backend=backend).gluings


@dataclass(frozen=True)
class CensusRecord:
    signature: str
    inventory_tag: str
    link_eulers: tuple[int, ...]
    torus_count: int
    h1: HomologyInvariants

    def report_line(self) -> str:
        return (f"GLUING sig={self.signature} inventory={self.inventory_tag} "
                f"links=torusx{self.torus_count} h1={self.h1}")


@dataclass(frozen=True)
class CensusResult:
    n: int
    inventories: tuple[InventoryCensus, ...]
    records: tuple[CensusRecord, ...]

    @property
    def raw_count(self) -> int:
        return sum(ic.raw_count for ic in self.inventories)

    @property
    def kept_count(self) -> int:
        return sum(ic.kept_count for ic in self.inventories)

    @property
    def dedup_count(self) -> int:
        return sum(ic.dedup_count for ic in self.inventories)


class Checkpoint:
    """Resumable census state: one JSON entry per completed first-level
    search branch, written atomically."""

    def __init__(self, path: str | os.PathLike):
        self.path = Path(path)
        self._data: dict = {"branches": {}}
        if self.path.exists():
            self._data = json.loads(self.path.read_text())

    @staticmethod
    def _key(inventory: Inventory, branch: int, euler_only: bool) -> str:
        return f"{inventory.tag}|{branch}|{int(euler_only)}"

    def load(self, inventory: Inventory, branch: int, euler_only: bool):
        entry = self._data["branches"].get(self._key(inventory, branch, euler_only))
        if entry is None:
            return None
        width = 2 * sum(inventory.sides)
        rows = np.array(entry["rows"], dtype=np.int64).reshape(-1, width)
        return rows, entry["raw"], entry["kept"]

    def store(self, inventory: Inventory, branch: int, euler_only: bool,
              rows: np.ndarray, raw: int, kept: int) -> None:
        key = self._key(inventory, branch, euler_only)
        if key in self._data["branches"]:
            return
        self._data["branches"][key] = {
            "raw": int(raw),
            "kept": int(kept),
            "rows": [int(x) for x in rows.reshape(-1)],
        }
        tmp = self.path.with_suffix(self.path.suffix + ".tmp")
        tmp.write_text(json.dumps(self._data, sort_keys=True))
        tmp.replace(self.path)


def run_census(n: int, *, euler_zero_only: bool = True, backend: Optional[str] = None,
               workers: Optional[int] = None,
               checkpoint_path: Optional[str] = None) -> CensusResult:
    """Full Mom-n census: every inventory, filtered, deduped, with links
    and homology computed per retained gluing."""
    if workers is None:
        workers = int(os.environ.get("MOMCENSUS_WORKERS", "1"))
    if workers < 1:
        raise PreconditionError("worker count must be positive")
    checkpoint = Checkpoint(checkpoint_path) if checkpoint_path else None
    censuses = []
    records = []
    for inventory in polyhedron_inventories(n):
        ic = census_inventory(inventory, euler_zero_only=euler_zero_only,
                              backend=backend, workers=workers, checkpoint=checkpoint)
        censuses.append(ic)
        for g in ic.gluings:
            report = vertex_links(g)
            eulers = tuple(l.euler for l in report.links)
            rec = CensusRecord(
                signature=canonical_signature(g),
                inventory_tag=inventory.tag,
                link_eulers=eulers,
                torus_count=sum(1 for e in eulers if e == 0),
                h1=homology(g) if report.all_torus else HomologyInvariants(-1, ()),
            )
            records.append(rec)
    records.sort(key=lambda r: r.signature)
    return CensusResult(n=n, inventories=tuple(censuses), records=tuple(records))
