"""Report records and run manifests.

Reports are line-delimited text, deterministic byte for byte: no
timestamps, sorted content, shortest round-trip float formatting.  Every
CLI command also writes a manifest recording its command line, the
digests of every input, the tool version, and the digest of the report,
so a rerun can be checked for bit-identical output.  Files are written
atomically (temp file then rename).
"""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass, field
from pathlib import Path

from .intervals import Interval

from . import __version__


def fmt_interval(iv: Interval) -> str:
    return f"[{iv.lo!r},{iv.hi!r}]"


def atomic_write_text(path: str | os.PathLike, text: str) -> None:
    path = Path(path)
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(text)
    tmp.replace(path)


def sha256_text(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()


def sha256_file(path: str | os.PathLike) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


@dataclass
class RunManifest:
    command: list[str]
    inputs: dict[str, str] = field(default_factory=dict)
    outputs: dict[str, str] = field(default_factory=dict)
    version: str = __version__
    seed: int = 0  # nothing here is stochastic; recorded for reproducibility audits

    def add_input(self, path: str | os.PathLike) -> None:
        self.inputs[str(path)] = sha256_file(path)

    def add_output(self, path: str | os.PathLike) -> None:
        self.outputs[str(path)] = sha256_file(path)

    def write(self, path: str | os.PathLike) -> None:
        payload = {
            "command": self.command,
            "inputs": self.inputs,
            "outputs": self.outputs,
            "version": self.version,
            "seed": self.seed,
        }
        atomic_write_text(path, json.dumps(payload, sort_keys=True, indent=2) + "\n")


def mom_line(n: int, pair_set, triples, torus_friendly: bool) -> str:
    pairs = ",".join(str(i) for i in sorted(pair_set))
    trips = ";".join("(" + ",".join(str(i) for i in t.type) + ")" for t in triples)
    return f"MOM {n} pairset={pairs} triples={trips} torus_friendly={str(torus_friendly).lower()}"


def bound_line(area: Interval, volume: Interval, case_tag: str) -> str:
    return f"BOUND area={fmt_interval(area)} volume={fmt_interval(volume)} case={case_tag}"


def slope_line(p: int, q: int, length: Interval, flag: str) -> str:
    return f"SLOPE {p}/{q} length={fmt_interval(length)} flag={flag}"


def fkp_line(cutoff: Interval, parent: Interval, target: Interval) -> str:
    return (f"FKP cutoff={fmt_interval(cutoff)} parentvol={fmt_interval(parent)} "
            f"targetvol={fmt_interval(target)}")
