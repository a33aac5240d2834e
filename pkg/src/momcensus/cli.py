"""Command-line interface.

Every subcommand writes a deterministic report file plus a RunManifest
next to it and echoes the report to stdout.  Exit codes: 0 success,
2 parse error, 3 precondition violation, 4 uncertifiable enclosure,
5 internal inconsistency.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__
from .census import run_census
from .errors import MomCensusError, ParseError
from .fillings import (
    CuspShape,
    closed_volume_chain,
    enumerate_short_slopes,
    fkp_length_cutoff,
)
from .formats import parse_diagram, parse_triangulation
from .horoballs import default_cutoff, enumerate_triples, ortho_spectrum
from .intervals import Interval, RigorousComplex
from .lobachevsky import lobachevsky, triangulation_volume
from .momstruct import area_lower_bound, find_mom_structures, is_torus_friendly
from .reports import (
    RunManifest,
    atomic_write_text,
    bound_line,
    fkp_line,
    fmt_interval,
    mom_line,
    slope_line,
)


def _literal(text: str) -> Interval:
    try:
        return Interval.from_literal(text)
    except Exception:
        raise ParseError(f"not a decimal number: {text!r}") from None


def _parse_shape(text: str) -> CuspShape:
    """mu_re,mu_im;lam_re,lam_im as plain decimals."""
    try:
        mu_part, lam_part = text.split(";")
        mu_re, mu_im = mu_part.split(",")
        lam_re, lam_im = lam_part.split(",")
    except ValueError:
        raise ParseError(
            f"shape must look like MU_RE,MU_IM;LAM_RE,LAM_IM, got {text!r}") from None
    return CuspShape(RigorousComplex(_literal(mu_re), _literal(mu_im)),
                     RigorousComplex(_literal(lam_re), _literal(lam_im)))


def _emit(args, lines: list[str], inputs: list[str]) -> None:
    text = "\n".join(lines) + "\n"
    sys.stdout.write(text)
    out = Path(args.out)
    atomic_write_text(out, text)
    manifest = RunManifest(command=list(args.argv))
    for p in inputs:
        manifest.add_input(p)
    manifest.add_output(out)
    manifest.write(out.with_name(out.name + ".manifest.json"))


def _cmd_lob(args) -> None:
    theta = _literal(args.theta)
    value = lobachevsky(theta)
    _emit(args, [f"LOB theta={fmt_interval(theta)} value={fmt_interval(value)}"], [])


def _cmd_volume(args) -> None:
    tri = parse_triangulation(Path(args.triangulation).read_text())
    vol = triangulation_volume(tri.shape_solution())
    _emit(args, [
        f"VOLUME name={tri.name} tetrahedra={tri.tetra_count} "
        f"delta={fmt_interval(tri.delta)} value={fmt_interval(vol)}",
    ], [args.triangulation])


def _cmd_spectrum(args) -> None:
    diagram = parse_diagram(Path(args.diagram).read_text())
    spectrum = ortho_spectrum(diagram, _literal(args.cutoff))
    lines = [
        f"CLASS {cls.index} ortho={fmt_interval(cls.ortho)} e={fmt_interval(cls.e)} "
        f"witnesses={len(cls.witnesses)}"
        for cls in spectrum
    ]
    _emit(args, lines, [args.diagram])


def _cmd_momfind(args) -> None:
    diagram = parse_diagram(Path(args.diagram).read_text())
    cutoff = _literal(args.cutoff) if args.cutoff else default_cutoff(diagram)
    spectrum = ortho_spectrum(diagram, cutoff)
    triples = enumerate_triples(diagram, spectrum)
    lines = [f"TRIPLE type=({','.join(str(i) for i in t.type)}) multiplicity={t.multiplicity}"
             for t in triples]
    structures = find_mom_structures(triples, args.n)
    for s in structures:
        lines.append(mom_line(args.n, s.pair_set, s.triples, is_torus_friendly(s)))
    if not structures:
        lines.append(f"MOM {args.n} none")
    if len(spectrum) >= 2:
        e2 = spectrum[1].e
        e3 = spectrum[2].e if len(spectrum) >= 3 else e2
        report = area_lower_bound(e2, e3)
        lines.append(bound_line(report.area_lower, report.volume_lower,
                                report.case_tag.value))
    _emit(args, lines, [args.diagram])


def _cmd_census(args) -> None:
    result = run_census(args.mom, backend=args.backend, workers=args.workers,
                        checkpoint_path=args.resume)
    lines = [
        f"# census mom={args.mom} raw={result.raw_count} kept={result.kept_count} "
        f"dedup={result.dedup_count}",
    ]
    for ic in result.inventories:
        lines.append(f"# inventory {ic.inventory.tag} raw={ic.raw_count} "
                     f"kept={ic.kept_count} dedup={ic.dedup_count}")
    lines.extend(rec.report_line() for rec in result.records)
    _emit(args, lines, [])


def _cmd_slopes(args) -> None:
    shape = _parse_shape(args.shape)
    parent = _literal(args.parent_vol)
    target = _literal(args.target_vol)
    bound = fkp_length_cutoff(parent, target)
    records = enumerate_short_slopes(shape, bound.length_cutoff)
    lines = [
        "# the cutoff form is unconditional; the volume bound itself "
        "applies only to slopes longer than 2 pi",
        fkp_line(bound.length_cutoff, parent, target),
    ]
    lines.extend(slope_line(r.slope.p, r.slope.q, r.length, r.flag.value)
                 for r in records)
    _emit(args, lines, [])


def _cmd_chain(args) -> None:
    cusped = _literal(args.cusped_bound)
    closed = closed_volume_chain(cusped)
    lines = [
        "# assumes the shortest geodesic has an embedded tube of radius >= log(3)/2",
        f"CHAIN cusped={fmt_interval(cusped)} closed={fmt_interval(closed)}",
    ]
    _emit(args, lines, [])


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="momcensus",
        description="Verified horoball diagrams, Mom detection, gluing census, "
                    "and Dehn-filling volume bounds.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("lob", help="enclose the Lobachevsky function at theta (radians)")
    p.add_argument("theta")
    p.add_argument("--out", default="lob.report.txt")
    p.set_defaults(func=_cmd_lob)

    p = sub.add_parser("volume", help="certified volume of an ideal triangulation")
    p.add_argument("triangulation")
    p.add_argument("--out", default="volume.report.txt")
    p.set_defaults(func=_cmd_volume)

    p = sub.add_parser("spectrum", help="orthopair spectrum of a cusp diagram")
    p.add_argument("diagram")
    p.add_argument("--cutoff", required=True)
    p.add_argument("--out", default="spectrum.report.txt")
    p.set_defaults(func=_cmd_spectrum)

    p = sub.add_parser("momfind", help="combinatorial Mom-n structures in a diagram")
    p.add_argument("diagram")
    p.add_argument("--n", type=int, required=True, choices=(2, 3))
    p.add_argument("--cutoff")
    p.add_argument("--out", default="momfind.report.txt")
    p.set_defaults(func=_cmd_momfind)

    p = sub.add_parser("census", help="Mom-2/Mom-3 polyhedral gluing census")
    p.add_argument("--mom", type=int, required=True, choices=(2, 3))
    p.add_argument("--resume", help="checkpoint file (created if missing)")
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--backend", choices=("numba", "numpy"))
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_census)

    p = sub.add_parser("slopes", help="Dehn-filling slopes below the length cutoff")
    p.add_argument("shape", help="MU_RE,MU_IM;LAM_RE,LAM_IM")
    p.add_argument("--parent-vol", required=True)
    p.add_argument("--target-vol", required=True)
    p.add_argument("--out", default="slopes.report.txt")
    p.set_defaults(func=_cmd_slopes)

    p = sub.add_parser("chain", help="closed-manifold volume floor from a cusped bound")
    p.add_argument("--cusped-bound", required=True)
    p.add_argument("--out", default="chain.report.txt")
    p.set_defaults(func=_cmd_chain)
    return parser


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    args.argv = ["momcensus"] + argv
    if getattr(args, "out", None) is None and args.command == "census":
        args.out = f"census-mom{args.mom}.report.txt"
    try:
        args.func(args)
    except MomCensusError as exc:
        sys.stderr.write(f"momcensus {args.command}: {exc}\n")
        return exc.exit_code
    except OSError as exc:
        sys.stderr.write(f"momcensus {args.command}: {exc}\n")
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
