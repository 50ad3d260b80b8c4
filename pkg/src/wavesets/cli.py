"""Command line interface: ``wavesets <command> ...``.

Objects are named as ``gallery:NAME`` (any gallery entry), ``map:NAME``
(a gallery map) or a path to a JSON file.  A set file holds
``{"pi_units": [[lo, hi], ...]}`` or the bare list; a map file holds a
list of ``{"dom", "e", "m"}`` pieces or a partial map object.

Exit codes: 0 success, 1 a check came out false (the witness is printed),
2 usage or domain error.
"""

from __future__ import annotations

import argparse
import csv
import json
import re
import sys
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence, TextIO

from .correspondence import NotAWaveletSetError, induced_isomorphism, wavelet_set_from_isomorphism
from .frequency import E, FreqSet, FrequencyDomainError, metric_d, tiling_defect, verify_wavelet_set
from .gallery import GALLERY, UnknownEntryError, gallery_get
from .homotopy import WaveletPath
from .intervals import ExponentOverflowError, IntervalSet, format_rational, parse_rational
from .maps import ClassificationError, NotInjectiveError, PartialMap, PiecewiseMap, classify
from .scb import DEFAULT_TOL, ExtensionBudgetError, combine, factorize

EXIT_OK, EXIT_FALSE, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def parse_tol(text: str) -> Fraction:
    """Accept ``p/q``, a decimal, or ``2^-k``."""
    m = re.fullmatch(r"\s*2\^(-?\d+)\s*", text)
    try:
        tol = Fraction(2) ** int(m.group(1)) if m else Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"bad tolerance {text!r}") from None
    if tol <= 0:
        raise argparse.ArgumentTypeError("tolerance must be positive")
    return tol


def parse_grid(text: str) -> list[Fraction]:
    """``N`` means ``0, 1/N, ..., 1``; otherwise a comma separated list of rationals."""
    text = text.strip()
    try:
        if re.fullmatch(r"\d+", text):
            n = int(text)
            if n < 1:
                raise UsageError("grid size must be at least 1")
            return [Fraction(k, n) for k in range(n + 1)]
        return [parse_rational(part.strip()) for part in text.split(",")]
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"bad t-grid {text!r}") from None


def _load_json(path: str):
    p = Path(path)
    if not p.is_file():
        raise UsageError(f"no such file or gallery reference: {path!r}")
    try:
        return json.loads(p.read_text())
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: invalid JSON ({exc})") from None


def resolve_set(ref: str) -> FreqSet:
    if ref.startswith("gallery:"):
        entry = gallery_get(ref.split(":", 1)[1])
        if entry.kind != "wavelet_set":
            raise UsageError(f"{ref} is a map, not a set")
        return entry.value
    data = _load_json(ref)
    if isinstance(data, dict):
        return FreqSet.from_json(data)
    return FreqSet(IntervalSet.from_json(data))


def resolve_map(ref: str):
    if ref.startswith(("gallery:", "map:")):
        entry = gallery_get(ref.split(":", 1)[1])
        if entry.kind != "unit_map":
            raise UsageError(f"{ref} is a set, not a map")
        return entry.value
    data = _load_json(ref)
    if isinstance(data, dict):
        return PartialMap.from_json(data)
    return PiecewiseMap.from_json(data)


def _emit(obj, out: TextIO) -> None:
    json.dump(obj, out, indent=2)
    out.write("\n")


# -- commands -----------------------------------------------------------------


def cmd_verify(args, out) -> int:
    cert = verify_wavelet_set(resolve_set(args.set))
    _emit(cert.to_json(), out)
    return EXIT_OK if cert.ok else EXIT_FALSE


def cmd_induce(args, out) -> int:
    try:
        h = induced_isomorphism(resolve_set(args.set))
    except NotAWaveletSetError as exc:
        _emit(exc.certificate.to_json(), out)
        return EXIT_FALSE
    _emit({"map": h.to_json(), "branches": len(h.branches())}, out)
    return EXIT_OK


def cmd_synthesize(args, out) -> int:
    h = resolve_map(args.map)
    c = classify(h)
    if not c.in_WI:
        _emit({"ok": False, "classification": c._asdict()}, out)
        return EXIT_FALSE
    w = wavelet_set_from_isomorphism(h, strict=not isinstance(h, PartialMap))
    _emit({"ok": True, "set": w.to_json()}, out)
    return EXIT_OK


def cmd_combine(args, out) -> int:
    pm, trace = combine(resolve_map(args.u), resolve_map(args.v), args.tol, depth=args.depth)
    w = wavelet_set_from_isomorphism(pm, strict=False)
    _emit(
        {
            "map": pm.to_json(),
            "trace": trace.to_json(),
            "set": w.to_json(),
            "tiling_defect": format_rational(tiling_defect(w)),
        },
        out,
    )
    return EXIT_OK


def cmd_factorize(args, out) -> int:
    fz = factorize(resolve_map(args.map), args.tol)
    _emit({"u": fz.u.to_json(), "v": fz.v.to_json(), "d1": fz.d1.to_json()}, out)
    return EXIT_OK


def cmd_metric(args, out) -> int:
    d = metric_d(resolve_set(args.a), resolve_set(args.b))
    _emit({"d": d}, out)
    return EXIT_OK


PATH_COLUMNS = ["t", "interval_count", "tiling_defect", "d_to_start", "d_to_E"]


def cmd_path(args, out) -> int:
    grid = parse_grid(args.grid)
    for t in grid:
        if not 0 <= t <= 1:
            raise UsageError(f"t = {t} outside [0,1]")
    path = WaveletPath(resolve_set(args.set), args.tol, max_stage=args.depth)
    rows = []
    for t in grid:
        pt = path.at(t)
        rows.append(
            {
                "t": format_rational(t),
                "interval_count": len(pt.wavelet_set),
                "tiling_defect": float(pt.defect),
                "d_to_start": metric_d(pt.wavelet_set, path.start),
                "d_to_E": metric_d(pt.wavelet_set, E),
            }
        )
    if args.format == "csv":
        writer = csv.DictWriter(out, fieldnames=PATH_COLUMNS, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
    else:
        _emit(rows, out)
    return EXIT_OK


def cmd_gallery(args, out) -> int:
    if args.action == "list":
        if args.format == "csv":
            writer = csv.writer(out, lineterminator="\n")
            writer.writerow(["name", "kind", "provenance"])
            for e in GALLERY.values():
                writer.writerow([e.name, e.kind, e.provenance])
        else:
            _emit([{"name": e.name, "kind": e.kind, "provenance": e.provenance} for e in GALLERY.values()], out)
        return EXIT_OK
    if not args.name:
        raise UsageError("gallery get needs a NAME")
    _emit(gallery_get(args.name).to_json(), out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=parse_tol, default=DEFAULT_TOL, help="residual tolerance (default 2^-40)")
    common.add_argument("--depth", type=int, default=32, help="orbit levels for combine, chain stages for path (default 32)")
    common.add_argument("--format", choices=["json", "csv"], default="json")

    parser = argparse.ArgumentParser(prog="wavesets", description="Exact computations with one-dimensional wavelet sets.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_, *positionals):
        p = sub.add_parser(name, parents=[common], help=help_)
        for pos in positionals:
            p.add_argument(pos)
        p.set_defaults(func=func)
        return p

    add("verify", cmd_verify, "check the translation and dilation tilings", "set")
    add("induce", cmd_induce, "induced map of [0,1) for a wavelet set", "set")
    add("synthesize", cmd_synthesize, "wavelet set of a wavelet induced map", "map")
    add("combine", cmd_combine, "combine a WI1 map u and a WI2 map v", "u", "v")
    add("factorize", cmd_factorize, "split a wavelet induced map into WI1 and WI2 factors", "map")
    add("metric", cmd_metric, "distance between two wavelet sets", "a", "b")
    add("path", cmd_path, "sample the path from a wavelet set to E", "set", "grid")
    g = add("gallery", cmd_gallery, "list or show built-in examples", "action")
    g.add_argument("name", nargs="?")
    return parser


def main(argv: Optional[Sequence[str]] = None, out: TextIO = None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    if args.command == "gallery" and args.action not in ("list", "get"):
        print(f"wavesets: gallery action must be list or get, not {args.action!r}", file=sys.stderr)
        return EXIT_USAGE
    if args.format == "csv" and args.command not in ("path", "gallery"):
        print("wavesets: csv output is only available for path and gallery list", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args, out)
    except (
        UsageError,
        UnknownEntryError,
        FrequencyDomainError,
        ClassificationError,
        NotInjectiveError,
        ExponentOverflowError,
        ExtensionBudgetError,
        NotImplementedError,
        ValueError,
        KeyError,
    ) as exc:
        print(f"wavesets: {exc}", file=sys.stderr)
        return EXIT_USAGE

