"""Command line interface: ``epsfkit bbox|size|special|frame|batch``.

Reports go to stdout (text or JSON), diagnostics to stderr.  Exit codes:
0 all boxes found, 1 a box was defaulted or left unresolved, 2 a file could
not be read, 3 sizes could not be resolved.
"""

from __future__ import annotations

import argparse
import glob
import json
import os
import sys
from typing import Iterable, Optional, TextIO

from . import __version__
from .dscscan import MalformedBoundingBox, ScanError, ScanResult, Source, parse_literal_bbox, scan_bounding_box, scan_file
from .engine import Config, Engine, Inclusion
from .fixdim import Dim, DimensionError, dim_from_literal, print_scaled
from .sizing import SizingError, policy_from_name

SCHEMA = 1

EXIT_OK = 0
EXIT_DEFAULTED = 1
EXIT_IO = 2
EXIT_SIZING = 3


def _dimension(text: str) -> Dim:
    try:
        return dim_from_literal(text)
    except DimensionError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _bbox(text: str):
    try:
        return parse_literal_bbox(text if text.strip().startswith("[") else f"[{text}]")
    except MalformedBoundingBox as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _policy(text: str):
    try:
        return policy_from_name(text)
    except (ValueError, DimensionError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", dest="output", action="store_const", const="json",
                        default="text", help="machine-readable output")
    common.add_argument("-v", "--verbose", action="store_true",
                        help="report diagnostics and sizes on stderr (or EPSFKIT_VERBOSE=1)")
    common.add_argument("--tex-style-log", action="store_true",
                        help="with --verbose, wrap each scan in '(file' ... ')' markers")

    sizing = argparse.ArgumentParser(add_help=False)
    sizing.add_argument("--width", type=_dimension, default=Dim(0), metavar="DIMEN",
                        help="requested width of the next figure, e.g. 3in")
    sizing.add_argument("--height", type=_dimension, default=Dim(0), metavar="DIMEN",
                        help="requested height of the next figure")
    sizing.add_argument("--policy", type=_policy, default=None,
                        metavar="default|natural-width|scale:X")
    sizing.add_argument("--bbox", type=_bbox, default=None, metavar='"LLX LLY URX URY"',
                        help="use this bounding box; files are not read")
    sizing.add_argument("--draft", action="store_true", help="emit psdraft.ps instead of the figure")
    sizing.add_argument("--clip", action="store_true", help="clip to the bounding box")
    sizing.add_argument("--hide", dest="show", action="store_false",
                        help="leave blank space instead of the figure")
    sizing.add_argument("--show-filename", action="store_true",
                        help="with --hide, put a framed filename in the blank space")
    sizing.add_argument("--frame", action="store_true", help="draw a frame around the figure")
    sizing.add_argument("--frame-margin", type=_dimension, default=Dim(0), metavar="DIMEN")
    sizing.add_argument("--frame-thickness", type=_dimension,
                        default=dim_from_literal("0.4pt"), metavar="DIMEN")

    parser = argparse.ArgumentParser(prog="epsfkit", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bbox", parents=[common], help="scan files for %%%%BoundingBox")
    p.add_argument("files", nargs="+")

    per_file = ("Size constraints apply to the first file only; later files "
                "get their natural size, as in a document.")
    for name, text in (("size", "resolve figure sizes"),
                       ("special", "print the dvips special"),
                       ("frame", "print the placed box geometry")):
        p = sub.add_parser(name, parents=[common, sizing], help=text, description=per_file)
        p.add_argument("files", nargs="+")

    p = sub.add_parser("batch", parents=[common, sizing],
                       help="scan and size every file in a manifest (JSON lines)",
                       description="Constraints apply to every listed file.")
    p.add_argument("manifest", help="file with one path or glob per line; - for stdin")
    return parser


def config_from_args(args: argparse.Namespace, environ=os.environ) -> Config:
    cfg = Config(verbose=args.verbose or environ.get("EPSFKIT_VERBOSE") == "1",
                 output=args.output, tex_style_log=args.tex_style_log)
    if hasattr(args, "width"):
        cfg.width, cfg.height = args.width, args.height
        if args.policy is not None:
            cfg.policy = args.policy
        cfg.bbox_override = args.bbox
        cfg.draft, cfg.clip = args.draft, args.clip
        cfg.show, cfg.show_filename, cfg.frame = args.show, args.show_filename, args.frame
        cfg.frame_margin, cfg.frame_thickness = args.frame_margin, args.frame_thickness
    return cfg


def _dump(obj, out: TextIO) -> None:
    out.write(json.dumps(obj) + "\n")


def scan_record(result: ScanResult, name: str) -> dict:
    b = result.bbox
    return {"file": name, "llx": b.llx, "lly": b.lly, "urx": b.urx, "ury": b.ury,
            "source": result.source.value, "atend_seen": result.atend_seen,
            "lines_read": result.lines_read, "diagnostics": list(result.diagnostics)}


def size_record(inc: Inclusion) -> dict:
    r = inc.resolved
    return {"file": inc.filename,
            "width_sp": r.width.sp, "height_sp": r.height.sp,
            "width_pt": print_scaled(r.width), "height_pt": print_scaled(r.height),
            "rhi_needed": r.rhi_needed}


def _scan_exit(result: ScanResult) -> int:
    return EXIT_OK if result.source is Source.FOUND else EXIT_DEFAULTED


def cmd_bbox(files: list[str], cfg: Config, out: TextIO, err: TextIO) -> int:
    status = EXIT_OK
    records = []
    for name in files:
        try:
            result = scan_bounding_box(sys.stdin.buffer, name) if name == "-" else scan_file(name)
        except ScanError as exc:
            err.write(f"{exc}\n")
            records.append({"file": name, "error": str(exc)})
            status = max(status, EXIT_IO)
            continue
        if cfg.verbose:
            for line in result.diagnostics:
                err.write(line + "\n")
        status = max(status, _scan_exit(result))
        records.append(scan_record(result, name))
        if cfg.output == "text":
            out.write(f"{name}: {result.bbox} ({result.source.value})\n")
    if cfg.output == "json":
        _dump({"schema": SCHEMA, "command": "bbox", "records": records}, out)
    return status


def _text_line(command: str, inc: Inclusion) -> str:
    r = inc.resolved
    if command == "special":
        return inc.special
    if command == "size":
        return (f"{inc.filename}: width = {print_scaled(r.width)}pt ({r.width.sp}sp) "
                f"height = {print_scaled(r.height)}pt ({r.height.sp}sp) "
                f"rhi_needed = {str(r.rhi_needed).lower()}")
    node = inc.layout
    return (f"{inc.filename}: {node.kind} {print_scaled(node.width)}pt x "
            f"{print_scaled(node.height)}pt ({node.width.sp}sp x {node.height.sp}sp)")


def _json_record(command: str, inc: Inclusion) -> dict:
    if command == "special":
        return {"file": inc.filename, "special": inc.special}
    if command == "size":
        return size_record(inc)
    return {"file": inc.filename, "layout": inc.layout.to_dict()}


def cmd_include(command: str, files: list[str], cfg: Config, out: TextIO, err: TextIO,
                engine: Optional[Engine] = None) -> int:
    """Shared driver for size, special and frame: one engine for all files."""
    engine = engine or Engine(cfg)
    status = EXIT_OK
    records = []
    for name in files:
        logged = len(engine.log)
        try:
            inc = engine.include(name)
        except SizingError as exc:
            err.write(f"{name}: {exc}\n")
            records.append({"file": name, "error": str(exc)})
            status = max(status, EXIT_SIZING)
            continue
        finally:
            for line in engine.log[logged:]:
                err.write(line + "\n")
        if inc.error:
            records.append({"file": name, "error": inc.error})
            status = max(status, EXIT_IO)
            continue
        if cfg.verbose:
            for line in inc.diagnostics:
                if line not in engine.log[logged:]:
                    err.write(line + "\n")
        if cfg.output == "json":
            records.append(_json_record(command, inc))
        else:
            out.write(_text_line(command, inc) + "\n")
    if cfg.output == "json":
        _dump({"schema": SCHEMA, "command": command, "records": records}, out)
    return status


def read_manifest(lines: Iterable[str], base: str = ".") -> list[str]:
    """Expand a manifest into paths, in order; blank lines and #-comments skip."""
    paths: list[str] = []
    for raw in lines:
        entry = raw.strip()
        if not entry or entry.startswith("#"):
            continue
        full = entry if os.path.isabs(entry) else os.path.join(base, entry)
        if os.path.isdir(full):
            paths.extend(sorted(glob.glob(os.path.join(full, "*.eps"))))
        elif glob.has_magic(entry):
            paths.extend(sorted(glob.glob(full)))
        else:
            paths.append(full)
    return paths


def batch_record(path: str, cfg: Config) -> tuple[dict, int]:
    engine = Engine(cfg)
    try:
        inc = engine.include(path)
    except SizingError as exc:
        return {"file": path, "error": str(exc), "exit": EXIT_SIZING}, EXIT_SIZING
    if inc.error:
        return {"file": path, "error": inc.error, "exit": EXIT_IO}, EXIT_IO
    if inc.scan is not None:
        rec = scan_record(inc.scan, path)
        code = _scan_exit(inc.scan)
    else:
        b = inc.bbox
        rec = {"file": path, "llx": b.llx, "lly": b.lly, "urx": b.urx, "ury": b.ury,
               "source": "literal", "diagnostics": []}
        code = EXIT_OK
    rec["diagnostics"] = list(inc.diagnostics)
    rec.update(size_record(inc))
    rec["special"] = inc.special
    rec["exit"] = code
    return rec, code


def cmd_batch(manifest: str, cfg: Config, out: TextIO, err: TextIO) -> int:
    try:
        if manifest == "-":
            paths = read_manifest(sys.stdin)
        else:
            with open(manifest, encoding="utf-8") as fh:
                paths = read_manifest(fh, os.path.dirname(manifest) or ".")
    except OSError as exc:
        err.write(f"Could not open file {manifest}, ignoring it ({exc.strerror})\n")
        return EXIT_IO
    status = EXIT_OK
    summary = {"total": 0, "found": 0, "defaulted": 0, "deferred_unresolved": 0,
               "literal": 0, "errors": 0}
    for path in paths:
        rec, code = batch_record(path, cfg)
        summary["total"] += 1
        if "error" in rec:
            summary["errors"] += 1
            err.write(rec["error"] + "\n")
        else:
            summary[rec["source"]] += 1
            if cfg.verbose:
                for line in rec["diagnostics"]:
                    err.write(line + "\n")
        status = max(status, code)
        _dump({"schema": SCHEMA, **rec}, out)
    _dump({"schema": SCHEMA, "summary": summary, "exit": status}, out)
    return status


def main(argv: Optional[list[str]] = None, out: TextIO = None, err: TextIO = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    cfg = config_from_args(args)
    if args.command == "bbox":
        return cmd_bbox(args.files, cfg, out, err)
    if args.command == "batch":
        return cmd_batch(args.manifest, cfg, out, err)
    if args.command == "frame":
        cfg.frame = True
    return cmd_include(args.command, args.files, cfg, out, err)


if __name__ == "__main__":
    sys.exit(main())
