"""Stateful inclusion facade: one :class:`Engine` per "document".

Like the TeX registers it stands in for, a width or height request is
consumed by the next inclusion and then reset to unset, so a constraint
never leaks into the figure after the one it was meant for.
"""

from __future__ import annotations

import os
import sys
import warnings
from dataclasses import dataclass, field, replace
from typing import BinaryIO, Optional

from .dscscan import (
    DEFAULT_BBOX,
    BoundingBox,
    ScanError,
    ScanResult,
    scan_bounding_box,
    scan_file,
    split_box_argument,
)
from .fixdim import ZERO, Dim, dim_from_literal
from .sizing import (
    FrameSpec,
    LayoutNode,
    LayoutOptions,
    NaturalSize,
    ResolvedSize,
    SizeRequest,
    SizingPolicy,
    default_policy,
    layout_graph,
    natural_size,
    resolve_size,
)
from .specialemit import ClipMode, SpecialRequest, emit_special, emit_status


@dataclass
class Config:
    draft: bool = False
    clip: bool = False
    verbose: bool = False
    show: bool = True
    show_filename: bool = False
    frame: bool = False
    frame_margin: Dim = ZERO
    frame_thickness: Dim = dim_from_literal("0.4pt")
    width: Dim = ZERO
    height: Dim = ZERO
    policy: SizingPolicy = default_policy
    bbox_override: Optional[BoundingBox] = None
    output: str = "text"
    tex_style_log: bool = False

    @property
    def frame_spec(self) -> FrameSpec:
        return FrameSpec(self.frame_margin, self.frame_thickness)


@dataclass
class Inclusion:
    filename: str
    bbox: BoundingBox
    natural: NaturalSize
    resolved: ResolvedSize
    special: str
    status: tuple[str, str]
    layout: LayoutNode
    scan: Optional[ScanResult] = None
    error: Optional[str] = None
    diagnostics: list[str] = field(default_factory=list)


class Engine:
    """Place figures one after another with epsf.tex register semantics.

    ``log`` collects what TeX would have written to the terminal; it only
    receives scan diagnostics and status lines when ``config.verbose``.
    """

    def __init__(self, config: Optional[Config] = None):
        self.config = config or Config()
        self.request = SizeRequest(self.config.width, self.config.height, self.config.policy)
        self.log: list[str] = []

    def set_size(self, width: Dim = ZERO, height: Dim = ZERO) -> None:
        self.request = replace(self.request, want_x=width, want_y=height)

    def include(self, arg: str, stream: Optional[BinaryIO] = None) -> Inclusion:
        """Place one figure.

        ``arg`` is a filename, optionally prefixed by a literal box as in
        ``"[0 0 100 100]fig.eps"``; a literal box (or ``config.bbox_override``)
        means the file is never opened.  ``"-"`` reads standard input unless
        ``stream`` is given.
        """
        cfg = self.config
        literal, filename = split_box_argument(arg)
        literal = literal or cfg.bbox_override
        scan = error = None
        diagnostics: list[str] = []
        tex_log = cfg.verbose and cfg.tex_style_log
        try:
            with warnings.catch_warnings(record=True) as caught:
                warnings.simplefilter("always")
                if literal is not None:
                    bbox = literal
                else:
                    if tex_log:
                        self.log.append(f"({filename}")
                    try:
                        scan = self._scan(filename, stream)
                        bbox = scan.bbox
                        diagnostics.extend(scan.diagnostics)
                    except ScanError as exc:
                        error = str(exc)
                        bbox = DEFAULT_BBOX
                        self.log.append(error)
                    if cfg.verbose:
                        self.log.extend(diagnostics)
                nat = natural_size(bbox)
                diagnostics.extend(nat.diagnostics)
                resolved = resolve_size(nat, self.request)
                status = emit_status(filename, bbox, resolved)
                if cfg.verbose:
                    self.log.extend(status)
                if tex_log and literal is None:
                    self.log.append(")")
                special = emit_special(SpecialRequest(
                    filename, bbox, resolved, cfg.draft,
                    ClipMode.ON if cfg.clip else ClipMode.OFF))
                layout, _ = layout_graph(resolved, LayoutOptions(
                    cfg.show, cfg.show_filename, cfg.frame, cfg.frame_spec, filename),
                    payload=special)
            diagnostics.extend(str(w.message) for w in caught)
        finally:
            self.request = replace(self.request, want_x=ZERO, want_y=ZERO)
        return Inclusion(filename, bbox, nat, resolved, special, status, layout,
                         scan, error, diagnostics)

    @staticmethod
    def _scan(filename: str, stream: Optional[BinaryIO]) -> ScanResult:
        if stream is not None:
            return scan_bounding_box(stream, filename)
        if filename == "-":
            return scan_bounding_box(sys.stdin.buffer, filename)
        return scan_file(os.fspath(filename))
