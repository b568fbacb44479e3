"""Figure size resolution, frame geometry and box layout.

``scale_to_fit`` is the heart of it: epsf.tex computes ``avail * num / den``
without ever forming the product, using one truncating quotient and then a
bit-at-a-time long division that halves ``avail`` on each step.  The
result is reproduced here operation for operation.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field, replace
from decimal import Decimal
from typing import Callable, Optional, Union

from .dscscan import BoundingBox
from .fixdim import (
    MAX_DIMEN,
    PSPOINTS,
    ZERO,
    Dim,
    DimensionError,
    check,
    dim_from_literal,
    dim_mul,
    dim_ratio,
    dim_scale_decimal,
)


class FidelityWarning(UserWarning):
    """Input where TeX itself would have overflowed or misbehaved."""


class SizingError(DimensionError):
    """Sizes cannot be resolved, e.g. scaling by a zero natural dimension."""


SizingPolicy = Callable[[Dim, Dim, "SizeRequest"], Dim]


def default_policy(natural_w: Dim, natural_h: Dim, req: SizeRequest) -> Dim:
    return req.want_x


def natural_width_policy(natural_w: Dim, natural_h: Dim, req: SizeRequest) -> Dim:
    return natural_w


def scale_policy(factor: Union[str, Decimal]) -> SizingPolicy:
    """Policy that asks for ``factor`` times the natural width."""

    def policy(natural_w: Dim, natural_h: Dim, req: SizeRequest) -> Dim:
        return dim_scale_decimal(natural_w, factor)

    policy.__name__ = f"scale:{factor}"
    return policy


def policy_from_name(name: str) -> SizingPolicy:
    if name == "default":
        return default_policy
    if name == "natural-width":
        return natural_width_policy
    if name.startswith("scale:"):
        factor = name[len("scale:"):]
        dim_scale_decimal(ZERO, factor)  # validate early
        return scale_policy(factor)
    raise ValueError(f"unknown sizing policy {name!r}; "
                     "expected default, natural-width or scale:<decimal>")


@dataclass(frozen=True)
class SizeRequest:
    want_x: Dim = ZERO
    want_y: Dim = ZERO
    policy: SizingPolicy = default_policy

    def __post_init__(self):
        if self.want_x.sp < 0 or self.want_y.sp < 0:
            raise SizingError("requested width and height must be non-negative")


@dataclass(frozen=True)
class NaturalSize:
    tsize: Dim
    rsize: Dim
    diagnostics: tuple[str, ...] = ()


@dataclass(frozen=True)
class ResolvedSize:
    width: Dim
    height: Dim
    rhi_needed: bool = False


def natural_size(bbox: BoundingBox) -> NaturalSize:
    llx, lly, urx, ury = (dim_scale_decimal(PSPOINTS, t) for t in bbox.tokens())
    tsize = check(urx - llx, "natural width")
    rsize = check(ury - lly, "natural height")
    notes = []
    if tsize.sp < 0:
        notes.append(f"negative natural width {tsize} (urx < llx)")
    if rsize.sp < 0:
        notes.append(f"negative natural height {rsize} (ury < lly)")
    return NaturalSize(tsize, rsize, tuple(notes))


def scale_to_fit(avail: Dim, num: Dim, den: Dim) -> Dim:
    """Return ``avail * num / den`` by epsf.tex's overflow-avoiding division."""
    if den.sp == 0:
        raise SizingError("cannot scale against a zero natural dimension")
    q = dim_ratio(num, den)
    acc = dim_mul(avail, q)
    rem = num.sp - q * den.sp
    tmp = avail.sp
    warned = False
    while True:
        rem += rem
        if not warned and abs(rem) > MAX_DIMEN:
            warnings.warn(FidelityWarning(
                f"intermediate {rem}sp exceeds {MAX_DIMEN}sp; TeX would overflow here"),
                stacklevel=2)
            warned = True
        tmp = -(-tmp // 2) if tmp < 0 else tmp // 2
        if tmp == 0:
            break
        if rem >= den.sp:
            rem -= den.sp
            acc = check(acc + Dim(tmp), "scaled size")
    return acc


def resolve_size(nat: NaturalSize, req: SizeRequest) -> ResolvedSize:
    x = req.policy(nat.tsize, nat.rsize, req)
    y = req.want_y
    if not x:
        if not y:
            return ResolvedSize(nat.tsize, nat.rsize, False)
        return ResolvedSize(scale_to_fit(y, nat.tsize, nat.rsize), y, False)
    if not y:
        return ResolvedSize(x, scale_to_fit(x, nat.rsize, nat.tsize), False)
    return ResolvedSize(x, y, True)


@dataclass(frozen=True)
class FrameSpec:
    margin: Dim = ZERO
    thickness: Dim = dim_from_literal("0.4pt")


@dataclass(frozen=True)
class FrameBox:
    outer_w: Dim
    outer_h: Dim
    content_offset_x: Dim
    content_offset_y: Dim


def frame_geometry(content_w: Dim, content_h: Dim, spec: FrameSpec = FrameSpec()) -> FrameBox:
    border = dim_mul(spec.margin, 2) + dim_mul(spec.thickness, 2)
    offset = spec.margin + spec.thickness
    return FrameBox(
        check(content_w + border, "framed width"),
        check(content_h + border, "framed height"),
        offset,
        offset,
    )


LABEL_MARGIN = dim_from_literal("3pt")


@dataclass
class LayoutNode:
    """A box in the placement tree.

    ``kind`` is one of ``figure`` (carries the special payload),
    ``placeholder`` (hidden figure), ``label`` (a filename whose text
    extent is unknown here and so is measured as zero) or ``frame``.
    """

    kind: str
    width: Dim
    height: Dim
    payload: Optional[str] = None
    label: Optional[str] = None
    offset_x: Dim = ZERO
    offset_y: Dim = ZERO
    children: list[LayoutNode] = field(default_factory=list)

    def to_dict(self) -> dict:
        d = {"kind": self.kind, "width_sp": self.width.sp, "height_sp": self.height.sp}
        if self.payload is not None:
            d["payload"] = self.payload
        if self.label is not None:
            d["label"] = self.label
        if self.kind == "frame":
            d["offset_x_sp"] = self.offset_x.sp
            d["offset_y_sp"] = self.offset_y.sp
        if self.children:
            d["children"] = [c.to_dict() for c in self.children]
        return d


@dataclass(frozen=True)
class LayoutOptions:
    show: bool = True
    show_filename: bool = False
    frame: bool = False
    frame_spec: FrameSpec = FrameSpec()
    filename: str = ""


def _framed(node: LayoutNode, spec: FrameSpec) -> LayoutNode:
    box = frame_geometry(node.width, node.height, spec)
    return LayoutNode("frame", box.outer_w, box.outer_h,
                      offset_x=box.content_offset_x, offset_y=box.content_offset_y,
                      children=[node])


def layout_graph(resolved: ResolvedSize, opts: LayoutOptions = LayoutOptions(),
                 payload: Optional[str] = None) -> tuple[LayoutNode, SizeRequest]:
    """Build the box tree for one placed figure.

    Also returns the size request left behind afterwards, which is always
    unset: constraints apply to a single inclusion only.
    """
    if opts.show:
        node = LayoutNode("figure", resolved.width, resolved.height, payload=payload)
    else:
        node = LayoutNode("placeholder", resolved.width, resolved.height)
        if opts.show_filename:
            label = LayoutNode("label", ZERO, ZERO, label=opts.filename)
            node.children.append(
                _framed(label, replace(opts.frame_spec, margin=LABEL_MARGIN)))
    if opts.frame:
        node = _framed(node, opts.frame_spec)
    return node, SizeRequest()
