"""dvips ``PSfile`` specials and verbose status lines."""

from __future__ import annotations

import enum
import warnings
from dataclasses import dataclass

from .dscscan import BoundingBox
from .fixdim import MAX_DIMEN, PSPOINTS, Dim, dim_ratio, print_scaled
from .sizing import FidelityWarning, ResolvedSize

DRAFT_FILE = "psdraft.ps"


class ClipMode(enum.Enum):
    ON = "on"
    OFF = "off"


@dataclass(frozen=True)
class SpecialRequest:
    filename: str
    bbox: BoundingBox
    resolved: ResolvedSize
    draft: bool = False
    clip_mode: ClipMode = ClipMode.OFF


def tenths_of_bp(d: Dim) -> int:
    """``10 * d`` divided by one big point, truncated."""
    ten = Dim(10 * d.sp)
    if abs(ten.sp) > MAX_DIMEN:
        warnings.warn(FidelityWarning(
            f"10 x {print_scaled(d)}pt exceeds TeX's largest dimension; "
            "TeX would stop with an arithmetic overflow"), stacklevel=3)
    return dim_ratio(ten, PSPOINTS)


def emit_special(req: SpecialRequest) -> str:
    if " " in req.filename:
        warnings.warn(FidelityWarning(
            f"filename {req.filename!r} contains a space; dvips will misread the special"),
            stacklevel=2)
    name = DRAFT_FILE if req.draft else req.filename
    b = req.bbox
    parts = [f"PSfile={name}", f"llx={b.llx}", f"lly={b.lly}",
             f"urx={b.urx}", f"ury={b.ury}", f"rwi={tenths_of_bp(req.resolved.width)}"]
    if req.resolved.rhi_needed:
        parts.append(f"rhi={tenths_of_bp(req.resolved.height)}")
    if req.clip_mode is ClipMode.ON or req.draft:
        parts.append("clip")
    return " ".join(parts)


def emit_status(filename: str, bbox: BoundingBox, resolved: ResolvedSize) -> tuple[str, str]:
    return (
        f"{filename}: BoundingBox: llx = {bbox.llx} lly = {bbox.lly} "
        f"urx = {bbox.urx} ury = {bbox.ury}",
        f"{filename}: scaled width = {print_scaled(resolved.width)}pt "
        f"scaled height = {print_scaled(resolved.height)}pt",
    )
