"""Standalone reimplementation of the epsf.tex figure inclusion engine."""

__version__ = "0.1.0"

from .dscscan import (
    DEFAULT_BBOX,
    BoundingBox,
    MalformedBoundingBox,
    ScanError,
    ScanResult,
    Source,
    parse_bbox_tokens,
    parse_literal_bbox,
    scan_bounding_box,
    scan_file,
)
from .engine import Config, Engine, Inclusion
from .fixdim import (
    PSPOINTS,
    Dim,
    DimensionError,
    DimensionOverflow,
    UnknownUnit,
    dim_div_truncate,
    dim_from_literal,
    dim_ratio,
    dim_scale_decimal,
    print_scaled,
)
from .sizing import (
    FidelityWarning,
    FrameSpec,
    ResolvedSize,
    SizeRequest,
    SizingError,
    frame_geometry,
    layout_graph,
    natural_size,
    resolve_size,
    scale_to_fit,
)
from .specialemit import ClipMode, SpecialRequest, emit_special, emit_status
