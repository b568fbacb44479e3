"""Find the ``%%BoundingBox`` comment of an EPS file.

Lines are read lazily and in order.  A concrete box stops the scan at
once unless an ``(atend)`` marker was seen earlier, in which case reading
goes on to the end and the last concrete box wins.  Files without a box
fall back to the US-letter-with-inch-margins default ``72 72 540 720``.
"""

from __future__ import annotations

import enum
import io
import os
import re
from dataclasses import dataclass, field
from decimal import Decimal
from typing import BinaryIO, Iterable, Iterator, Union

HEADER = "%%BoundingBox:"
ATEND = "(atend)"

# TeX treats space and tab as blanks; \f and \v are harmless to add.
_BLANKS = re.compile(r"[ \t\f\v]+")
_COORD = re.compile(r"-?(?:\d+(?:\.\d*)?|\.\d+)")


class ScanError(OSError):
    """The input could not be opened or read."""


class MalformedBoundingBox(ValueError):
    pass


@dataclass(frozen=True)
class BoundingBox:
    """Four coordinates in big points, kept as the exact tokens scanned."""

    llx: str
    lly: str
    urx: str
    ury: str

    def __post_init__(self):
        for name in ("llx", "lly", "urx", "ury"):
            token = getattr(self, name)
            if not isinstance(token, str):
                object.__setattr__(self, name, token := _coord_token(token))
            if not _COORD.fullmatch(token):
                raise MalformedBoundingBox(f"{name}={token!r} is not a decimal number")

    @classmethod
    def of(cls, llx, lly, urx, ury) -> BoundingBox:
        return cls(*(_coord_token(v) for v in (llx, lly, urx, ury)))

    def tokens(self) -> tuple[str, str, str, str]:
        return (self.llx, self.lly, self.urx, self.ury)

    def values(self) -> tuple[Decimal, Decimal, Decimal, Decimal]:
        return tuple(Decimal(t) for t in self.tokens())

    def __str__(self) -> str:
        return " ".join(self.tokens())


def _coord_token(value) -> str:
    if isinstance(value, Decimal):
        return format(value, "f")
    return str(value)


DEFAULT_BBOX = BoundingBox("72", "72", "540", "720")


class Source(enum.Enum):
    FOUND = "found"
    DEFAULTED = "defaulted"
    DEFERRED_UNRESOLVED = "deferred_unresolved"


@dataclass
class ScanResult:
    bbox: BoundingBox
    source: Source
    atend_seen: bool = False
    lines_read: int = 0
    diagnostics: list[str] = field(default_factory=list)

    @property
    def found(self) -> bool:
        return self.source is Source.FOUND


def parse_bbox_tokens(payload: str) -> Union[BoundingBox, str]:
    """Interpret the text after ``%%BoundingBox:``.

    Returns :data:`ATEND` for a deferred box.  Extra trailing tokens are
    ignored; fewer than four, or a non-number, raise
    :class:`MalformedBoundingBox`.
    """
    tokens = [t for t in _BLANKS.split(payload) if t]
    if tokens and tokens[0] == ATEND:
        return ATEND
    if len(tokens) < 4:
        raise MalformedBoundingBox(f"expected four coordinates, got {len(tokens)}")
    return BoundingBox(*tokens[:4])


def parse_literal_bbox(spec: str) -> BoundingBox:
    """Parse the bracketed override form ``"[llx lly urx ury]"``."""
    text = spec.strip()
    if not (text.startswith("[") and text.endswith("]")):
        raise MalformedBoundingBox(f"literal bounding box must be bracketed: {spec!r}")
    tokens = [t for t in _BLANKS.split(text[1:-1]) if t]
    if len(tokens) != 4:
        raise MalformedBoundingBox(f"literal bounding box needs four numbers: {spec!r}")
    return BoundingBox(*tokens)


def split_box_argument(arg: str) -> tuple[BoundingBox | None, str]:
    """Split an ``\\epsfbox`` argument into (literal bbox or None, filename).

    ``"[0 0 10 10]fig.eps"`` carries its own box and the file is never read.
    """
    arg = arg.strip()
    if not arg.startswith("["):
        return None, arg
    close = arg.find("]")
    if close < 0:
        raise MalformedBoundingBox(f"unterminated literal bounding box: {arg!r}")
    return parse_literal_bbox(arg[: close + 1]), arg[close + 1:].strip()


def iter_lines(stream: BinaryIO) -> Iterator[str]:
    """Yield lines from a byte stream, accepting LF, CRLF and bare CR.

    Bytes map one-to-one onto latin-1 characters so binary previews pass
    through harmlessly; only header lines are ever interpreted.
    """
    text = io.TextIOWrapper(stream, encoding="latin-1", newline=None)
    try:
        for line in text:
            yield line.rstrip("\n")
    finally:
        text.detach()


def scan_lines(lines: Iterable[str], name: str = "-") -> ScanResult:
    """Core scanner over already-split lines; pulls no line it does not need."""
    bbox = None
    atend = False
    count = 0
    diagnostics: list[str] = []
    for line in lines:
        count += 1
        if not line.startswith(HEADER):
            continue
        try:
            parsed = parse_bbox_tokens(line[len(HEADER):])
        except MalformedBoundingBox as exc:
            diagnostics.append(
                f"Malformed BoundingBox comment on line {count} of file {name} ({exc}); ignoring it")
            continue
        if parsed == ATEND:
            atend = True
            continue
        bbox = parsed
        if not atend:
            break
    if bbox is not None:
        return ScanResult(bbox, Source.FOUND, atend, count, diagnostics)
    if atend:
        diagnostics.append(
            f"BoundingBox deferred with (atend) but never given in file {name}; using defaults")
        source = Source.DEFERRED_UNRESOLVED
    else:
        diagnostics.append(f"No BoundingBox comment found in file {name}; using defaults")
        source = Source.DEFAULTED
    return ScanResult(DEFAULT_BBOX, source, atend, count, diagnostics)


def scan_bounding_box(stream: BinaryIO, name: str = "-") -> ScanResult:
    try:
        return scan_lines(iter_lines(stream), name)
    except OSError as exc:
        raise ScanError(f"Could not open file {name}, ignoring it") from exc


def scan_file(path: Union[str, os.PathLike]) -> ScanResult:
    name = os.fspath(path)
    try:
        fh = open(path, "rb")
    except OSError as exc:
        raise ScanError(f"Could not open file {name}, ignoring it") from exc
    with fh:
        return scan_bounding_box(fh, name)
