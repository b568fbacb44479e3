import re
from pathlib import Path

import pytest
from hypothesis import given, strategies as st

from epsfkit.dscscan import DEFAULT_BBOX, BoundingBox
from epsfkit.fixdim import Dim
from epsfkit.sizing import FidelityWarning, ResolvedSize
from epsfkit.specialemit import ClipMode, SpecialRequest, emit_special, emit_status, tenths_of_bp

GOLDEN = Path(__file__).parent / "golden"
GRAMMAR = re.compile(
    r"^PSfile=\S+( (llx|lly|urx|ury)=[-0-9.()]+){4} rwi=[0-9]+( rhi=[0-9]+)?( clip)?$")

NATURAL = ResolvedSize(Dim(30785508), Dim(42626088), False)
BOTH = ResolvedSize(Dim(30785508), Dim(42626088), True)


def golden(name):
    return (GOLDEN / f"{name}.txt").read_text().rstrip("\n")


@pytest.mark.parametrize("name,resolved,draft,clip", [
    ("natural", NATURAL, False, ClipMode.OFF),
    ("draft", NATURAL, True, ClipMode.OFF),
    ("rhi", BOTH, False, ClipMode.OFF),
    ("natural_clipon", NATURAL, False, ClipMode.ON),
    ("draft_clipon", NATURAL, True, ClipMode.ON),
    ("rhi_clipon", BOTH, False, ClipMode.ON),
    ("rhi_draft", BOTH, True, ClipMode.OFF),
])
def test_golden_specials(name, resolved, draft, clip):
    line = emit_special(SpecialRequest("fig.eps", DEFAULT_BBOX, resolved, draft, clip))
    assert line == golden(name)
    assert GRAMMAR.match(line)


def test_rwi_is_integer_oracle():
    assert tenths_of_bp(Dim(30785508)) == 10 * 30785508 // 65781 == 4680
    assert tenths_of_bp(Dim(42626088)) == 6480
    assert tenths_of_bp(Dim(65780)) == 9


def test_bbox_tokens_verbatim():
    bbox = BoundingBox("010", "72.0", "-3", "5.")
    line = emit_special(SpecialRequest("a.eps", bbox, NATURAL))
    assert "llx=010 lly=72.0 urx=-3 ury=5. " in line


def test_wide_width_warns_but_emits():
    big = ResolvedSize(Dim(200_000_000), Dim(1), False)
    with pytest.warns(FidelityWarning):
        line = emit_special(SpecialRequest("a.eps", DEFAULT_BBOX, big))
    assert line.endswith(f"rwi={10 * 200_000_000 // 65781}")


def test_space_in_filename_warns():
    with pytest.warns(FidelityWarning, match="space"):
        emit_special(SpecialRequest("my fig.eps", DEFAULT_BBOX, NATURAL))


def test_status_lines():
    one, two = emit_status("fig.eps", DEFAULT_BBOX, NATURAL)
    assert one == "fig.eps: BoundingBox: llx = 72 lly = 72 urx = 540 ury = 720"
    assert two == "fig.eps: scaled width = 469.74957pt scaled height = 650.42249pt"


def test_status_zero_box():
    _, two = emit_status("z.eps", BoundingBox.of(0, 0, 0, 0), ResolvedSize(Dim(0), Dim(0)))
    assert two.endswith("scaled width = 0.0pt scaled height = 0.0pt")


coords = st.integers(-2000, 2000).map(str)
sizes = st.integers(0, 100_000_000).map(Dim)


@given(st.tuples(coords, coords, coords, coords), sizes, sizes, st.booleans(), st.booleans(),
       st.sampled_from(list(ClipMode)), st.from_regex(r"[A-Za-z0-9_./-]{1,20}", fullmatch=True))
def test_grammar_and_draft_invariance(box, w, h, rhi, draft, clip, name):
    bbox = BoundingBox(*box)
    resolved = ResolvedSize(w, h, rhi)
    line = emit_special(SpecialRequest(name, bbox, resolved, draft, clip))
    assert GRAMMAR.match(line)
    plain = emit_special(SpecialRequest(name, bbox, resolved, False, clip))
    strip = lambda s: s.split(" ", 1)[1].removesuffix(" clip")
    assert strip(line) == strip(plain)


@given(st.integers(0, 50_000_000))
def test_rwi_doubling(w):
    one = tenths_of_bp(Dim(w))
    assert tenths_of_bp(Dim(2 * w)) in (2 * one, 2 * one + 1)
