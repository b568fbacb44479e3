import io

import pytest

from epsfkit import dscscan
from epsfkit.engine import Config, Engine
from epsfkit.fixdim import Dim, dim_from_literal
from epsfkit.sizing import SizingError, natural_width_policy

EPS = b"%!PS-Adobe-3.0 EPSF-3.0\n%%BoundingBox: 72 72 540 720\n"


@pytest.fixture
def fig(tmp_path):
    path = tmp_path / "fig.eps"
    path.write_bytes(EPS)
    return str(path)


def test_config_defaults_match_register_initialisation():
    cfg = Config()
    table = {
        "show": True, "draft": False, "clip": False, "verbose": False,
        "show_filename": False, "frame": False,
        "frame_margin": Dim(0), "frame_thickness": Dim(26214),
        "width": Dim(0), "height": Dim(0), "bbox_override": None,
    }
    for field, value in table.items():
        assert getattr(cfg, field) == value, field


def test_natural_inclusion(fig):
    inc = Engine().include(fig)
    assert inc.resolved.width == Dim(30785508)
    assert inc.special == f"PSfile={fig} llx=72 lly=72 urx=540 ury=720 rwi=4680"
    assert inc.scan.lines_read == 2


def test_width_request_is_consumed_by_one_inclusion(fig):
    engine = Engine(Config(width=dim_from_literal("234bp")))
    first = engine.include(fig)
    second = engine.include(fig)
    assert first.resolved.width == dim_from_literal("234bp")
    assert second.resolved.width == Dim(30785508)
    assert second.resolved.height == Dim(42626088)
    assert engine.request.want_x == Dim(0)


def test_reset_also_after_sizing_error(tmp_path, fig):
    flat = tmp_path / "flat.eps"
    flat.write_bytes(b"%%BoundingBox: 0 0 0 100\n")
    engine = Engine()
    engine.set_size(width=Dim(1000))
    with pytest.raises(SizingError):
        engine.include(str(flat))
    assert engine.include(fig).resolved.width == Dim(30785508)


def test_policy_survives_reset(fig):
    engine = Engine(Config(policy=natural_width_policy))
    engine.include(fig)
    assert engine.request.policy is natural_width_policy


def test_literal_bbox_never_opens_file(monkeypatch):
    def boom(*a, **k):
        raise AssertionError("file was read")

    monkeypatch.setattr(dscscan, "scan_file", boom)
    monkeypatch.setattr("epsfkit.engine.scan_file", boom)
    inc = Engine().include("[0 0 100 100]missing.eps")
    assert inc.scan is None
    assert inc.special == "PSfile=missing.eps llx=0 lly=0 urx=100 ury=100 rwi=1000"


def test_missing_file_falls_back_to_defaults(tmp_path):
    engine = Engine()
    inc = engine.include(str(tmp_path / "gone.eps"))
    assert inc.error.startswith("Could not open file")
    assert inc.bbox == dscscan.DEFAULT_BBOX
    assert engine.log == [inc.error]


def test_verbose_log(fig):
    engine = Engine(Config(verbose=True, tex_style_log=True))
    engine.include(fig)
    assert engine.log[0] == f"({fig}"
    assert engine.log[1].endswith("BoundingBox: llx = 72 lly = 72 urx = 540 ury = 720")
    assert engine.log[2].endswith("scaled width = 469.74957pt scaled height = 650.42249pt")
    assert engine.log[3] == ")"


def test_quiet_log_has_no_diagnostics(tmp_path):
    path = tmp_path / "nobox.eps"
    path.write_bytes(b"%!PS\n")
    engine = Engine()
    inc = engine.include(str(path))
    assert engine.log == []
    assert inc.diagnostics and "No BoundingBox comment found" in inc.diagnostics[0]


def test_stream_input():
    inc = Engine().include("-", stream=io.BytesIO(EPS))
    assert inc.special.startswith("PSfile=- llx=72")


def test_warnings_become_diagnostics():
    inc = Engine().include("[0 0 2000 10]big fig.eps")
    assert any("space" in d for d in inc.diagnostics)
    assert any("overflow" in d for d in inc.diagnostics)
