import io
import json
import xml.etree.ElementTree as ET

import pytest

from prudent.cli import main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def body(text):
    return [ln for ln in text.splitlines() if not ln.startswith("# ")]


@pytest.mark.parametrize("cls,order,expected", [
    ("pp2", 10, "0,0,4,6,12,28,72,196,552,1590,4656"),
    ("pp3", 5, "0,0,6,10,24,66"),
    ("one-sided", 5, "0,0,1,1,1,1"),
])
def test_series_csv(cls, order, expected):
    code, text = run("series", "--class", cls, "--order", str(order), "--format", "csv")
    assert code == 0
    assert body(text) == [expected]
    assert text.startswith("# ")


def test_series_json_has_metadata():
    code, text = run("series", "--class", "bargraph", "--order", "6", "--format", "json")
    doc = json.loads(text)
    assert doc["coefficients"] == [0, 0, 1, 2, 5, 13, 35]
    assert doc["metadata"]["config"]["order"] == 6


def test_series_text_one_per_line():
    code, text = run("series", "--class", "pp-all", "--order", "4")
    assert body(text) == ["0", "0", "8", "16", "48"]


def test_series_identical_runs():
    assert run("series", "--class", "R", "--order", "8") == run("series", "--class", "R", "--order", "8")


def test_bad_class_is_usage_error():
    with pytest.raises(SystemExit) as exc:
        run("series", "--class", "pp5", "--order", "3")
    assert exc.value.code == 2


def test_order_above_cap():
    with pytest.raises(SystemExit) as exc:
        run("series", "--class", "pp-all", "--order", "1000")
    assert exc.value.code == 2


def test_asym_rho_json():
    code, text = run("asym", "--which", "rho", "--format", "json")
    doc = json.loads(text)
    rec = doc["constants"][0]
    assert abs(rec["value"] - 0.2955977) < 1e-6


def test_asym_sigma_n_text():
    code, text = run("asym", "--which", "sigma-n", "--n", "3")
    assert code == 0 and "sigma_3" in text


def test_asym_growth():
    code, text = run("asym", "--which", "growth", "--class", "pp2", "--order", "100", "--format", "json")
    assert code == 0
    doc = json.loads(text)
    assert doc["constants"]


def test_sample_json_stdout():
    code, text = run("sample", "--class", "three", "-m", "12", "-c", "3", "--seed", "4")
    lines = text.splitlines()
    meta = json.loads(lines[0])["metadata"]
    assert "generator" in json.dumps(meta) or "rng" in json.dumps(meta)
    recs = [json.loads(ln) for ln in lines[1:]]
    assert len(recs) == 3
    assert all(r["half_perimeter"] == 12 and r["class"] == "three" for r in recs)
    # reproducible
    assert run("sample", "--class", "three", "-m", "12", "-c", "3", "--seed", "4")[1] == text


def test_sample_svg_to_dir(tmp_path):
    code, _ = run("sample", "--class", "all", "-m", "10", "-c", "2", "--format", "svg",
                  "--out", str(tmp_path))
    assert code == 0
    svgs = sorted(tmp_path.glob("*.svg"))
    assert len(svgs) == 2
    for f in svgs:
        ET.parse(f)
    manifest = json.loads((tmp_path / "manifest.json").read_text())
    assert manifest


def test_sample_ascii():
    code, text = run("sample", "--class", "two", "-m", "2", "-c", "1", "--format", "ascii")
    assert body(text) == ["#"]
    code, text = run("sample", "--class", "three", "-m", "6", "-c", "3", "--format", "ascii")
    assert sum(ln.startswith("# index: ") for ln in text.splitlines()) == 3


def test_validate_small():
    code, text = run("validate", "--max-m", "6")
    assert code == 0
    assert text.rstrip().endswith("OK: 0 mismatches")
    assert "FAIL" not in text.replace("FAILED", "")
