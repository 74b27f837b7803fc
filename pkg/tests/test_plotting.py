import subprocess
import sys

import pytest

from ewens_edgeworth import DomainError
from ewens_edgeworth.mode import density_experiment
from ewens_edgeworth.plotting import detect_kind, emit_plot_script, render
from ewens_edgeworth.sweeps import (
    CDF_HEADER,
    EDGEWORTH_HEADER,
    LARGEDEV_HEADER,
    MAXIMUM_HEADER,
    cdf_sweep,
    edgeworth_sweep,
    largedev_table,
    maximum_sweep,
    write_rows,
)


@pytest.fixture
def csvs(tmp_path):
    made = {}
    for kind, header, rows in (
        ("edgeworth-sweep", EDGEWORTH_HEADER, edgeworth_sweep(1.0, (100, 200), 1)),
        ("cdf-sweep", CDF_HEADER, cdf_sweep(1.0, (100, 200))),
        ("maximum", MAXIMUM_HEADER, maximum_sweep(1.0, (100, 200))),
        ("largedev", LARGEDEV_HEADER, largedev_table(2000, (7, 15), 2)),
    ):
        path = tmp_path / f"{kind}.csv"
        with open(path, "w") as fh:
            write_rows(fh, header, rows)
        made[kind] = path
    path = tmp_path / "density.csv"
    path.write_text(density_experiment(100, 1).trace_csv())
    made["density"] = path
    return made


def test_detect_and_render(csvs):
    for kind, path in csvs.items():
        assert detect_kind(path) == kind
        png = render(path)
        assert png.exists() and png.read_bytes()[:4] == b"\x89PNG"


def test_generated_script_renders(csvs):
    script = emit_plot_script(csvs["maximum"])
    assert script.name == "maximum.plot.py"
    r = subprocess.run([sys.executable, str(script)], capture_output=True, text=True)
    assert r.returncode == 0, r.stderr
    assert csvs["maximum"].with_suffix(".png").exists()


def test_unknown_schema(tmp_path):
    bad = tmp_path / "x.csv"
    bad.write_text("a,b\n1,2\n")
    with pytest.raises(DomainError):
        detect_kind(bad)
    with pytest.raises(DomainError):
        emit_plot_script(bad)
    with pytest.raises(DomainError):
        emit_plot_script(tmp_path / "missing.csv")
