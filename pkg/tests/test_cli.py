import csv
import io
import math
import subprocess
import sys

import numpy as np
import pytest

from slabarea.catenoid import BETA, CatenoidalWaist, waist_area
from slabarea.cli import main
from slabarea.corpus import Corpus, format_corpus, random_surface


def run(argv):
    out = io.StringIO()
    code = main([str(a) for a in argv], out=out)
    return code, out.getvalue()


def read_report(path):
    lines = path.read_text().splitlines()
    assert lines[0].startswith("# quadrature ")
    return list(csv.DictReader(lines[1:]))


OPTIMAL = f"slab a=1\nsurface opt:\n  component f={2 * math.pi / BETA.value:.17g} g=q^1\n"


def test_beta_default_digits():
    code, text = run(["beta"])
    assert code == 0
    assert text.startswith("beta = 1.199678640258 (residual")


def test_beta_three_digits():
    assert run(["beta", "--digits", 3])[1].startswith("beta = 1.200 ")


def test_beta_bad_digits(capsys):
    assert run(["beta", "--digits", 0])[0] == 2
    assert "--digits" in capsys.readouterr().err


def test_waist_optimal():
    code, text = run(["waist", "--lambda", repr(BETA.value), "--a", 1])
    assert code == 0
    area = waist_area(CatenoidalWaist(BETA.value, 0.0, 1.0))
    assert f"area = {area:.15g}" in text
    assert "maximally stable = true" in text


def test_waist_unit():
    code, text = run(["waist", "--lambda", 1, "--d0", 0, "--a", 1])
    assert f"area = {2 * math.pi + math.pi * math.sinh(2.0):.15g}" in text
    assert f"flux = {2 * math.pi:.15g}" in text
    assert "maximally stable = false" in text


def test_waist_negative_lambda():
    with pytest.raises(SystemExit) as info:
        main(["waist", "--lambda", "-1", "--a", "1"])
    assert info.value.code == 2


def test_verify_optimal_catenoid(tmp_path):
    corpus = tmp_path / "c.txt"
    corpus.write_text(OPTIMAL)
    out = tmp_path / "r.csv"
    code, text = run(["verify", corpus, "--out", out])
    assert code == 0
    assert "surface opt: pass equality" in text
    (row,) = read_report(out)
    assert row["equality"] == "true" and row["verdict"] == "pass"
    assert all(abs(float(row[f"slack{i}"])) <= 1e-8 for i in range(1, 6))


def test_verify_rejects_mixed_without_flag(tmp_path, capsys):
    corpus = tmp_path / "c.txt"
    corpus.write_text(
        "slab a=1\nsurface fine:\n  component f=5 g=q^1\n"
        "surface twisted:\n  component f=5 g=q^2\n  component f=4 g=q^-1\n"
    )
    code, _ = run(["verify", corpus, "--out", tmp_path / "r.csv"])
    assert code == 2
    assert "twisted" in capsys.readouterr().err
    code, text = run(["verify", corpus, "--out", tmp_path / "r.csv", "--mixed-ok"])
    assert code == 0
    assert "surface twisted: exploratory-" in text
    rows = read_report(tmp_path / "r.csv")
    assert [r["surface-id"] for r in rows] == ["fine", "twisted"]
    assert rows[1]["verdict"].startswith("exploratory-")


def test_verify_parse_error_position(tmp_path, capsys):
    corpus = tmp_path / "c.txt"
    corpus.write_text("slab a=1\nsurface s7:\n  component f=2 g=q^1 * exp(0.5*z)\n")
    code, _ = run(["verify", corpus, "--out", tmp_path / "r.csv"])
    assert code == 2
    err = capsys.readouterr().err
    assert "s7" in err and "line 3" in err and "column 33" in err


def test_verify_missing_file(tmp_path, capsys):
    code, _ = run(["verify", tmp_path / "nope.txt", "--out", tmp_path / "r.csv"])
    assert code == 2
    assert "nope.txt" in capsys.readouterr().err


def test_verify_bad_spec_flag(tmp_path):
    corpus = tmp_path / "c.txt"
    corpus.write_text(OPTIMAL)
    assert run(["verify", corpus, "--out", tmp_path / "r.csv", "--v-nodes", 100])[0] == 2


def test_verify_embeds_spec(tmp_path):
    corpus = tmp_path / "c.txt"
    corpus.write_text(OPTIMAL)
    out = tmp_path / "r.csv"
    run(["verify", corpus, "--out", out, "--v-nodes", 512, "--tol", "1e-11"])
    assert out.read_text().splitlines()[0] == (
        "# quadrature v_nodes=512 u_panels=64 u_order=8 rel_tol=1e-11 max_refinements=6"
    )


def test_verify_random_corpus_parallel_and_deterministic(tmp_path):
    rng = np.random.default_rng(7)
    surfaces = []
    for i in range(12):
        s = random_surface(rng, a=1.0)
        surfaces.append((f"r{i:02d}", s))
    corpus = tmp_path / "c.txt"
    corpus.write_text(format_corpus(Corpus(1.0, surfaces)))
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert run(["verify", corpus, "--out", a])[0] == 0
    assert run(["verify", corpus, "--out", b, "--jobs", 3])[0] == 0
    assert a.read_bytes() == b.read_bytes()
    assert [r["surface-id"] for r in read_report(a)] == [f"r{i:02d}" for i in range(12)]


def test_verify_numerical_failure_exits_one(tmp_path, capsys):
    corpus = tmp_path / "c.txt"
    corpus.write_text("slab a=1\nsurface hot:\n  component f=0.01 g=q^1\n")
    code, _ = run(["verify", corpus, "--out", tmp_path / "r.csv"])
    assert code == 1
    assert "hot" in capsys.readouterr().err
    (row,) = read_report(tmp_path / "r.csv")
    assert row["verdict"] == "error"


def test_sweep_finds_beta(tmp_path):
    out = tmp_path / "s.csv"
    code, text = run(["sweep", "--a", 1, "--lambda-lo", 0.5, "--lambda-hi", 3, "--steps", 1000, "--out", out])
    assert code == 0
    rows = list(csv.reader(out.open()))
    assert rows[0] == ["lambda", "area"] and len(rows) == 1001
    lams = np.array([float(r[0]) for r in rows[1:]])
    areas = np.array([float(r[1]) for r in rows[1:]])
    assert abs(lams[np.argmin(areas)] - BETA.value) <= lams[1] - lams[0]
    assert f"analytic lambda* = beta/a = {BETA.value:.12g}" in text


def test_sweep_coarse_still_prints_exact(tmp_path):
    code, text = run(["sweep", "--a", 2, "--lambda-lo", 0.1, "--lambda-hi", 5, "--steps", 3, "--out", tmp_path / "s.csv"])
    assert code == 0
    assert f"beta/a = {BETA.value / 2:.12g}" in text


def test_sweep_usage_errors(tmp_path):
    base = ["sweep", "--a", 1, "--out", tmp_path / "s.csv"]
    assert run(base + ["--lambda-lo", 3, "--lambda-hi", 1])[0] == 2
    assert run(base + ["--lambda-lo", 1, "--lambda-hi", 3, "--steps", 2])[0] == 2


def test_mesh_catenoid(tmp_path):
    out = tmp_path / "cat.obj"
    code, text = run(["mesh", "--g", "q^1", "--f", 2 * math.pi, "--a", 1, "--resolution", "64x256", "--out", out])
    assert code == 0
    assert "closed: true" in text
    assert out.read_bytes().count(b"\nv ") + out.read_bytes().startswith(b"v ") == 64 * 256


def test_mesh_perturbed_reports_period(tmp_path):
    code, text = run(["mesh", "--g", "q^1 * exp(0.5*q)", "--f", 2 * math.pi, "--a", 1, "--resolution", "8x32", "--out", tmp_path / "m.obj"])
    assert code == 0
    assert "closed: false (|period| = 1.5708" in text


def test_mesh_unwritable_path(tmp_path, capsys):
    bad = tmp_path / "no" / "such" / "m.obj"
    code, _ = run(["mesh", "--g", "q^1", "--f", 6, "--a", 1, "--resolution", "4x8", "--out", bad])
    assert code == 2
    assert str(bad) in capsys.readouterr().err


def test_mesh_bad_expression(capsys, tmp_path):
    code, _ = run(["mesh", "--g", "q^1 *", "--f", 6, "--a", 1, "--out", tmp_path / "m.obj"])
    assert code == 2
    assert "column 6" in capsys.readouterr().err


def test_mesh_is_byte_deterministic(tmp_path):
    argv = ["mesh", "--g", "q^2 * exp(0.2*q)", "--f", 5, "--a", 0.8, "--resolution", "6x24"]
    run(argv + ["--out", tmp_path / "a.obj"])
    run(argv + ["--out", tmp_path / "b.obj"])
    assert (tmp_path / "a.obj").read_bytes() == (tmp_path / "b.obj").read_bytes()


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "slabarea", "beta", "--digits", "5"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.startswith("beta = 1.19968")
