import json
import sys

import numpy as np
import pytest
from PIL import Image

from jigsolve.cli import main
from jigsolve.generate import load_bundle
from jigsolve.synthetic import make_corpus


@pytest.fixture
def bundle(tmp_path):
    path = tmp_path / "bundle"
    code = main([
        "gen", "--synthetic", "textured", "--height", "216", "--width", "216",
        "--rows", "3", "--cols", "3", "--beta", "0.07", "--seed", "5",
        "--out", str(path),
    ])
    assert code == 0
    return path


def test_gen_creates_bundle(bundle):
    instance = load_bundle(bundle)
    assert instance.n == 9
    assert instance.beta == 0.07
    assert instance.tile_side == 68


def test_gen_from_image(tmp_path):
    make_corpus(tmp_path / "imgs", count=1, height=144, width=144, seed=0)
    out = tmp_path / "b"
    code = main([
        "gen", "--image", str(tmp_path / "imgs" / "img_0000.png"),
        "--rows", "2", "--cols", "2", "--beta", "0", "--seed", "1", "--out", str(out),
    ])
    assert code == 0
    assert load_bundle(out).n == 4


def test_solve_writes_report_and_recon(bundle, tmp_path, capsys):
    report_path = tmp_path / "report.json"
    recon_path = tmp_path / "recon.png"
    code = main([
        "solve", "--bundle", str(bundle), "--method", "linear",
        "--report", str(report_path), "--recon", str(recon_path),
    ])
    assert code == 0
    out = capsys.readouterr().out
    assert "direct=" in out
    report = json.loads(report_path.read_text())
    assert sorted(report["final_assignment"]) == list(range(9))
    assert "scores" in report and "trace" in report
    image = np.asarray(Image.open(recon_path))
    assert image.shape == (216, 216, 3)


def test_render_ground_truth(bundle, tmp_path):
    out = tmp_path / "gt.png"
    code = main(["render", "--bundle", str(bundle), "--out", str(out)])
    assert code == 0
    assert Image.open(out).size == (216, 216)


def test_render_from_report(bundle, tmp_path):
    report_path = tmp_path / "report.json"
    main(["solve", "--bundle", str(bundle), "--method", "linear", "--report", str(report_path)])
    out = tmp_path / "solved.png"
    code = main(["render", "--bundle", str(bundle), "--report", str(report_path), "--out", str(out)])
    assert code == 0


def test_bench_cli_exit_codes(tmp_path, capsys):
    make_corpus(tmp_path / "data", count=1, height=144, width=144, seed=3)
    code = main([
        "bench", "--dataset-dir", str(tmp_path / "data"), "--output-dir", str(tmp_path / "out"),
        "--rows", "2", "--cols", "2", "--betas", "0", "--methods", "none", "--seed", "1",
    ])
    assert code == 0
    assert "mean" in capsys.readouterr().out
    # failed rows -> exit 2
    code = main([
        "bench", "--dataset-dir", str(tmp_path / "data"), "--output-dir", str(tmp_path / "out2"),
        "--rows", "2", "--cols", "2", "--betas", "0.07", "--methods", "external",
        "--adapter", f"{sys.executable} -c 'raise SystemExit(4)'", "--seed", "1",
    ])
    assert code == 2


def test_bench_cli_adapter_env(tmp_path, monkeypatch):
    # env var supplies the adapter; a broken one must fail the row
    make_corpus(tmp_path / "data", count=1, height=144, width=144, seed=3)
    monkeypatch.setenv("JIGSOLVE_ADAPTER", f"{sys.executable} -c 'raise SystemExit(4)'")
    code = main([
        "bench", "--dataset-dir", str(tmp_path / "data"), "--output-dir", str(tmp_path / "out"),
        "--rows", "2", "--cols", "2", "--betas", "0.07", "--methods", "external", "--seed", "1",
    ])
    assert code == 2


def test_fatal_error_exit_code(tmp_path):
    assert main(["solve", "--bundle", str(tmp_path / "missing")]) == 1
    assert main(["bench", "--dataset-dir", str(tmp_path / "nope"),
                 "--output-dir", str(tmp_path / "o"), "--rows", "2", "--cols", "2"]) == 1


def test_bench_config_file(tmp_path):
    make_corpus(tmp_path / "data", count=1, height=144, width=144, seed=3)
    config = {
        "dataset_dir": str(tmp_path / "data"),
        "output_dir": str(tmp_path / "out"),
        "rows": 2,
        "cols": 2,
        "betas": [0.0],
        "methods": ["none"],
        "solver": {"max_iters": 100},
    }
    path = tmp_path / "config.json"
    path.write_text(json.dumps(config))
    assert main(["bench", "--config", str(path)]) == 0
    assert (tmp_path / "out" / "results.csv").exists()
