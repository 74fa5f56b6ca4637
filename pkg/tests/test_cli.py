"""Command-line interface: subcommands, exit codes, emitted files."""

import json

import pytest

from qarchsim.cli import main
from qarchsim.pipeline import CSV_HEADER
from qarchsim.trace import TRACE_HEADER, read_trace

MINI_CONFIG = """\
[benchmark]
name = "mini"
model = "nn_tfim"
rows = 3
cols = 3
trotter_order = 2
trotter_steps = 1
evolution_time = 1.0
precision = 1e-10

[architecture]
factories = [1, 2]
architectures = ["extractor-base", "extractor-parallel"]

[simulation]
seeds = 1
base_seed = 7
"""


@pytest.fixture()
def mini(tmp_path):
    path = tmp_path / "mini.toml"
    path.write_text(MINI_CONFIG)
    return path


def test_usage_errors_exit_2():
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["generate"])  # missing --config
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["simulate", "--config", "x.toml", "--architecture", "warp"])
    assert exc.value.code == 2


def test_missing_config_exits_1(capsys):
    assert main(["generate", "--config", "/nonexistent.toml", "--dry-run"]) == 1
    assert "nonexistent" in capsys.readouterr().err


def test_bad_config_exits_1(tmp_path, capsys):
    bad = tmp_path / "bad.toml"
    bad.write_text("[benchmark]\nmodel = 'nn_tfim'\nrows = 3\ncols = 3\nzzz = 1\n")
    assert main(["generate", "--config", str(bad), "--dry-run"]) == 1
    assert "benchmark.zzz" in capsys.readouterr().err


def test_generate(mini, tmp_path, capsys):
    assert main(["generate", "--config", str(mini), "--dry-run"]) == 0
    out = capsys.readouterr().out
    assert "mini:" in out and "rotations/step=33" in out
    # Without --out and without --dry-run the command refuses.
    assert main(["generate", "--config", str(mini)]) == 1
    circ = tmp_path / "circ.json"
    assert main(["generate", "--config", str(mini), "--out", str(circ)]) == 0
    assert circ.exists() and json.loads(circ.read_text())["num_qubits"] == 9


def test_compile_payload(mini, tmp_path):
    out = tmp_path / "sched.json"
    assert main(["compile", "--config", str(mini), "--architecture",
                 "extractor-base", "--factories", "2", "--out", str(out)]) == 0
    payload = json.loads(out.read_text())
    assert payload["architecture"] == "extractor-base"
    assert payload["structural_timesteps"] > 0
    assert payload["layers"]


def test_simulate_report(mini, tmp_path, capsys):
    assert main(["simulate", "--config", str(mini), "--dry-run"]) == 0
    assert "would simulate" in capsys.readouterr().out
    out = tmp_path / "report.json"
    assert main(["simulate", "--config", str(mini), "--factories", "2",
                 "--seed", "3", "--out", str(out)]) == 0
    printed = capsys.readouterr().out
    assert "mini extractor-base F=2 seed=3:" in printed
    payload = json.loads(out.read_text())
    assert payload["seed"] == 3
    assert payload["factories"] == 2
    assert 0.0 < payload["success_probability"] <= 1.0
    assert payload["ledger"]["T_CULTIVATION"] == payload["t_states_consumed"]


def test_sweep_writes_tables(mini, tmp_path, capsys):
    assert main(["sweep", "--config", str(mini), "--dry-run"]) == 0
    assert "4 cells" in capsys.readouterr().out
    out_dir = tmp_path / "results"
    assert main(["sweep", "--config", str(mini), "--out", str(out_dir)]) == 0
    csv = (out_dir / "sweep.csv").read_text()
    assert csv.startswith(CSV_HEADER + "\n")
    assert len(csv.strip().splitlines()) == 1 + 4
    assert (out_dir / "sweep.md").exists()


def test_sweep_rerun_is_byte_identical(mini, tmp_path):
    a = tmp_path / "a"
    b = tmp_path / "b"
    assert main(["sweep", "--config", str(mini), "--out", str(a)]) == 0
    assert main(["sweep", "--config", str(mini), "--out", str(b)]) == 0
    assert (a / "sweep.csv").read_bytes() == (b / "sweep.csv").read_bytes()


def test_layout_command(tmp_path, capsys):
    out = tmp_path / "placement.json"
    assert main(["layout", "--sweeps", "5", "--out", str(out)]) == 0
    assert "max interaction distance" in capsys.readouterr().out
    assert out.exists()


def test_qualify_exit_code(mini):
    assert main(["qualify", "--config", str(mini)]) == 0


def test_trace_dump(mini, tmp_path):
    out = tmp_path / "trace.csv"
    assert main(["trace", "dump", "--config", str(mini), "--factories", "2",
                 "--out", str(out)]) == 0
    text = out.read_text()
    assert text.startswith(TRACE_HEADER + "\n")
    records = read_trace(out)
    assert records
    assert records[0]["opcode"] == "ENTANGLE_X_MEAS"
    starts = [r["timestep_start"] for r in records]
    assert starts == sorted(starts)
