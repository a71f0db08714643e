import json
import math

import numpy as np
import pytest

from supcompare import cli
from supcompare import index_sets as isets


def test_parse_config_defaults_and_overrides():
    cfg = cli.parse_config(["estimate", "set=basis:n=4"])
    assert cfg.subcommand == "estimate"
    assert cfg.distribution == "rademacher"
    assert cfg.replicates == 100000
    assert cfg.seed == cli.DEFAULT_SEED
    cfg = cli.parse_config(["subcommand=bounds", "set=basis:n=4",
                            "replicates=500", "seed=9", "paired=1"])
    assert cfg.subcommand == "bounds" and cfg.paired and cfg.seed == 9


def test_parse_config_errors():
    with pytest.raises(cli.ConfigError):
        cli.parse_config(["estimate", "mystery=1", "set=basis:n=2"])
    with pytest.raises(cli.ConfigError):
        cli.parse_config(["fly"])
    with pytest.raises(cli.ConfigError):
        cli.parse_config(["verify"])
    with pytest.raises(cli.ConfigError):
        cli.parse_config(["verify", "everything"])
    with pytest.raises(cli.ConfigError):
        cli.parse_config(["estimate", "set=basis:n=2", "beta=warm"])
    with pytest.raises(cli.ConfigError):
        cli.parse_config(["estimate", "set=basis:n=2",
                          "distribution=unknown-law"])
    with pytest.raises(cli.ConfigError):
        cli.parse_config(["estimate", "target=softmax", "set=basis:n=2"])
    with pytest.raises(cli.ConfigError):
        cli.parse_config(["estimate", "oops", "extra", "set=basis:n=2"])


def test_parse_config_file_merging():
    text = "# comment\nsubcommand=estimate\nset=basis:n=4\nreplicates=200\n"
    cfg = cli.parse_config(["replicates=300"], file_text=text)
    assert cfg.subcommand == "estimate"
    assert cfg.replicates == 300  # CLI overrides the file


def test_parse_set_families():
    T = cli.parse_set("basis:n=5,mode=signed")
    assert T.cardinality == 10
    T = cli.parse_set("basis:n=3,mode=negative-scaled,theta=2")
    assert T.param == 2.0
    T = cli.parse_set("diagcube:n=4,alpha=0.5,k=2")
    assert T.cardinality == 4 and T.dim == 4
    T = cli.parse_set("diagcube:d=1|0.5")
    assert T.cardinality == 4
    T = cli.parse_set("spin-quadratic:N=4")
    assert T.dim == 6
    T = cli.parse_set("spin-tensor:N=4,m=3,normalized=1")
    assert np.allclose(np.linalg.norm(T.points, axis=1), 0.5)


def test_parse_set_errors():
    for bad in ("basis", "basis:n=0", "mystery:n=2", "basis:n=2,weird=1",
                "diagcube:n=2,alpha=0.5,k=9", "explicit:path=/nope.csv",
                "basis:mode=signed"):
        with pytest.raises(cli.ConfigError):
            cli.parse_set(bad)


def test_parse_set_explicit_round_trip(tmp_path):
    T = isets.make_basis_family(3, "signed")
    path = tmp_path / "pts.csv"
    isets.save_csv(T, path)
    back = cli.parse_set(f"explicit:path={path}")
    assert np.array_equal(back.points, T.points)


def run_main(argv):
    return cli.main(argv)


def test_estimate_run_and_outputs(tmp_path):
    out = tmp_path / "out"
    code = run_main(["estimate", "set=basis:n=5", "distribution=gaussian",
                     "replicates=500", "seed=3", "beta=1.25",
                     f"output_dir={out}"])
    assert code == 0
    doc = json.loads((out / "estimate.json").read_text())
    assert doc["config"]["seed"] == 3
    assert doc["assertions"]["softmax_bracket"]
    headers = doc["tables"]["main"]["headers"]
    rows = doc["tables"]["main"]["rows"]
    assert headers[0] == "metric"
    metrics = {r[0] for r in rows}
    assert metrics == {"complexity", "softmax"}
    soft = next(r for r in rows if r[0] == "softmax")
    offset = soft[headers.index("offset")]
    assert offset == pytest.approx(math.log(5) / 1.25)
    csv_text = (out / "estimate.csv").read_text()
    assert csv_text.startswith("metric,")


def test_beta_auto(tmp_path):
    out = tmp_path / "auto"
    code = run_main(["estimate", "set=basis:n=4", "distribution=rademacher",
                     "replicates=200", "beta=auto", f"output_dir={out}"])
    assert code == 0
    doc = json.loads((out / "estimate.json").read_text())
    # bounded optimizer: min(1/Rinf, u^{1/4}/R4) with M = R2 = R4 = Rinf = 1
    assert doc["summary"]["beta"] == pytest.approx(1.0)


def test_rerun_is_byte_identical(tmp_path):
    argv = ["bounds", "set=diagcube:n=6,alpha=0.25", "distribution=uniform",
            "replicates=400", "seed=11"]
    a, b = tmp_path / "a", tmp_path / "b"
    assert run_main(argv + [f"output_dir={a}"]) == 0
    assert run_main(argv + [f"output_dir={b}"]) == 0
    assert (a / "bounds.csv").read_bytes() == (b / "bounds.csv").read_bytes()


def test_usage_errors_exit_1(tmp_path, capsys):
    assert run_main(["estimate"]) == 1  # missing set=
    assert run_main(["estimate", "set=basis:n=2", "bogus=1"]) == 1
    assert run_main(["--config", "/does/not/exist.cfg"]) == 1
    assert run_main([]) == 1
    err = capsys.readouterr().err
    assert "error" in err


def test_config_file_run(tmp_path):
    cfg = tmp_path / "run.cfg"
    out = tmp_path / "cfg-out"
    cfg.write_text("subcommand=sudakov\nset=basis:n=6\nreplicates=100\n"
                   f"output_dir={out}\n")
    assert run_main(["--config", str(cfg)]) == 0
    doc = json.loads((out / "sudakov.json").read_text())
    assert doc["assertions"]["ratios_positive"]


def test_failed_assertion_exits_2(tmp_path):
    # odd N two-spin gaps nearly vanish, blowing the max/min ratio
    out = tmp_path / "skfail"
    code = run_main(["sk", "N_list=4,5", "replicates=20000", "seed=1",
                     f"output_dir={out}"])
    assert code == 2
    doc = json.loads((out / "sk.json").read_text())
    assert not doc["assertions"]["scaled_max_over_min_le_3"]


def test_phase_curves_crossover_row(tmp_path):
    out = tmp_path / "pc"
    code = run_main(["phase-curves", "set=diagcube:n=16,alpha=0.25,k=4",
                     f"output_dir={out}"])
    assert code == 0
    doc = json.loads((out / "phase-curves.json").read_text())
    assert doc["assertions"]["crossovers_exact"]
    assert doc["summary"]["u1"] == pytest.approx(3.3807289932289937)
    assert doc["summary"]["u2"] == pytest.approx(6.663994608237443)


def test_verify_batteries_exit_0(tmp_path):
    for target in ("softmax", "gibbs"):
        out = tmp_path / target
        assert run_main(["verify", target, f"output_dir={out}", "seed=2"]) == 0
        doc = json.loads((out / f"verify-{target}.json").read_text())
        assert doc["summary"]["failed"] == 0


def test_json_has_stable_key_order(tmp_path):
    out = tmp_path / "stable"
    run_main(["sudakov", "set=basis:n=4", f"output_dir={out}"])
    text = (out / "sudakov.json").read_text()
    keys = [k for k in ("assertions", "config", "elapsed_seconds", "summary",
                        "tables", "version") if f'"{k}"' in text]
    positions = [text.index(f'"{k}"') for k in keys]
    assert positions == sorted(positions)
