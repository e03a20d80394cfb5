import json
import math

import pytest

from friable import cli, correlate, forms
from friable.config import resolve_config
from friable.errors import ArgumentError


def run_cli(tmp_path, *argv):
    return cli.run(["--out", str(tmp_path / "out"), *argv])


def read_result(tmp_path, command):
    return json.loads((tmp_path / "out" / f"{command}_result.json").read_text())


def read_manifest(tmp_path, command):
    return json.loads((tmp_path / "out" / f"{command}_manifest.json").read_text())


def test_dickman_prints_value(tmp_path, capsys):
    assert run_cli(tmp_path, "dickman", "--u", "2") == 0
    out = capsys.readouterr().out
    assert out.splitlines()[0].startswith("0.30685281944")
    payload = read_result(tmp_path, "dickman")
    assert abs(payload["result"]["rho"] - (1 - math.log(2))) < 1e-9


def test_dickman_table_csv(tmp_path):
    assert run_cli(tmp_path, "dickman", "--table", "3", "0.5") == 0
    rows = (tmp_path / "out" / "dickman_table.csv").read_text().strip().splitlines()
    assert rows[0] == "u,rho"
    assert len(rows) == 8  # u = 0, 0.5, ..., 3.0
    first = rows[1].split(",")
    assert float(first[0]) == 0.0 and float(first[1]) == 1.0


def test_count_pipeline(tmp_path):
    assert (
        run_cli(
            tmp_path,
            "count",
            "--forms",
            "x1;x2;x1+x2",
            "--body",
            "simplex:1,N",
            "--N",
            "300",
            "--u",
            "2,2,2",
        )
        == 0
    )
    payload = read_result(tmp_path, "count")
    system = forms.parse_form_system("x1;x2;x1+x2")
    body = forms.ConvexBody.simplex(2, 1, 300)
    expected = forms.count_friable_values(system, body, 300, (2.0, 2.0, 2.0))
    assert payload["result"]["count"] == expected
    assert payload["result"]["volume_exact"] is True
    assert payload["result"]["ratio"] == pytest.approx(
        expected / payload["result"]["main_term"]
    )


def test_manifest_replay_digest(tmp_path):
    args = ("saddle", "--N", "1000", "--y", "50")
    assert run_cli(tmp_path, *args) == 0
    first = read_manifest(tmp_path, "saddle")
    assert run_cli(tmp_path, *args) == 0
    second = read_manifest(tmp_path, "saddle")
    assert first["output_digest"] == second["output_digest"]
    assert first["version"] == second["version"]


def test_count_digest_stable_despite_elapsed(tmp_path):
    args = ("count", "--forms", "x1", "--body", "box:1,N", "--N", "500", "--u", "2")
    assert run_cli(tmp_path, *args) == 0
    d1 = read_manifest(tmp_path, "count")["output_digest"]
    assert run_cli(tmp_path, *args) == 0
    d2 = read_manifest(tmp_path, "count")["output_digest"]
    assert d1 == d2


def test_result_serialization_precision(tmp_path):
    assert run_cli(tmp_path, "saddle", "--N", "10000", "--y", "100") == 0
    text = (tmp_path / "out" / "saddle_result.json").read_text()
    # 17 significant digits for the root
    assert "0.72465913048446762" in text


def test_exit_codes(tmp_path):
    assert run_cli(tmp_path, "sieve", "--lo", "9", "--hi", "3") == 2
    assert run_cli(tmp_path, "count", "--forms", "x1;2x1+1", "--body", "box:1,N;1,N",
                   "--N", "50", "--u", "2,2") == 2
    assert run_cli(tmp_path, "sieve", "--lo", "0", "--hi", str(2**33)) == 3
    assert cli.run(["bogus"]) == 64
    assert cli.run(["count", "--badflag"]) == 64
    assert run_cli(tmp_path, "verify", "--suite", "nope") == 2


def test_gowers_csv_input(tmp_path):
    data = tmp_path / "seq.csv"
    data.write_text("1\n0.5,0.5\n-0.25\n0,1\n")
    assert run_cli(tmp_path, "gowers", "--input", str(data), "--k", "2", "--mode", "cyclic") == 0
    payload = read_result(tmp_path, "gowers")
    assert payload["result"]["length"] == 4
    assert 0.0 < payload["result"]["norm"] <= 1.0


def test_gowers_preset_input(tmp_path):
    assert run_cli(tmp_path, "gowers", "--input", "balanced:256:2", "--k", "2") == 0
    assert read_result(tmp_path, "gowers")["result"]["norm"] > 0
    # a linear phase has full interval U^2 norm: its second derivative is 1
    assert run_cli(tmp_path, "gowers", "--input", "linear_golden:512", "--k", "2") == 0
    assert read_result(tmp_path, "gowers")["result"]["norm"] == pytest.approx(1.0, abs=1e-9)
    assert run_cli(tmp_path, "gowers", "--input", "no_such_thing", "--k", "2") == 2


def test_correlate_and_decompose(tmp_path):
    assert run_cli(tmp_path, "correlate", "--N", "2000", "--u", "2", "--phase", "linear_golden") == 0
    c = read_result(tmp_path, "correlate")["result"]
    assert c["correlation_abs"] == pytest.approx(
        math.hypot(c["correlation_re"], c["correlation_im"])
    )
    assert run_cli(tmp_path, "decompose", "--N", "2000", "--u", "2", "--phase", "bracket_golden") == 0
    d = read_result(tmp_path, "decompose")["result"]
    total = complex(d["total"]["re"], d["total"]["im"])
    s = complex(d["sigma1"]["re"], d["sigma1"]["im"]) + complex(
        d["sigma2"]["re"], d["sigma2"]["im"]
    )
    assert abs(total - s) <= 1e-8 * max(abs(total), 1.0)


def test_verify_suite_writes_table(tmp_path):
    assert run_cli(tmp_path, "verify", "--suite", "theorem1", "--N", "200") == 0
    payload = read_result(tmp_path, "verify")
    assert "passed" in payload["result"]
    csv_text = (tmp_path / "out" / "verify_ratios.csv").read_text()
    assert csv_text.splitlines()[0].startswith("u1,u2,u3,count")


def test_verify_hildebrand_suite(tmp_path):
    assert run_cli(tmp_path, "verify", "--suite", "hildebrand") == 0
    payload = read_result(tmp_path, "verify")
    assert payload["result"]["passed"] is True
    rows = (tmp_path / "out" / "verify_ratios.csv").read_text().strip().splitlines()
    assert len(rows) == 5  # header + one row per u


def test_verify_mertens_suite(tmp_path):
    assert run_cli(tmp_path, "verify", "--suite", "mertens") == 0
    payload = read_result(tmp_path, "verify")
    assert payload["result"]["passed"] is True
    rows = (tmp_path / "out" / "verify_errors.csv").read_text().strip().splitlines()
    assert len(rows) == 5


def test_verify_product_suite(tmp_path):
    assert run_cli(tmp_path, "verify", "--suite", "product") == 0
    assert read_result(tmp_path, "verify")["result"]["passed"] is True


def test_verify_harper_suite_small(tmp_path):
    assert run_cli(tmp_path, "verify", "--suite", "harper", "--N", "2000") == 0
    result = read_result(tmp_path, "verify")["result"]
    assert result["count"] > 0 and result["prediction"] > 0
    assert "ratio" in result and "passed" in result


def test_config_file_and_env(tmp_path, monkeypatch):
    cfg_file = tmp_path / "friable.cfg"
    cfg_file.write_text("segment_size = 8192\nthreads = 2\n# comment\n")
    cfg = resolve_config(str(cfg_file))
    assert cfg.segment_size == 8192 and cfg.threads == 2
    monkeypatch.setenv("FRIABLE_THREADS", "5")
    cfg = resolve_config(str(cfg_file))
    assert cfg.threads == 5  # env beats file
    cfg = resolve_config(str(cfg_file), threads=7)
    assert cfg.threads == 7  # flag beats env
    monkeypatch.setenv("FRIABLE_THREADS", "zebra")
    with pytest.raises(ArgumentError):
        resolve_config(str(cfg_file))


def test_config_file_errors(tmp_path):
    bad = tmp_path / "bad.cfg"
    bad.write_text("nonsense_key = 3\n")
    with pytest.raises(ArgumentError):
        resolve_config(str(bad))
    bad.write_text("segment_size\n")
    with pytest.raises(ArgumentError):
        resolve_config(str(bad))


def test_parse_helpers():
    body = cli.parse_body_spec("box:0,10;0,10", 2)
    assert body.kind == "box"
    body = cli.parse_body_spec("hpoly:1,0,5;-1,0,0;0,1,5;0,-1,0", 2)
    assert body.kind == "hpoly" and body.contains((3, 3))
    with pytest.raises(ArgumentError):
        cli.parse_body_spec("box:0,10", 2)
    with pytest.raises(ArgumentError):
        cli.parse_body_spec("orb:1", 1)
    assert cli.parse_u_list("2,2.5,3") == [2.0, 2.5, 3.0]
    with pytest.raises(ArgumentError):
        cli.parse_u_list("2,x")
    p = cli.parse_phase_spec("quadratic:0.41")
    assert isinstance(p, correlate.PhaseSequence) and p.step == 2
    with pytest.raises(ArgumentError):
        cli.parse_phase_spec("warp:1,2")


def test_dump_json_formats():
    text = cli.dump_json({"a": 1, "b": 0.1, "c": [True, None, "x\"y"]})
    parsed = json.loads(text)
    assert parsed["a"] == 1 and parsed["c"][0] is True and parsed["c"][2] == 'x"y'
    assert "0.10000000000000001" in text  # 17 significant digits
