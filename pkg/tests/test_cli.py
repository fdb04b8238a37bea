"""CLI surface: payload shapes, exit codes, JSON round trips."""

import json

from k3lat.cli import build_parser, main, run
from k3lat.gluing import u2cubed_nikulin_base, u2cubed_nikulin_glue_vectors
from k3lat.lattice import Lattice


def _ok(argv):
    result = run(argv)
    assert result.status == "ok", result.diagnostics
    assert result.exit_code == 0
    return result.payload


def test_lattice_info_e8_twist_minus_two():
    payload = _ok(["lattice", "info", "--std", "E8", "--twist", "-2"])
    assert payload == {"rank": 8, "det": 256, "even": True, "signature": [0, 8]}


def test_lattice_info_u():
    payload = _ok(["lattice", "info", "--std", "U"])
    assert payload == {"rank": 2, "det": -1, "even": True, "signature": [1, 1]}


def test_lattice_show_roundtrip_bit_identical():
    payload = _ok(["lattice", "show", "--std", "NikulinN"])
    back = Lattice.from_json(payload)
    assert back.to_json() == payload
    text = json.dumps(payload, sort_keys=True)
    assert json.dumps(back.to_json(), sort_keys=True) == text


def test_lattice_roots_count():
    payload = _ok(["lattice", "roots", "--std", "E8", "--twist", "-1", "--norm", "-2"])
    assert payload == {"norm": -2, "count": 240}
    payload = _ok(
        ["lattice", "roots", "--std", "NikulinN", "--norm", "-2", "--vectors"]
    )
    assert payload["count"] == 16
    assert payload["vectors"][0] == [-1, -1, -1, -1, -1, -1, -1, 2]


def test_lattice_info_from_file(tmp_path):
    payload = _ok(["lattice", "show", "--std", "Gamma16", "--twist", "-1"])
    path = tmp_path / "g16.json"
    path.write_text(json.dumps(payload))
    info = _ok(["lattice", "info", "--file", str(path)])
    assert info == {"rank": 16, "det": 1, "even": True, "signature": [0, 16]}


def test_disc_output_format():
    payload = _ok(["disc", "--std", "NikulinN"])
    assert payload == {
        "invariant_factors": [2, 2, 2, 2, 2, 2],
        "elements": 64,
        "q_histogram": {"0": 36, "1": 28},
    }


def test_disc_odd_lattice_is_domain_error():
    result = run(["disc", "--std", "rank1", "--param", "3"])
    assert result.status == "error"
    assert result.exit_code == 1
    assert result.error_code == "odd_lattice"


def test_glue_cli(tmp_path):
    base_file = tmp_path / "base.json"
    base_file.write_text(json.dumps(u2cubed_nikulin_base().to_json()))
    vectors_file = tmp_path / "vectors.json"
    vectors_file.write_text(
        json.dumps({"vectors": [[str(c) for c in v] for v in u2cubed_nikulin_glue_vectors()]})
    )
    payload = _ok(["glue", "--base", str(base_file), "--vectors", str(vectors_file)])
    assert payload["verification"] == {
        "even": True,
        "det": -1,
        "signature": [3, 11],
        "index": 64,
    }
    glued = Lattice.from_json(payload["lattice"])
    assert glued.rank == 14


def test_glue_cli_missing_file_is_json_error(tmp_path):
    result = run(["glue", "--base", str(tmp_path / "nope.json"), "--vectors", str(tmp_path / "nope.json")])
    assert result.exit_code == 3


def test_k3_maps():
    payload = _ok(["k3", "maps"])
    assert payload["all_hold"] is True
    assert payload["str"] == [6, 0, 8]


def test_k3_push_and_pull():
    vec30 = [0] * 30
    vec30[22] = 1
    payload = _ok(["k3", "push", "--vector", json.dumps(vec30)])
    assert payload["vector"][6] == 1
    vec22 = [0] * 22
    vec22[0] = 1
    payload = _ok(["k3", "pull", "--vector", json.dumps(vec22)])
    assert payload["vector"][0] == 2


def test_k3_pull_extended():
    vec = ["0"] * 22
    vec[13] = "1"
    payload = _ok(["k3", "pull", "--vector", json.dumps(vec), "--extended"])
    assert payload["vector"] == [0] * 22 + [1] * 8


def test_k3_push_malformed_json_exit_3():
    result = run(["k3", "push", "--vector", "[1, 2"])
    assert result.exit_code == 3
    assert result.error_code == "malformed_json"


def test_ns_classify():
    payload = _ok(["ns", "classify", "--L2", "8"])
    assert [fam["variant"] for fam in payload] == ["plain", "tilde"]
    assert payload[0]["det"] == 8 * 2 ** 8
    assert payload[1]["det"] == 8 * 2 ** 8 // 4


def test_ns_moduli_and_obstruction():
    payload = _ok(["ns", "moduli", "--example", "M8"])
    assert payload == {"example": "M8", "dimension": 11}
    payload = _ok(["ns", "obstruction", "--rankT", "13"])
    assert payload["is_square"] is False
    assert payload["det_ratio_numerator"] == 8


def test_ell_fibers_sixteen_gon():
    payload = _ok(["ell", "fibers", "--a", "1,0,0,0,1", "--b", "1"])
    infinity = [p for p in payload["places"] if p["location"] == "infinity"]
    assert len(infinity) == 1 and infinity[0]["kodaira"] == "I16"
    assert payload["order_sum"] == 24


def test_ell_quotient():
    payload = _ok(["ell", "quotient", "--a", "1,0,0,0,1", "--b", "1"])
    assert payload["a"] == ["-2", "0", "0", "0", "-2"]
    assert payload["b"] == ["-3", "0", "0", "0", "2", "0", "0", "0", "1"]
    infinity = [p for p in payload["fibers"]["places"] if p["location"] == "infinity"]
    assert infinity[0]["kodaira"] == "I8"


def test_ell_shioda_tate():
    payload = _ok(["ell", "shioda-tate", "--fibers", "I2:8,I1:8", "--torsion", "2"])
    assert payload == {"picard_rank": 10, "ns_discriminant": "64"}


def test_ell_shioda_tate_mw_unsupported():
    result = run(["ell", "shioda-tate", "--fibers", "I2:8", "--torsion", "2", "--mw", "1"])
    assert result.exit_code == 1
    assert result.error_code == "unsupported"


def test_unknown_subcommand_exits_two(capsys):
    result = run(["frobnicate"])
    assert result.exit_code == 2
    capsys.readouterr()


def test_domain_error_exit_code():
    result = run(["lattice", "info", "--std", "U", "--twist", "0"])
    assert result.exit_code == 1
    assert result.error_code == "bad_input"


def test_deterministic_output():
    first = _ok(["ns", "classify", "--L2", "16"])
    second = _ok(["ns", "classify", "--L2", "16"])
    assert first == second


def test_main_json_envelope(capsys):
    code = main(["--json", "lattice", "info", "--std", "U", "--twist", "2"])
    out = capsys.readouterr().out
    assert code == 0
    envelope = json.loads(out)
    assert envelope["status"] == "ok"
    assert envelope["payload"]["det"] == -4


def test_main_error_goes_to_stderr(capsys):
    code = main(["lattice", "info", "--std", "U", "--twist", "0"])
    captured = capsys.readouterr()
    assert code == 1
    assert json.loads(captured.err)["code"] == "bad_input"


def test_parser_help_exits_zero():
    result = run(["--help"])
    assert result.exit_code == 0


def test_parser_builds():
    build_parser()
