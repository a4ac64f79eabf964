import json

from click.testing import CliRunner
from fractions import Fraction

from freedf.cli import main
from freedf.cumulants import table_from_json
from freedf.definetti import semicircular_model


def run(args, **kwargs):
    return CliRunner().invoke(main, args, **kwargs)


def run_checked(args):
    result = run(args)
    assert result.exit_code == 0, result.output + str(result.exception)
    return result.output


def test_partitions_json():
    out = json.loads(run_checked(["partitions", "--m", "4", "--category", "o+"]))
    assert out["count"] == 2
    assert out["partitions"][0] == {"rgs": "0,0,1,1", "blocks": "{{1,2},{3,4}}"}


def test_partitions_text_has_blocks():
    out = run_checked(["partitions", "--m", "3", "--format", "text"])
    assert "0,0,1  {{1,2},{3}}" in out
    assert out.count("\n") == 5


def test_partitions_noncrossing_flag():
    out = json.loads(run_checked(["partitions", "--m", "4", "--noncrossing"]))
    assert out["count"] == 14


def test_gram_and_weingarten_json():
    g = json.loads(run_checked(["gram", "--category", "o+", "--m", "4", "--n", "5"]))
    assert g["entries"] == [["25/1", "5/1"], ["5/1", "25/1"]]
    w = json.loads(run_checked(["weingarten", "--category", "o+", "--m", "4", "--n", "5"]))
    assert w["entries"] == [["1/24", "-1/120"], ["-1/120", "1/24"]]
    assert w["basis"] == ["0,0,1,1", "0,1,1,0"]


def test_weingarten_empty_matrix():
    w = json.loads(run_checked(["weingarten", "--category", "o+", "--m", "3", "--n", "5"]))
    assert w["basis"] == [] and w["entries"] == []


def test_haar_text():
    out = run_checked(["haar", "--category", "o+", "--n", "5", "--i", "1,1", "--j", "1,1", "--format", "text"])
    assert out == "1/5\n"


def test_unknown_category_exits_2():
    result = run(["gram", "--category", "x+", "--m", "2", "--n", "3"])
    assert result.exit_code == 2
    err = json.loads(result.stderr)
    assert err["error"] == "unknown-category"


def test_generate_check_pass(tmp_path):
    model = tmp_path / "model.json"
    run_checked(
        ["generate", "--category", "s+", "--n", "5", "--max-order", "3", "--seed", "7", "--output", str(model)]
    )
    out = run_checked(["check", "--category", "s+", "--input", str(model)])
    doc = json.loads(out)
    assert doc["verdict"] == "PASS" and doc["witnesses"] == []


def test_check_fail_exits_1(tmp_path):
    sc = semicircular_model(4, 3).to_dense()
    sc.values[2][(1, 1)] = Fraction(2)
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(sc.to_json()))
    result = run(["check", "--category", "o+", "--input", str(bad)])
    assert result.exit_code == 1
    doc = json.loads(result.output)
    assert doc["verdict"] == "FAIL" and doc["witnesses"]
    assert doc["witnesses"][0]["m"] == 2


def test_check_float_tolerance(tmp_path):
    sc = semicircular_model(4, 2).to_dense()
    sc.values[2][(1, 1)] = Fraction(1) + Fraction(1, 10 ** 15)
    near = tmp_path / "near.json"
    near.write_text(json.dumps(sc.to_json()))
    assert run(["check", "--category", "o+", "--input", str(near)]).exit_code == 1
    result = run(["check", "--category", "o+", "--input", str(near), "--mode", "float"])
    assert result.exit_code == 0
    assert json.loads(result.output)["verdict"] == "PASS"
    strict = run(
        ["check", "--category", "o+", "--input", str(near), "--mode", "float", "--tolerance", "1e-18"]
    )
    assert strict.exit_code == 1


def test_check_rational_rejects_tolerance(tmp_path):
    model = tmp_path / "m.json"
    run_checked(["semicircular", "--n", "4", "--max-order", "2", "--output", str(model)])
    result = run(["check", "--category", "o+", "--input", str(model), "--tolerance", "0.5"])
    assert result.exit_code == 2
    assert json.loads(result.stderr)["error"] == "schema-error"


def test_missing_file_exits_2():
    result = run(["check", "--category", "o+", "--input", "nosuch.json"])
    assert result.exit_code == 2
    assert "message" in json.loads(result.stderr)


def test_transform_round_trip(tmp_path):
    model = tmp_path / "model.json"
    cum = tmp_path / "cum.json"
    back = tmp_path / "back.json"
    run_checked(
        ["generate", "--category", "h+", "--n", "4", "--max-order", "3", "--seed", "5", "--output", str(model)]
    )
    run_checked(["transform", "--to", "cumulants", "--input", str(model), "--output", str(cum)])
    run_checked(["transform", "--to", "moments", "--input", str(cum), "--output", str(back)])
    assert json.loads(model.read_text()) == json.loads(back.read_text())
    assert json.loads(cum.read_text())["kind"] == "cumulants"


def test_transform_kind_mismatch(tmp_path):
    model = tmp_path / "model.json"
    run_checked(["semicircular", "--n", "4", "--max-order", "2", "--output", str(model)])
    result = run(["transform", "--to", "moments", "--input", str(model)])
    assert result.exit_code == 2


def test_solve_output(tmp_path):
    model = tmp_path / "model.json"
    run_checked(
        ["generate", "--category", "o+", "--n", "4", "--max-order", "4", "--seed", "3", "--output", str(model)]
    )
    doc = json.loads(run_checked(["solve", "--category", "o+", "--which", "c", "--m", "4", "--input", str(model)]))
    assert doc["unique"] is True
    assert sorted(doc["coefficients"]) == ["0,0,1,1", "0,1,1,0"]
    table = table_from_json(json.loads(model.read_text()))
    view = table.kernel_view(4)
    from freedf.partitions import parse_partition

    for text, val in doc["coefficients"].items():
        p = parse_partition(text)
        num, den = val.split("/")
        assert view[p] == Fraction(int(num), int(den))


def test_solve_no_fallback(tmp_path):
    model = tmp_path / "model.json"
    run_checked(
        ["generate", "--category", "o+", "--n", "2", "--max-order", "4", "--seed", "3", "--output", str(model)]
    )
    result = run(["solve", "--category", "o+", "--which", "c", "--m", "4", "--input", str(model), "--no-fallback"])
    assert result.exit_code == 2
    assert json.loads(result.stderr)["error"] == "order-exceeds-n"


def test_convert_round_trip(tmp_path):
    model = tmp_path / "model.json"
    cum = tmp_path / "cum.json"
    run_checked(
        ["generate", "--category", "b+", "--n", "4", "--max-order", "3", "--seed", "9", "--output", str(model)]
    )
    run_checked(["transform", "--to", "cumulants", "--input", str(model), "--output", str(cum)])
    family = {"category": "b+", "kind": "C", "max_order": 3, "values": {}}
    for m in (1, 2, 3):
        doc = json.loads(
            run_checked(["solve", "--category", "b+", "--which", "C", "--m", str(m), "--input", str(cum)])
        )
        family["values"][str(m)] = doc["coefficients"]
    fam_path = tmp_path / "Cfam.json"
    fam_path.write_text(json.dumps(family))
    c_path = tmp_path / "cfam.json"
    back_path = tmp_path / "Cback.json"
    run_checked(["convert", "--direction", "C-to-c", "--input", str(fam_path), "--output", str(c_path)])
    run_checked(["convert", "--direction", "c-to-C", "--input", str(c_path), "--output", str(back_path)])
    assert json.loads(back_path.read_text())["values"] == family["values"]
    assert json.loads(c_path.read_text())["kind"] == "c"


def test_convert_rejects_wrong_kind(tmp_path):
    fam = {"category": "s+", "kind": "phi", "max_order": 1, "values": {"1": {"0": "1/1"}}}
    path = tmp_path / "fam.json"
    path.write_text(json.dumps(fam))
    result = run(["convert", "--direction", "c-to-C", "--input", str(path)])
    assert result.exit_code == 2


def test_convert_incomplete_family(tmp_path):
    fam = {"category": "s+", "kind": "c", "max_order": 2, "values": {"1": {"0": "1/1"}, "2": {"0,0": "1/1"}}}
    path = tmp_path / "fam.json"
    path.write_text(json.dumps(fam))
    result = run(["convert", "--direction", "c-to-C", "--input", str(path)])
    assert result.exit_code == 2
    assert json.loads(result.stderr)["error"] == "incomplete-table"


def test_semicircular_cli_matches_library(tmp_path):
    path = tmp_path / "sc.json"
    run_checked(["semicircular", "--n", "3", "--max-order", "4", "--output", str(path)])
    assert json.loads(path.read_text()) == semicircular_model(3, 4).to_json()


def test_reconstruct_cli(tmp_path):
    sc = semicircular_model(4, 4)
    from freedf.categories import O_PLUS, enumerate_category
    from freedf.rationals import format_rational

    fam = {"category": "o+", "kind": "phi", "max_order": 4, "values": {}}
    for m in range(1, 5):
        view = sc.kernel_view(m)
        fam["values"][str(m)] = {
            str(p): format_rational(view[p]) for p in enumerate_category(O_PLUS, m)
        }
    path = tmp_path / "phi.json"
    path.write_text(json.dumps(fam))
    out = run_checked(["reconstruct", "--category", "o+", "--input", str(path), "--i", "1,1,2,2", "--format", "text"])
    assert out == "1/1\n"
    out2 = run_checked(["reconstruct", "--category", "o+", "--input", str(path), "--i", "1,2,1,2", "--format", "text"])
    assert out2 == "0/1\n"


def test_block_sum_cli(tmp_path):
    path = tmp_path / "sc.json"
    run_checked(["semicircular", "--n", "5", "--max-order", "4", "--output", str(path)])
    out = run_checked(["block-sum", "--input", str(path), "--p", "0,0,1,1", "--format", "text"])
    assert out == "6/5\n"


def test_asymptotics_cli(tmp_path):
    paths = []
    for n in (4, 6, 8):
        p = tmp_path / ("sc%d.json" % n)
        run_checked(["semicircular", "--n", str(n), "--max-order", "4", "--output", str(p)])
        paths.append(str(p))
    args = ["asymptotics", "--category", "o+", "--m", "4"]
    for p in paths:
        args += ["--inputs", p]
    doc = json.loads(run_checked(args))
    assert doc["verdict"] == "DECAY"


def test_asymptotics_no_decay_exits_1(tmp_path):
    paths = []
    for n in (4, 6):
        p = tmp_path / ("g%d.json" % n)
        run_checked(
            ["generate", "--category", "s+", "--n", str(n), "--max-order", "4", "--seed", "37", "--output", str(p)]
        )
        paths.append(str(p))
    args = ["asymptotics", "--category", "s+", "--m", "4"]
    for p in paths:
        args += ["--inputs", p]
    result = run(args)
    assert result.exit_code == 1
    assert json.loads(result.output)["verdict"] == "NO-DECAY"


def test_outputs_are_deterministic(tmp_path):
    cases = [
        ["partitions", "--m", "4", "--category", "s+"],
        ["weingarten", "--category", "s+", "--m", "3", "--n", "4"],
        ["generate", "--category", "s+", "--n", "4", "--max-order", "3", "--seed", "1"],
        ["semicircular", "--n", "4", "--max-order", "4"],
    ]
    for args in cases:
        assert run_checked(args) == run_checked(args), args
