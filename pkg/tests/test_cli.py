import json

import pytest

from main import EXIT_OK, EXIT_USAGE, EXIT_VIOLATION, main


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_pp_check_permutation(capsys):
    code, out = run(capsys, "pp-check", "--p", "11", "--k", "2", "--alpha", "-1")
    assert code == EXIT_OK
    report = json.loads(out)
    assert report["verdict"] == "permutation"
    assert report["witness"] is None
    assert report["elapsed_ms"] == 0.0


def test_certify_flags_non_permutation(capsys):
    code, out = run(capsys, "pp-check", "--p", "7", "--k", "1", "--alpha", "1", "--certify")
    assert code == EXIT_VIOLATION
    assert json.loads(out)["verdict"] == "not_permutation"


def test_timing_keeps_elapsed(capsys):
    code, out = run(capsys, "--timing", "pp-check", "--p", "7", "--k", "1", "--alpha", "-3")
    assert code == EXIT_OK
    assert json.loads(out)["elapsed_ms"] >= 0.0


@pytest.mark.parametrize("argv", [
    ["pp-check", "--p", "7", "--k", "2", "--alpha", "1,2,3"],
    ["pp-check", "--p", "9", "--k", "1", "--alpha", "1"],
    ["pp-check", "--p", "7", "--k", "1"],
    ["pp-check", "--p", "7", "--k", "1", "--alpha", "0"],
    ["pp-check", "--p", "7", "--k", "2", "--alpha", "1", "--method", "exhaustive", "--budget", "10"],
    ["no-such-command"],
])
def test_usage_errors(capsys, argv):
    code, out = run(capsys, *argv)
    assert code == EXIT_USAGE
    assert out == ""


def test_mu_check_matches_pp_check_k2(capsys):
    code, out = run(capsys, "mu-check", "--p", "7", "--k", "2", "--alpha", "-1")
    assert code == EXIT_OK
    report = json.loads(out)
    assert report["method"] == "mu_collision"
    assert report["reduction_gcd"] == 1
    assert report["verdict"] == "permutation"
    code, out = run(capsys, "mu-check", "--p", "7", "--k", "2", "--alpha", "1")
    assert code == EXIT_OK
    assert json.loads(out)["verdict"] == "not_permutation"


def test_lintri_command(capsys):
    code, out = run(capsys, "lintri", "--p", "5", "--l", "2", "--n", "1", "--A", "2", "--B", "1")
    assert code == EXIT_OK
    report = json.loads(out)
    assert report["case"] in ("no_roots", "unique", "kernel")
    assert report["brute_force_agrees"] is True


def test_charsum_command(capsys):
    code, out = run(capsys, "charsum", "--p", "11", "--k", "2", "--mu", "2")
    assert code == EXIT_OK
    report = json.loads(out)
    assert report["satisfied"]
    assert report["q"] == 121


def test_conjecture_table_csv(capsys):
    code, out = run(capsys, "--format", "csv", "conjecture-table", "--p", "7", "--k", "1")
    assert code == EXIT_OK
    lines = out.strip().splitlines()
    assert lines[0].startswith("p,k,alpha,verdict")
    assert len(lines) == 1 + 6


def test_jsonl_to_file(capsys, tmp_path):
    target = tmp_path / "rows.jsonl"
    code, out = run(capsys, "conjecture-table", "--p", "7", "--k", "1",
                    "--format", "jsonl", "--output", str(target))
    assert code == EXIT_OK
    assert out == ""
    rows = [json.loads(line) for line in target.read_text(encoding="utf-8").splitlines()]
    assert len(rows) == 6
    assert all(r["agrees"] for r in rows)


def test_k2_unique_samples(capsys):
    code, out = run(capsys, "--seed", "7", "k2-unique", "--p", "7", "--samples", "3")
    assert code == EXIT_OK
    reports = json.loads(out)
    assert len(reports) == 3
    assert all(r["brute_force_agrees"] for r in reports)


def test_curve_count_singular_probe(capsys):
    code, out = run(capsys, "curve-count", "--p", "7", "--k", "1", "--alpha", "1", "--degrees", "1,2")
    assert code == EXIT_OK
    assert [d["m"] for d in json.loads(out)["degrees"]] == [1, 2]


def test_census_reference(capsys):
    code, out = run(capsys, "census", "--p", "11")
    assert code == EXIT_OK
    report = json.loads(out)
    assert report["qualifying_count"] == 522
    assert report["condition_mask"] == ["w_nonsquare", "mu_outside_prime_field", "distinct_mu"]
    assert report["reproduces_reference"] is True
