import json
import subprocess
import sys

CLI = [sys.executable, "-m", "orcohom.cli"]


def run_cli(*args):
    return subprocess.run(CLI + list(args), capture_output=True, text=True)


def test_unknown_subcommand_exits_2():
    res = run_cli("frobnicate")
    assert res.returncode == 2
    assert "usage" in res.stderr.lower()


def test_malformed_json_exits_2_with_position():
    res = run_cli("cohomology", "--space", '{"Pn": }')
    assert res.returncode == 2
    assert "position" in res.stderr


def test_missing_input_exits_2():
    res = run_cli("tower")
    assert res.returncode == 2


def test_grassmannian_csv_rank_table():
    res = run_cli("cohomology", "--space", '{"Grassmannian":{"m":2,"n":4}}',
                  "--theory", "additive", "--truncation", "8", "--format", "csv")
    assert res.returncode == 0
    rows = [line.split(",") for line in res.stdout.strip().splitlines()]
    assert rows[0] == ["weight", "rank"]
    ranks = [int(r[1]) for r in rows[1:]]
    assert ranks[:5] == [1, 1, 2, 1, 1]


def test_fgl_check_multiplicative_passes():
    res = run_cli("fgl-check", "--law", "multiplicative", "--truncation", "8",
                  "--format", "json")
    assert res.returncode == 0
    data = json.loads(res.stdout)
    assert data["axioms"]["passed"] and data["inverse_identity"]


def test_fgl_check_invalid_law_exits_1(tmp_path):
    bad = {
        "base": {"kind": "Integers"},
        "series": [[[2, 2], "1"], [[1, 0], "1"], [[0, 1], "1"]],
        "truncation": 6,
        "beta": None,
    }
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(bad))
    res = run_cli("fgl-check", "--input", str(path), "--format", "json")
    assert res.returncode == 1
    data = json.loads(res.stdout)
    assert not data["axioms"]["associative"]


def test_conner_floyd_verdict_and_exit():
    res = run_cli("conner-floyd", "--space", '{"Pn":2}', "--truncation", "6",
                  "--format", "json")
    assert res.returncode == 0
    data = json.loads(res.stdout)
    assert data["verdict"] == "isomorphism"


def test_byte_determinism():
    args = ("cohomology", "--space", '{"Flag":{"n":3}}', "--truncation", "6",
            "--format", "json")
    first = run_cli(*args)
    second = run_cli(*args)
    assert first.stdout == second.stdout
    assert first.returncode == second.returncode == 0
    pretty = ("hopf-primitives", "--truncation", "4")
    assert run_cli(*pretty).stdout == run_cli(*pretty).stdout


def test_tower_random_checks_deterministic():
    args = ("tower", "--random-check", "surjective", "--trials", "5",
            "--seed", "11", "--format", "json")
    a, b = run_cli(*args), run_cli(*args)
    assert a.returncode == 0 and a.stdout == b.stdout
    res = run_cli("tower", "--random-check", "split", "--trials", "3",
                  "--seed", "7", "--format", "json")
    assert res.returncode == 0


def test_tower_from_file(tmp_path):
    doc = {
        "stages": [{"0": {"ngens": 1, "relations": [[8]]}}] * 4,
        "maps": [{"0": [[2]]}] * 3,
        "periodicity": [0, 1],
        "surjectivity": None,
    }
    path = tmp_path / "tower.json"
    path.write_text(json.dumps(doc))
    res = run_cli("tower", "--input", str(path), "--format", "json")
    assert res.returncode == 0
    data = json.loads(res.stdout)
    entry = data["weights"][0]
    assert entry["lim"]["rank"] == 0 and entry["lim1"]["rank"] == 0


def test_undecidable_tower_exits_2(tmp_path):
    doc = {
        "stages": [{"0": {"ngens": 1, "relations": []}}] * 3,
        "maps": [{"0": [[2]]}] * 2,
        "periodicity": None,
        "surjectivity": None,
    }
    path = tmp_path / "tower.json"
    path.write_text(json.dumps(doc))
    res = run_cli("tower", "--input", str(path))
    assert res.returncode == 2
    assert "input error" in res.stderr


def test_telescope_from_file(tmp_path):
    doc = {
        "stages": [{"0": {"ngens": 1, "relations": []}}] * 4,
        "maps": [{"0": [[2]]}] * 3,
        "periodicity": [0, 1],
    }
    path = tmp_path / "tele.json"
    path.write_text(json.dumps(doc))
    res = run_cli("telescope", "--input", str(path), "--format", "json")
    data = json.loads(res.stdout)
    assert data["weights"][0]["colimit"]["localized_at"] == 2


def test_restriction_subcommand():
    res = run_cli("restriction", "--bigger", '{"Pn":2}', "--smaller", '{"Pn":1}',
                  "--truncation", "6", "--format", "json")
    assert res.returncode == 0
    data = json.loads(res.stdout)
    assert all(e["surjective"] for e in data["surjectivity"])


def test_restriction_apply_and_iso_gate():
    res = run_cli("restriction", "--bigger", '{"Pn":2}', "--smaller", '{"Pn":1}',
                  "--truncation", "6", "--apply", '[[[2],"1"]]', "--iso",
                  "--format", "json")
    # the restriction is well defined but not bijective, so --iso gates to 1
    assert res.returncode == 1
    data = json.loads(res.stdout)
    assert data["applied"] == "0"
    assert data["isomorphism"] is False
    identity = run_cli("restriction", "--bigger", '{"Pn":1}', "--smaller", '{"Pn":1}',
                       "--truncation", "6", "--iso", "--format", "json")
    assert identity.returncode == 0


def test_cohomology_reduce_flag():
    res = run_cli("cohomology", "--space", '{"Pn":3}', "--truncation", "6",
                  "--reduce", '[[[5],"1"],[[1],"2"]]', "--format", "json")
    assert res.returncode == 0
    data = json.loads(res.stdout)
    assert data["reduced_pretty"] == "(2)*l"


def test_cohomology_tensor_flag():
    res = run_cli("cohomology", "--space", '{"Product":[{"Pinf":true},{"Pinf":true}]}',
                  "--theory", "multiplicative", "--truncation", "6",
                  "--tensor", "l,l'", "--format", "json")
    assert res.returncode == 0
    data = json.loads(res.stdout)
    assert "l*l'" in data["tensor_class"]


def test_schema_subcommand():
    res = run_cli("schema", "--format", "json")
    data = json.loads(res.stdout)
    assert data["schemaVersion"] == 1
    assert "operationCoverage" in data


def test_worker_fanout_matches_serial():
    import os

    args = ("conner-floyd", "--suite", "--truncation", "4", "--format", "json")
    serial = subprocess.run(CLI + list(args), capture_output=True, text=True,
                            env={**os.environ, "ORCOHOM_WORKERS": "1"})
    fanned = subprocess.run(CLI + list(args), capture_output=True, text=True,
                            env={**os.environ, "ORCOHOM_WORKERS": "3"})
    assert serial.returncode == fanned.returncode == 0
    assert serial.stdout == fanned.stdout


def test_operation_coverage_complete_and_disjoint():
    from orcohom.cli import OPERATION_COVERAGE

    expected = {
        "normal_form", "graded_basis", "graded_rank_snf", "elementary_symmetric_decompose",
        "ringmap_check_and_apply", "is_graded_isomorphism",
        "make_additive", "make_multiplicative", "check_axioms", "formal_inverse",
        "n_series", "logarithm", "lazard_ring", "lazard_graded_ranks", "classifying_map",
        "cohomology", "chern_tensor", "restriction_map", "homology_dual", "invariance_check",
        "build_hopf", "primitives", "additive_maps_identification", "indecomposables",
        "thom_decompose", "thom_product_check", "thom_iso_check",
        "telescope_colimit", "tower_limit_and_lim1", "split_tower_compare",
        "cobordism_presentation", "k_theory_presentation", "verify_conner_floyd",
        "schema",
    }
    seen = [op for ops in OPERATION_COVERAGE.values() for op in ops]
    assert len(seen) == len(set(seen)), "operations must map to exactly one subcommand"
    assert expected <= set(seen)
