import pytest

from fuforge import main as cli


# --- decode ---

def test_decode_pow2(run_cli):
    code, text = run_cli("decode", "13", "0")
    assert code == 0
    assert text.splitlines() == ["1:0:1:1 supp={0,2,3} min=0 max=3", "0 supp={}"]


def test_decode_mixed_base(run_cli):
    code, text = run_cli("decode", "--base", "1,2,6,24", "17")
    assert code == 0
    assert text.startswith("1:2:2:0 ")


def test_decode_json(run_json):
    code, record = run_json("decode", "13")
    assert code == 0
    assert record == {"base": "pow2", "values": [
        {"n": 13, "digits": [1, 0, 1, 1], "support": [0, 2, 3], "alpha_min": 0, "alpha_max": 3},
    ]}


def test_decode_beyond_the_base(run_cli):
    code, _ = run_cli("decode", "--base", "1,2,6,24", "96")
    assert code == 2


# --- verify ---

def test_verify_ok(run_cli):
    code, text = run_cli("verify", "tricks", "--order", "2")
    assert code == 0
    assert text.startswith("verify tricks: ok over ")


def test_verify_telescoping(run_json):
    code, record = run_json("verify", "telescoping", "--base", "1,2,4,8,16")
    assert code == 0
    assert record == {"suite": "telescoping", "checked": 10, "violations": [], "ok": True}


def test_verify_reports_counterexamples(run_cli, run_json):
    code, text = run_cli("verify", "growth", "--seq", "1,2,4,8", "--factor", "4")
    assert code == 1
    lines = text.splitlines()
    assert lines[0].startswith("verify growth: 1 violations over ")
    assert lines[1] == '{"factor": 4, "n": 1, "seq": [1, 2, 4, 8]}'
    code, record = run_json("verify", "growth", "--seq", "1,2,4,8", "--factor", "4")
    assert code == 1
    assert record["violations"] == [{"seq": [1, 2, 4, 8], "factor": 4, "n": 1}]


def test_verify_through_the_oracle(run_json):
    code, record = run_json("verify", "tricks", "--order", "2", "--oracle")
    assert code == 0
    assert record["oracle"] is True


def test_verify_bad_sequence(run_cli):
    assert run_cli("verify", "growth", "--seq", "1,x")[0] == 2


@pytest.mark.parametrize("argv", [
    ("verify", "growth", "--trials", "0"),
    ("verify", "heredity", "--trials", "0"),
    ("verify", "trivial-sum", "--bound", "0"),
    ("verify", "tricks", "--order", "0"),
])
def test_verify_rejects_non_positive_sizes(run_cli, argv):
    assert run_cli(*argv)[0] == 2


@pytest.mark.parametrize("argv", [
    ("tricks", "--order", "2"),
    ("idempotent", "--order", "3"),
    ("galvin", "--order", "2"),
    ("growth", "--trials", "20"),
    ("unique-sums", "--trials", "20"),
    ("heredity", "--trials", "2"),
    ("trivial-sum", "--positions", "4", "--terms", "2", "--bound", "16"),
    ("uzn", "--base", "1,2,6,24"),
    ("telescoping", "--base", "1,2,4,8,16"),
    ("carry-bound", "--base", "1,2,6,24"),
    ("parity-core",),
])
def test_verify_workers_do_not_change_reports(run_cli, argv):
    single = run_cli("verify", *argv, "--json", "--workers", "1")
    pooled = run_cli("verify", *argv, "--json", "--workers", "3")
    assert single[0] == 0
    assert single == pooled


def test_unknown_suite_is_rejected_by_the_parser(run_cli):
    with pytest.raises(SystemExit) as excinfo:
        run_cli("verify", "nope")
    assert excinfo.value.code == 2


# --- search ---

def test_search_fs_constant(run_cli, run_json):
    code, text = run_cli("search", "fs", "--N", "3", "--k", "2", "--coloring", "constant")
    assert code == 0
    assert "witness color=0 (1,2)" in text
    code, record = run_json("search", "fs", "--N", "3", "--k", "2", "--no-cache")
    assert record["domain"] == "fs"
    assert (record["r"], record["k"]) == (1, 2)
    assert record["result"] == {"witness": {"color": 0, "generators": [1, 2]}}
    assert "wall_time" not in record


def test_search_fu_size_parity(run_json):
    code, record = run_json("search", "fu", "--n", "4", "--k", "2", "--coloring", "size-parity")
    assert code == 0
    assert record["r"] == 2
    assert record["result"]["witness"] == {"color": 0, "generators": [[0, 1], [2, 3]]}


def test_search_pairs(run_json):
    code, record = run_json("search", "pairs", "--n", "6", "--k", "3", "--coloring", "pair-size-parity")
    assert code == 0
    assert record["result"]["witness"]["generators"] == [[0, 1], [2, 3], [4, 5]]


def test_search_no_witness(run_cli):
    code, text = run_cli("search", "fs", "--N", "5", "--k", "2", "--coloring", "parity")
    assert code == 0
    assert "search fs[1,5] k=2 r=2 coloring=parity: none nodes_explored=" in text


def test_search_threshold(run_json):
    code, record = run_json("search", "fs-threshold", "--k", "2", "--r", "2", "--max", "32")
    assert code == 0
    assert record["result"]["threshold"] == 9


def test_search_threshold_through_the_oracle(run_json):
    code, record = run_json("search", "fs-threshold", "--k", "2", "--r", "1", "--oracle")
    assert code == 0
    assert record["result"] == {"threshold": 3}
    assert record["oracle"] is True


def test_search_witness_through_the_oracle(run_json):
    code, record = run_json("search", "fu", "--n", "4", "--k", "2", "--coloring", "size-parity",
                            "--oracle")
    assert code == 0
    assert record["result"]["witness"] == {"color": 0, "generators": [[0, 1], [2, 3]]}


def test_exhausted_budget_exits_unresolved(run_cli):
    argv = ("search", "fs", "--N", "3", "--k", "2", "--budget", "1")
    code, text = run_cli(*argv)
    assert code == 3
    assert ": unresolved " in text
    # unresolved results are never cached
    assert not run_cli(*argv)[1].rstrip().endswith("(cached)")


def test_threshold_beyond_the_bound_is_unresolved(run_json):
    code, record = run_json("search", "fs-threshold", "--k", "2", "--r", "2", "--max", "8")
    assert code == 3
    assert record["result"] == {"unresolved": 8}


@pytest.mark.parametrize("argv", [
    ("search", "fs", "--k", "2"),
    ("search", "fs", "--N", "3"),
    ("search", "fs", "--N", "3", "--k", "0"),
    ("search", "fs-threshold", "--k", "2"),
    ("search", "fu", "--n", "3", "--k", "2", "--coloring", "parity"),
    ("search", "fs", "--N", "3", "--k", "2", "--budget", "0"),
    ("search", "fs-threshold", "--k", "2", "--r", "2", "--max", "0"),
])
def test_search_usage_errors(run_cli, argv):
    assert run_cli(*argv)[0] == 2


def test_results_are_cached(run_cli):
    argv = ("search", "fs-threshold", "--k", "2", "--r", "2")
    first = run_cli(*argv)[1]
    second = run_cli(*argv)[1]
    assert not first.rstrip().endswith("(cached)")
    assert second.rstrip().endswith("(cached)")
    assert second.startswith(first.rstrip())
    assert not run_cli(*argv, "--no-cache")[1].rstrip().endswith("(cached)")


def test_cache_flag_chooses_the_file(run_cli, tmp_path):
    path = tmp_path / "elsewhere.jsonl"
    run_cli("search", "fs", "--N", "3", "--k", "2", "--cache", str(path))
    assert path.exists()


def test_json_output_is_reproducible(run_cli):
    argv = ("search", "fs", "--N", "12", "--k", "2", "--coloring", "random", "--seed", "4", "--json")
    assert run_cli(*argv) == run_cli(*argv)
    assert run_cli(*argv) == run_cli(*argv, "--no-cache")


def test_timing_is_opt_in(run_json):
    _, record = run_json("search", "fs", "--N", "3", "--k", "2", "--timing")
    assert record["wall_time"] >= 0


def test_workers_do_not_change_results(run_json):
    argv = ("search", "fs-threshold", "--k", "2", "--r", "2", "--no-cache")
    single = run_json(*argv)[1]
    pooled = run_json(*argv, "--workers", "2")[1]
    assert single == pooled


# --- explore ---

def test_explore_catalog(run_json):
    code, record = run_json("explore", "--seq", "1,5,25")
    assert code == 0
    assert record["growth_factor"] == 4
    assert sorted(record["catalog"]["sums"]) == [1, 5, 6, 25, 26, 30, 31]
    assert record["catalog"]["decode"]["26"] == [0, 2]


def test_explore_sum(run_cli):
    code, text = run_cli("explore", "--seq", "1,5,25", "--sum", "30")
    assert code == 0
    assert text.strip() == "30 supp={1,2} binary=6 min=1 max=2"
    assert run_cli("explore", "--seq", "1,5,25", "--sum", "2")[0] == 2


def test_explore_sum_json(run_json):
    code, record = run_json("explore", "--seq", "1,5,25", "--sum", "26")
    assert code == 0
    assert (record["support"], record["binary_image"]) == ([0, 2], 5)


def test_explore_condensation(run_json):
    _, record = run_json("explore", "--seq", "1,5,25,125,625", "--y", "6,150")
    assert record["condensation"]["growth_inherited"] is True
    _, record = run_json("explore", "--seq", "1,5,25", "--y", "6,26")
    assert record["condensation"]["violating_sum"] == 32


def test_explore_family(run_cli, run_json):
    argv = ("explore", "--family", "[[0],[1],[2],[3],[4],[5]]",
            "--cond", "[[0,2],[1],[3,4,5]]", "--b", "0")
    code, record = run_json(*argv)
    assert code == 0
    assert (record["x"], record["b1"], record["y"], record["z"]) == ([0, 2], 2, [3, 4, 5], [1])
    assert (record["emerged_xy"], record["emerged_xz"]) == (0, 2)
    assert record["verdict"] == "parity clash"
    code, text = run_cli(*argv)
    assert "homogeneous=True -> parity clash" in text


@pytest.mark.parametrize("argv", [
    ("explore",),
    ("explore", "--family", "[[0],[1]]"),
    ("explore", "--family", "[[0],[1]]", "--cond", "[[0,1]]"),
    ("explore", "--family", "not json", "--cond", "[]", "--b", "0"),
    ("explore", "--family", '[["a"],[1]]', "--cond", "[[1]]", "--b", "0"),
    ("explore", "--family", "[[0],[1]]", "--cond", '[["a"]]', "--b", "0"),
])
def test_explore_usage_errors(run_cli, argv):
    assert run_cli(*argv)[0] == 2


def test_version(capsys):
    with pytest.raises(SystemExit) as excinfo:
        cli.main(["--version"])
    assert excinfo.value.code == 0
    assert capsys.readouterr().out.strip() == "1.0.0"
