"""Command-line interface: verbs, formats, exit codes, determinism."""

import json

import pytest

from freegroups.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_member_fig7(capsys):
    code, out, _ = run(capsys, "--alphabet", "ab", "member", "--sub", "bbAA", "--word", "ab")
    assert (code, out) == (0, "no\n")
    code, out, _ = run(capsys, "--alphabet", "ab", "member", "--sub", "bbAA", "--word", "bbAA")
    assert (code, out) == (0, "yes\n")


def test_index_kernel(capsys):
    code, out, _ = run(capsys, "--alphabet", "ab", "index", "--sub", "aa,b,abA")
    assert (code, out) == (0, "2\n")
    code, out, _ = run(capsys, "--alphabet", "ab", "index", "--sub", "aa")
    assert out == "infinite\n"


def test_intersect_with_dot(capsys, tmp_path):
    dot = tmp_path / "out.dot"
    code, out, _ = run(
        capsys, "--alphabet", "ab", "intersect",
        "--sub", "ab,Ba", "--sub", "aaa,AbA", "--dot", str(dot),
    )
    assert code == 0
    record = json.loads(out)
    assert record["vertices"] == 6 and len(record["edges"]) == 7
    text = dot.read_text()
    assert text.count("->") == 7 and "doublecircle" in text


def test_graph_json_roundtrip(capsys, tmp_path):
    code, out, _ = run(capsys, "--alphabet", "ab", "graph", "--sub", "aab,ba")
    assert code == 0
    path = tmp_path / "g.json"
    path.write_text(out)
    code2, out2, _ = run(capsys, "--alphabet", "ab", "graph", "--sub", str(path))
    assert code2 == 0 and out2 == out
    # inline JSON auto-detection
    code3, out3, _ = run(capsys, "--alphabet", "ab", "graph", "--sub", out.strip())
    assert code3 == 0 and out3 == out


def test_determinism(capsys):
    args = ("--alphabet", "ab", "basis", "--sub", "aab,ba,bb", "--geodesic")
    _, first, _ = run(capsys, *args)
    _, second, _ = run(capsys, *args)
    assert first == second


def test_reduce(capsys):
    code, out, _ = run(capsys, "--alphabet", "ab", "reduce", "--word", "a bB aa")
    assert (code, out) == (0, "aaa\n")


def test_predicates_and_strict(capsys):
    code, out, _ = run(capsys, "--alphabet", "ab", "malnormal", "--sub", "aa")
    assert code == 0 and out.startswith("no\nwitness: a")
    code, _, _ = run(capsys, "--alphabet", "ab", "malnormal", "--sub", "aa", "--strict")
    assert code == 1
    code, out, _ = run(capsys, "--alphabet", "ab", "normal", "--sub", "aa,b,abA")
    assert (code, out) == (0, "yes\n")
    code, out, _ = run(capsys, "--alphabet", "ab", "immersed", "--sub", "aa,bab")
    assert (code, out) == (0, "yes\n")
    code, out, _ = run(capsys, "--alphabet", "ab", "hn-check", "--sub", "ab,Ba", "--sub", "aaa,AbA")
    assert (code, out) == (0, "yes\n")
    code, out, _ = run(capsys, "--alphabet", "ab", "cyclonormal", "--sub", "aa,bb,abab,ba")
    assert (code, out) == (0, "no\n")


def test_conjugacy_verbs(capsys):
    code, out, _ = run(capsys, "--alphabet", "ab", "conj-equiv", "--sub", "aa", "--sub", "baaB")
    assert code == 0 and out == "yes\nconjugator: b\n"
    code, out, _ = run(capsys, "--alphabet", "ab", "conj-into", "--sub", "baaB", "--sub", "a")
    assert code == 0 and out.startswith("yes")
    code, out, _ = run(capsys, "--alphabet", "ab", "power", "--sub", "aaa", "--word", "a")
    assert (code, out) == (0, "3\n")
    code, out, _ = run(capsys, "--alphabet", "ab", "power", "--sub", "a", "--word", "b")
    assert (code, out) == (0, "none\n")


def test_hall_and_join(capsys):
    code, out, _ = run(capsys, "--alphabet", "ab", "hall", "--sub", "bbAA", "--word", "ab", "--json")
    assert code == 0
    record = json.loads(out)
    assert record["index"] == 5
    assert record["basis_h"] == ["bbAA"]
    assert len(record["basis_c"]) == 5
    code, out, _ = run(capsys, "--alphabet", "ab", "join", "--sub", "a", "--sub", "b")
    assert json.loads(out)["vertices"] == 1


def test_components_json(capsys):
    code, out, _ = run(capsys, "--alphabet", "ab", "components", "--sub", "aa", "--sub", "aa")
    records = json.loads(out)
    assert len(records) == 2
    off = [r for r in records if not r["contains_base_pair"]]
    assert off[0]["rank"] == 1 and off[0]["double_coset_witness"] == "a"


def test_extension_verbs(capsys):
    code, out, _ = run(capsys, "--alphabet", "ab", "ext-type", "--sub", "aa", "--sub", "a")
    assert (code, out) == (0, "algebraic\n")
    code, out, _ = run(capsys, "--alphabet", "ab", "extensions", "--sub", "aa")
    assert len(json.loads(out)) == 2
    code, out, _ = run(capsys, "--alphabet", "ab", "closure", "--algebraic", "--sub", "aa")
    assert json.loads(out)["vertices"] == 1
    code, out, _ = run(capsys, "--alphabet", "ab", "closure", "--isolated", "--sub", "aa")
    assert json.loads(out)["edges"] == [[0, "a", 0]]
    code, out, _ = run(capsys, "--alphabet", "a", "isolated", "--sub", "aa")
    assert code == 0 and out == "no\nwitness: a\npower: 2\n"
    code, out, _ = run(capsys, "--alphabet", "ab", "isolated", "--sub", "ab", "--depth", "3")
    assert code == 0 and "complete: False" in out


def test_free_factor_verbs(capsys):
    code, out, _ = run(capsys, "--alphabet", "ab", "free-factor", "--sub", "ab", "--ambient")
    assert (code, out) == (0, "yes\n")
    code, out, _ = run(capsys, "--alphabet", "ab", "free-factor", "--sub", "aa", "--in", "a")
    assert (code, out) == (0, "no\n")


def test_dot_verb(capsys, tmp_path):
    code, out, _ = run(capsys, "--alphabet", "ab", "dot", "--sub", "aa")
    assert code == 0 and out.startswith("digraph") and out.count("->") == 2
    path = tmp_path / "g.dot"
    code, out, _ = run(capsys, "--alphabet", "ab", "dot", "--sub", "aa", "--dot", str(path))
    assert code == 0 and out == "" and path.read_text().count("->") == 2


def test_usage_errors_exit_2(capsys):
    code, _, err = run(capsys, "--alphabet", "ab", "member", "--sub", "a!b", "--word", "a")
    assert code == 2 and "error" in err
    code, _, err = run(capsys, "--alphabet", "ab", "member", "--sub", "ab")
    assert code == 2  # missing --word
    code, _, err = run(capsys, "--alphabet", "ab", "intersect", "--sub", "ab")
    assert code == 2  # needs two subgroups
    code, _, err = run(capsys, "--alphabet", "ab", "graph", "--sub", "missing_file.json")
    assert code == 2
    # graph file must pass the folded/core validation
    bad = '{"alphabet": "ab", "vertices": 2, "base": 0, "edges": [[0, "a", 1]]}'
    code, _, err = run(capsys, "--alphabet", "ab", "graph", "--sub", bad)
    assert code == 2


def test_resource_limit_exit_3(capsys):
    code, _, err = run(capsys, "--alphabet", "ab", "quotients", "--sub", "ababababababab")
    assert code == 3 and "limit" in err


def test_argparse_usage_error_exit_code():
    with pytest.raises(SystemExit) as exc:
        main(["--alphabet", "ab", "not-a-verb"])
    assert exc.value.code == 2


def test_dot_edges_match_json_fixture(capsys):
    # the folded wedge of aab, bABa, abA: DOT arcs and JSON edges agree
    import re

    _, json_out, _ = run(capsys, "--alphabet", "ab", "graph", "--sub", "aab,bABa,abA")
    record = json.loads(json_out)
    _, dot_out, _ = run(capsys, "--alphabet", "ab", "dot", "--sub", "aab,bABa,abA")
    arcs = re.findall(r"(\d+) -> (\d+) \[label=\"(\w)\"\]", dot_out)
    from_dot = sorted((int(o), lbl, int(t)) for o, t, lbl in arcs)
    from_json = sorted((o, lbl, t) for o, lbl, t in record["edges"])
    assert from_dot == from_json


def test_plateau_budget_flag(capsys):
    code, out, _ = run(
        capsys, "--alphabet", "ab", "free-factor", "--sub", "ab", "--ambient",
        "--plateau-budget", "50",
    )
    assert (code, out) == (0, "yes\n")
    code, _, err = run(
        capsys, "--alphabet", "ab", "free-factor", "--sub", "aa,bb", "--ambient",
        "--plateau-budget", "1",
    )
    assert code == 3 and "budget" in err
