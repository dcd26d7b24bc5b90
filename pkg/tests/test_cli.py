import subprocess
import sys

import pytest

from gbsdeform import canonical_certificate, is_isomorphic, parse_graph
from gbsdeform.cli import main

from strategies import X_TEXT, Y_TEXT


@pytest.fixture
def x_file(tmp_path):
    path = tmp_path / "X.gbs"
    path.write_text(X_TEXT)
    return str(path)


@pytest.fixture
def y_file(tmp_path):
    path = tmp_path / "Y.gbs"
    path.write_text(Y_TEXT)
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_check_qualified(capsys, x_file):
    code, out, _ = run(capsys, "check", x_file)
    assert code == 0
    assert "jsj: QUALIFIED" in out
    assert "strongly_slide_free: false" in out


def test_check_line_and_unknown(capsys, tmp_path):
    line = tmp_path / "line.gbs"
    line.write_text("vertex A\nedge e A A 1 1\n")
    code, out, _ = run(capsys, "check", str(line))
    assert code == 1
    assert "jsj: NOT_QUALIFIED" in out
    fuzzy = tmp_path / "fuzzy.gbs"
    fuzzy.write_text("vertex A\nedge e A A 1 3\n")
    code, out, _ = run(capsys, "check", str(fuzzy))
    assert code == 2
    assert "jsj: UNKNOWN" in out


def test_moves_lists_legal_moves(capsys, x_file):
    code, out, _ = run(capsys, "moves", x_file)
    assert code == 0
    assert "collapses: 0" in out
    assert "slides: 1" in out
    assert "slide t:0 along l:1" in out


def test_canon_prints_stable_hex(capsys, x_file):
    code, out, _ = run(capsys, "canon", x_file)
    assert code == 0
    expected = canonical_certificate(parse_graph(X_TEXT)).hex()
    assert out.strip() == expected
    # byte stability across processes
    proc = subprocess.run(
        [sys.executable, "-m", "gbsdeform.cli", "canon", x_file],
        capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.strip() == expected


def test_apply_script_round_trip(capsys, tmp_path, x_file):
    script = tmp_path / "moves.txt"
    script.write_text("slide t:0 along l:1\n")
    code, out, _ = run(capsys, "apply", x_file, "--script", str(script))
    assert code == 0
    assert "edge t A B 120 7" in out


def test_apply_illegal_script(capsys, tmp_path, x_file):
    script = tmp_path / "moves.txt"
    script.write_text("collapse t into B\n")
    code, _, err = run(capsys, "apply", x_file, "--script", str(script))
    assert code == 65
    assert "error:" in err


def test_equiv_deform_path_replays_through_apply(capsys, tmp_path, x_file, y_file):
    path_file = tmp_path / "path.txt"
    code, out, _ = run(capsys, "equiv", "--moves", "deform", "--depth", "4",
                       "--max-n", "10", "--max-index", "100",
                       x_file, y_file, "--script", str(path_file))
    assert code == 0
    assert "verdict: equivalent" in out
    assert "path_length: 4" in out
    code, out, _ = run(capsys, "apply", x_file, "--script", str(path_file))
    assert code == 0
    assert is_isomorphic(parse_graph(out), parse_graph(Y_TEXT))


def test_equiv_slide_unknown(capsys, x_file, y_file):
    code, out, _ = run(capsys, "equiv", "--moves", "slide", "--depth", "10",
                       "--max-index", "1000000000000", x_file, y_file)
    assert code == 2
    assert "verdict: unknown" in out


def test_equiv_distinct(capsys, tmp_path, x_file):
    point = tmp_path / "point.gbs"
    point.write_text("vertex A\n")
    code, out, _ = run(capsys, "equiv", x_file, str(point))
    assert code == 1
    assert "verdict: distinct" in out
    assert "betti" in out


def test_explore_dumps(capsys, tmp_path, x_file):
    dump = tmp_path / "visited.txt"
    dot = tmp_path / "class.dot"
    code, out, _ = run(capsys, "explore", x_file, "--moves", "slide",
                       "--depth", "3", "--max-index", "1000000",
                       "--dump-visited", str(dump), "--emit-dot", str(dot))
    assert code == 2  # ray never closes
    assert "members: 4" in out
    assert "closed: false" in out
    assert len(dump.read_text().strip().split("\n")) == 4
    assert dot.read_text().startswith("graph classgraph {")


def test_explore_closed_class(capsys, tmp_path):
    point = tmp_path / "point.gbs"
    point.write_text("vertex A\n")
    code, out, _ = run(capsys, "explore", str(point), "--moves", "deform")
    assert code == 0
    assert "closed: true" in out


def test_reduce_emits_graph_and_script(capsys, tmp_path):
    g = tmp_path / "g.gbs"
    g.write_text("vertex A\nvertex B\nvertex C\n"
                 "edge l C A 3 5\nedge t C B 2 7\nedge u B C 21 1\n")
    script = tmp_path / "r.txt"
    code, out, _ = run(capsys, "reduce", str(g), "--script", str(script))
    assert code == 0
    assert is_isomorphic(parse_graph(out), parse_graph(Y_TEXT))
    assert script.read_text() == "collapse u into B\n"


def test_random_deterministic(capsys):
    code, out1, _ = run(capsys, "random", "--vertices", "3", "--edges", "4",
                        "--seed", "9")
    assert code == 0
    code, out2, _ = run(capsys, "random", "--vertices", "3", "--edges", "4",
                        "--seed", "9")
    assert out1 == out2
    parse_graph(out1)


def test_random_unsatisfiable(capsys):
    code, _, err = run(capsys, "random", "--vertices", "3", "--edges", "1")
    assert code == 65
    assert "error:" in err


def test_paper_example_full_run(capsys):
    code, out, _ = run(capsys, "paper-example", "--m", "2", "--n", "3",
                       "--r", "5", "--s", "7", "--ladder-depth", "6")
    assert code == 0
    assert "moves: 4" in out
    assert "endpoint_matches: true" in out
    assert "level 6: index 933120 neighbors 2" in out
    assert "shape_ok: true" in out
    assert "y_absent: true" in out


def test_paper_example_skips_ladder_without_hypotheses(capsys):
    code, out, _ = run(capsys, "paper-example", "--m", "2", "--n", "4",
                       "--r", "5", "--s", "7")
    assert code == 0
    assert "endpoint_matches: true" in out
    assert "ladder: skipped" in out


def test_usage_errors(capsys):
    assert main(["unknown-sub"]) == 64
    assert main(["equiv", "--moves", "wiggle", "a", "b"]) == 64
    assert main(["check"]) == 64


def test_missing_and_bad_files(capsys, tmp_path):
    assert main(["check", str(tmp_path / "absent.gbs")]) == 65
    bad = tmp_path / "bad.gbs"
    bad.write_text("vertex A\nedge e A A 0 1\n")
    assert main(["check", str(bad)]) == 65
