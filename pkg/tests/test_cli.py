import json

import pytest

from clusterlab.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_mutate_a2(capsys):
    code, out, _ = run(capsys, "mutate", "--preset", "a2", "--seq", "1")
    assert code == 0 and "(x2 + 1)/x1" in out


def test_mutate_brick_wall_json(capsys, tmp_path):
    m = tmp_path / "wall.json"
    m.write_text(json.dumps([[0, 1, 1], [-1, 0, 1], [-1, -1, 0]]))
    code, out, _ = run(capsys, "mutate", "--matrix", str(m), "--seq", "1,3", "--format", "json")
    assert code == 0
    assert json.loads(out)["matrix"]["rows"] == [[0, -2, 1], [2, 0, -1], [-1, 1, 0]]


def test_mutate_empty_sequence_echoes_initial(capsys):
    code, out, _ = run(capsys, "mutate", "--preset", "a2")
    assert code == 0 and "x1(t) = x1" in out and "x2(t) = x2" in out


def test_matrix_file_formats(capsys, tmp_path):
    for data in ({"n": 2, "frozen": 0, "rows": [[0, 1], [-1, 0]]}, {"principal": [[0, 1], [-1, 0]]}):
        m = tmp_path / "m.json"
        m.write_text(json.dumps(data))
        code, out, _ = run(capsys, "explore", "--matrix", str(m), "--format", "table")
        assert code == 0 and "vertices: 5" in out


@pytest.mark.parametrize(
    "argv",
    [
        ["mutate", "--preset", "a2", "--seq", "3"],
        ["mutate", "--preset", "a2", "--seq", "x"],
        ["mutate"],
        ["mutate", "--preset", "nope"],
        ["mutate", "--matrix", "/nonexistent.json"],
        ["explore", "--preset", "a2", "--max-vertices", "0"],
        ["rank2", "--b", "0", "--c", "2"],
        ["counterexample", "--alpha", "1", "--beta", "1", "--gamma", "1"],
        ["rank2", "--b", "2", "--c", "2", "--check", "coefficients"],
    ],
)
def test_usage_errors_exit_1(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 1 and "error" in err


def test_unknown_flag_exits_1(capsys):
    with pytest.raises(SystemExit) as e:
        main(["explore", "--bogus"])
    assert e.value.code == 1


def test_mutate_non_sign_skew_symmetric(capsys, tmp_path):
    m = tmp_path / "m.json"
    m.write_text(json.dumps([[0, 1], [1, 0]]))
    assert run(capsys, "mutate", "--matrix", str(m))[0] == 1


def test_explore_outputs(capsys, tmp_path):
    code, out, _ = run(capsys, "explore", "--preset", "g2")
    assert code == 0 and out.startswith("graph") and out.count(" -- ") == 8
    dest = tmp_path / "g.json"
    code, out, _ = run(capsys, "explore", "--preset", "a2", "--format", "json", "--out", str(dest))
    assert code == 0 and out == ""
    assert len(json.loads(dest.read_text())["vertices"]) == 5


def test_explore_truncated_wall(capsys):
    code, out, _ = run(capsys, "explore", "--preset", "brick-wall", "--max-vertices", "30", "--format", "table")
    assert code == 0 and "status: truncated" in out and "vertices: 30" in out and "anomalies: 0" in out


def test_explore_output_is_byte_identical(capsys):
    a = run(capsys, "explore", "--preset", "b2", "--format", "json")[1]
    b = run(capsys, "explore", "--preset", "b2", "--format", "json")[1]
    c = run(capsys, "explore", "--preset", "b2", "--format", "json", "--threads", "3")[1]
    assert a == b == c


def test_rank2_denominators(capsys):
    code, out, _ = run(capsys, "rank2", "--b", "1", "--c", "2", "--check", "denominators")
    assert code == 0 and "denominators: agree" in out


def test_rank2_all_json(capsys):
    code, out, _ = run(capsys, "rank2", "--b", "1", "--c", "3", "--trials", "10", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["ok"] and data["h"] == 6
    assert data["coefficients"]["r_from_q"]["r1"] == {"q3": 1, "q4": 1, "q5": 2, "q6": 1, "q7": 1}


def test_rank2_infinite(capsys):
    code, out, _ = run(capsys, "rank2", "--b", "2", "--c", "2", "--trials", "5", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["h"] is None and "coefficients" not in data


def test_fuzz_small(capsys):
    code, out, _ = run(capsys, "fuzz", "--trials", "5", "--rank", "2", "--depth", "4", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["laurent_violations"] == 0 and data["completed"] == 5


def test_fuzz_is_reproducible(capsys):
    argv = ["fuzz", "--trials", "4", "--max-rank", "3", "--depth", "3", "--rng-seed", "11", "--format", "json"]
    a = json.loads(run(capsys, *argv)[1])
    b = json.loads(run(capsys, *argv)[1])
    for d in (a, b):
        d.pop("seconds")
        for t in d["results"]:
            t.pop("seconds")
    assert a == b


def test_counterexample(capsys):
    code, out, _ = run(capsys, "counterexample", "--trials", "30", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["ok"] and data["violations"] == 0


def test_wall(capsys):
    code, out, _ = run(capsys, "wall")
    assert code == 0 and "y8 (3,2,2) (3,2,2)" in out and "wall: ok" in out
    code, out, _ = run(capsys, "wall", "--format", "json")
    assert json.loads(out)["denominators"]["w"] == [0, 1, 0]


def test_module_entry_point():
    import subprocess
    import sys

    res = subprocess.run([sys.executable, "-m", "clusterlab", "mutate", "--preset", "a2", "--seq", "1,2"], capture_output=True, text=True)
    assert res.returncode == 0 and "x2(t)" in res.stdout
