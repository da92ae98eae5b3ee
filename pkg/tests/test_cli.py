import json
import subprocess
import sys

import pytest

from exceedgame.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_play_writes_trace(tmp_path, capsys):
    path = tmp_path / "t.jsonl"
    code, out, _ = run(capsys, "play", "--a", "2", "--bob", "random", "--rounds", "50", "--trace", str(path))
    assert code == 0
    assert "final verdict: AliceWinWitnessed" in out
    head = json.loads(path.read_text().splitlines()[0])
    assert (head["a"], head["b"]) == (2, 3)


def test_verify_clean_and_tampered(tmp_path, capsys):
    path = tmp_path / "t.jsonl"
    run(capsys, "play", "--a", "2", "--rounds", "40", "--trace", str(path))
    code, out, _ = run(capsys, "verify", "--trace", str(path))
    assert code == 0 and out.startswith("0 violations")

    lines = path.read_text().splitlines()
    last = json.loads(lines[-1])
    last["verdict"] = "BobLeading" if last["verdict"] == "AliceWinWitnessed" else "AliceWinWitnessed"
    path.write_text("\n".join(lines[:-1] + [json.dumps(last)]) + "\n")
    code, out, _ = run(capsys, "verify", "--trace", str(path))
    assert code == 1 and "verdict mismatch" in out


def test_verify_missing_file(tmp_path, capsys):
    code, _, err = run(capsys, "verify", "--trace", str(tmp_path / "nope"))
    assert code == 1 and "error" in err


def test_verify_malformed(tmp_path, capsys):
    path = tmp_path / "bad.jsonl"
    path.write_text("{}\n")
    code, _, err = run(capsys, "verify", "--trace", str(path))
    assert code == 1 and "MalformedTrace" in err


def test_tournament(capsys):
    code, out, _ = run(capsys, "tournament", "--a", "1", "--alice", "inductive", "--seeds", "3", "--rounds", "100")
    assert code == 0
    assert out.strip().splitlines()[-1] == "6/6 matches reached AliceWinWitnessed"


def test_tournament_needs_one_side(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["tournament", "--a", "1"])
    assert exc.value.code == 2


def test_usage_errors():
    for argv in ([], ["play"], ["dominate", "--n", "x"], ["bogus"]):
        with pytest.raises(SystemExit) as exc:
            main(argv)
        assert exc.value.code == 2


def test_degenerate_config_exit_code(capsys):
    code, _, err = run(capsys, "play", "--a", "0", "--b", "1")
    assert code == 1 and "DegenerateConfig" in err


def test_enumerate(capsys):
    code, out, _ = run(capsys, "machine-enumerate", "--max-bits", "3")
    rows = [json.loads(x) for x in out.splitlines()]
    assert code == 0 and len(rows) == 6
    assert rows[0] == {"index": 0, "bits": 3, "encoding": "000", "program": "INPUT", "total": True}


def test_dominate(capsys):
    code, out, _ = run(capsys, "dominate", "--n", "6", "--K", "4", "--S", "64")
    assert code == 0
    lines = out.splitlines()
    assert lines[-1] == "count advice: 6 bits, bitvector advice: 58 bits"
    rows = [json.loads(x) for x in lines[1:6]]
    assert [r["strong"] for r in rows] == [2, 3, 4, 5, 6]


def test_blind_bob(capsys):
    code, out, _ = run(capsys, "blind-bob", "--n", "0", "--rounds", "50")
    assert code == 0
    assert json.loads(out.splitlines()[0])["verdict"] == "AliceWinWitnessed"


@pytest.mark.parametrize(
    "argv",
    [
        ["play", "--a", "2", "--bob", "baiter", "--rounds", "60", "--seed", "4"],
        ["tournament", "--a", "1", "--bob", "powerset", "--seeds", "2", "--rounds", "60"],
        ["dominate", "--n", "6", "--K", "4", "--S", "64"],
        ["machine-enumerate", "--max-bits", "6"],
        ["blind-bob", "--n", "0", "--rounds", "40"],
    ],
)
def test_repeatable_in_fresh_processes(argv):
    outs = {
        subprocess.run([sys.executable, "-m", "exceedgame", *argv], capture_output=True, check=False).stdout
        for _ in range(3)
    }
    assert len(outs) == 1
