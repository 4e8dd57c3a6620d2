import json
import shutil
from pathlib import Path

import pytest

from hidden.cli import main

CONFIGS = Path(__file__).resolve().parent.parent / "configs"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_keygen_eg_reproduces_example(capsys, tmp_path):
    code, out, _ = run(capsys, "keygen", "--scheme", "eg", "--p", "23", "--gamma", "1+2i",
                       "--a", "7", "--out", str(tmp_path))
    assert code == 0
    report = json.loads(out)
    assert report["K"] == {"re": "6", "im": "2"}
    assert report["largest_factor_bits"] == 4
    public = json.loads((tmp_path / "eg_public.json").read_text())
    assert public["K"] == {"re": "6", "im": "2"}
    assert json.loads((tmp_path / "eg_private.json").read_text()) == {"a": "7"}


def test_keygen_eg_by_size_is_seeded(capsys, tmp_path):
    outs = [run(capsys, "--seed", "5", "keygen", "--scheme", "eg", "--bits", "64",
                "--out", str(tmp_path / str(i)))[1] for i in range(2)]
    assert outs[0] == outs[1]


def test_keygen_paillier(capsys, tmp_path):
    code, out, _ = run(capsys, "keygen", "--scheme", "paillier", "--p", "5", "--q", "7",
                       "--out", str(tmp_path))
    assert code == 0 and json.loads(out)["n"] == "35"
    assert (tmp_path / "paillier_private.json").exists()


def test_keygen_unsuitable_prime(capsys, tmp_path):
    code, _, err = run(capsys, "keygen", "--scheme", "eg", "--p", "13", "--gamma", "1+2i",
                       "--out", str(tmp_path))
    assert code == 1 and "13" in err


def test_missing_flags_are_usage_errors(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["keygen"])
    assert exc.value.code == 1
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 1


def test_embed_and_extract(capsys):
    code, out, _ = run(capsys, "embed", "--lambda", "3+2i", "--data", "5", "--watermark", "4")
    assert code == 0 and json.loads(out) == {"re": "7", "im": "22"}
    code, out, _ = run(capsys, "extract", "--lambda", "3+2i", "--value", "7+22i")
    assert code == 0 and json.loads(out) == {"data": "5", "watermark": "4"}
    code, out, _ = run(capsys, "extract", "--lambda", "3+2i", "--value", "66+96i", "--count", "3")
    assert json.loads(out) == {"data": "30", "watermark": "4"}


def test_extract_remainder_exits_2(capsys):
    code, out, err = run(capsys, "extract", "--lambda", "3+2i", "--value", "7+23i")
    assert code == 2 and out == "" and "integrity" in err


def test_simulate_worked_example(capsys, tmp_path):
    transcript = tmp_path / "t.jsonl"
    code, out, _ = run(capsys, "simulate", "--config", str(CONFIGS / "worked_example_aggp.json"),
                       "--transcript", str(transcript))
    assert code == 0
    assert json.loads(out)["verdict"] == {"status": "accepted", "data": "30", "watermark": "4"}
    final = json.loads(transcript.read_text().splitlines()[-1])
    assert final["counters"]["messages_total"] == 6


def test_simulate_replay_exits_2(capsys, tmp_path):
    code, out, _ = run(capsys, "simulate", "--config", str(CONFIGS / "eg_replay.json"),
                       "--transcript", str(tmp_path / "t.jsonl"))
    assert code == 2
    verdicts = [json.loads(line)["verdict"]["status"] for line in out.splitlines()]
    assert verdicts == ["accepted", "rejected", "accepted"]


def test_simulate_single_sensor(capsys, tmp_path):
    transcript = tmp_path / "t.jsonl"
    assert run(capsys, "simulate", "--config", str(CONFIGS / "aggp_n1.json"),
               "--transcript", str(transcript))[0] == 0
    finals = [json.loads(x) for x in transcript.read_text().splitlines() if '"verdict"' in x]
    assert all(f["counters"]["messages_total"] == 2 for f in finals)


def test_simulate_bad_config(capsys, tmp_path):
    cfg = tmp_path / "bad.json"
    cfg.write_text(json.dumps({"protocol": "eg", "p": 23, "data": [5], "B": 3,
                               "watermarks": [4], "lambda": "3+2i"}))
    assert run(capsys, "simulate", "--config", str(cfg))[0] == 1
    cfg.write_text("{not json")
    assert run(capsys, "simulate", "--config", str(cfg))[0] == 1
    assert run(capsys, "simulate", "--config", str(tmp_path / "missing.json"))[0] == 1


def test_seed_flag_and_env_fallback(capsys, tmp_path, monkeypatch):
    src = json.loads((CONFIGS / "aggp_n1.json").read_text())
    del src["seed"]
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps(src))
    run(capsys, "--seed", "42", "simulate", "--config", str(cfg), "--transcript", str(tmp_path / "a"))
    monkeypatch.setenv("HIDDEN_SEED", "42")
    run(capsys, "simulate", "--config", str(cfg), "--transcript", str(tmp_path / "b"))
    assert (tmp_path / "a").read_bytes() == (tmp_path / "b").read_bytes()


@pytest.mark.parametrize("config,rows", [("eg_basic.json", 7), ("worked_example_aggp.json", 3)])
def test_counters_table(capsys, tmp_path, config, rows):
    transcript = tmp_path / "t.jsonl"
    run(capsys, "simulate", "--config", str(CONFIGS / config), "--transcript", str(transcript))
    code, out, _ = run(capsys, "counters", "--transcript", str(transcript))
    assert code == 0 and "MISMATCH" not in out
    lines = out.splitlines()[1:]
    assert len(lines) % rows == 0
    if config == "eg_basic.json":
        eq = [line.split() for line in lines if "equivalent" in line]
        assert {(r[1], r[-1]) for r in eq} == {("sensor", "8"), ("DC", "13")}


def test_counters_flags_mismatch(capsys, tmp_path):
    transcript = tmp_path / "t.jsonl"
    run(capsys, "simulate", "--config", str(CONFIGS / "aggp_n1.json"), "--transcript", str(transcript))
    lines = transcript.read_text().splitlines()
    final = json.loads(lines[-1])
    final["counters"]["modexp_n2_dc"] = 3
    lines[-1] = json.dumps(final)
    transcript.write_text("\n".join(lines) + "\n")
    code, out, _ = run(capsys, "counters", "--transcript", str(transcript))
    assert code == 2 and "MISMATCH" in out


def test_counters_empty_transcript(capsys, tmp_path):
    empty = tmp_path / "empty.jsonl"
    empty.write_text("")
    assert run(capsys, "counters", "--transcript", str(empty))[0] == 1


def test_console_script_installed():
    assert shutil.which("hidden") is not None
