import json
import subprocess
import sys
from pathlib import Path

import pytest

from cubetrades import tradefile
from cubetrades.cli import CONSTRUCT_KINDS, main
from cubetrades.tradefile import FormatError, TradeFile

FIXTURES = Path(__file__).parent / "fixtures"
CORPUS = sorted(p for p in FIXTURES.iterdir() if p.is_file())
MALFORMED = sorted((FIXTURES / "malformed").iterdir())
NEGATIVE = {"unbalanced.trade", "odd_single.unitrade"}


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("path", CORPUS, ids=lambda p: p.name)
def test_round_trip_is_byte_identical(path):
    data = path.read_bytes()
    parsed = tradefile.read(path)
    again = tradefile.dumps_json(parsed) if path.suffix == ".json" else tradefile.dumps(parsed)
    assert again.encode("ascii") == data
    assert tradefile.loads(tradefile.dumps(parsed)) == parsed
    assert tradefile.loads_json(tradefile.dumps_json(parsed)) == parsed


@pytest.mark.parametrize("path", MALFORMED, ids=lambda p: p.name)
def test_malformed_files_are_rejected(path, capsys):
    with pytest.raises(FormatError):
        tradefile.read(path)
    code, _, err = run(capsys, "verify", path)
    assert code == 2 and err.startswith("error:")


def test_loads_ignores_comments_and_rejects_non_ascii():
    text = "# two legs\ntrade v=3 t=1\nT0:\n000\n111\n# second\nT1:\n100\n011\n"
    f = tradefile.loads(text)
    assert tradefile.dumps(f) == "trade v=3 t=1\nT0:\n000\n111\nT1:\n011\n100\n"
    with pytest.raises(FormatError):
        tradefile.loads("trade v=3 t=1\nT0:\n000é\nT1:\n")
    with pytest.raises(FormatError):
        tradefile.loads_json('{"kind": "trade", "v": 3}')


@pytest.mark.parametrize("path", CORPUS, ids=lambda p: p.name)
def test_verify_exit_codes_on_corpus(path, capsys):
    code, out, _ = run(capsys, "verify", path)
    if path.name in NEGATIVE:
        assert code == 1 and out.startswith("violation")
    else:
        assert code == 0 and out.startswith("ok\t")


def test_verify_reports(capsys):
    code, out, _ = run(capsys, "verify", FIXTURES / "flat_split.trade")
    assert (code, out) == (0, "ok\ttrade v=3 t=1 volume=2\n")
    code, out, _ = run(capsys, "verify", FIXTURES / "unbalanced.trade")
    assert (code, out) == (1, 'violation subcube "x1=1": 0 vs 1\n')
    code, out, _ = run(capsys, "verify", FIXTURES / "unbalanced.trade", "--all-violations")
    assert code == 1 and len(out.splitlines()) > 1
    code, out, _ = run(capsys, "verify", FIXTURES / "odd_single.unitrade", "--json")
    report = json.loads(out)
    assert code == 1 and not report["ok"] and report["violations"][0]["kind"] == "odd-subcube"
    code, out, _ = run(capsys, "verify", FIXTURES / "simplex_trade.trade")
    assert code == 0 and out.strip().endswith("volume=7 k=4")


def test_verify_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "verify", tmp_path / "nope.trade")
    assert code == 2 and err


def test_split_exit_codes(capsys, tmp_path):
    code, out, _ = run(capsys, "split", FIXTURES / "flat_stuck.unitrade")
    assert code == 1 and out.startswith("not splittable")
    code, out, _ = run(capsys, "split", FIXTURES / "flat_splittable.unitrade")
    assert code == 0 and out == (FIXTURES / "flat_split.trade").read_text()
    target = tmp_path / "simplex.trade"
    code, out, _ = run(capsys, "split", FIXTURES / "simplex_union.unitrade", "--output", target)
    assert code == 0 and out == "splittable: volume 7\n"
    assert tradefile.read(target).to_trade().volume == 7
    code, _, err = run(capsys, "split", FIXTURES / "flat_split.trade")
    assert code == 2 and "unitrade" in err


def test_construct_examples(capsys):
    code, out, _ = run(capsys, "construct", "type-a", "--t", 2, "--i", 0, "--v", 6)
    assert code == 0 and tradefile.loads(out).to_trade().volume == 7
    code, out, _ = run(capsys, "construct", "simplex")
    assert out == (FIXTURES / "simplex_trade.trade").read_text()
    code, out, _ = run(capsys, "construct", "simplex", "--part", "c0")
    assert out == (FIXTURES / "simplex_c0.unitrade").read_text()
    code, _, err = run(capsys, "construct", "minimum", "--bases", "110,011")
    assert code == 2 and "110" in err and "011" in err and "intersect" in err
    code, _, err = run(capsys, "construct", "type-a", "--t", 2)
    assert code == 2 and "--i" in err


CONSTRUCT_CASES = {
    "minimum": ["--bases", "1100,0011", "--w", "1010"],
    "type-a": ["--t", "1", "--i", "0", "--v", "4"],
    "kasami-a": ["--r", "2", "--mu", "2", "--v", "5"],
    "kasami-b": ["--r", "2", "--nu", "3", "--v", "6"],
    "simplex": ["--part", "union"],
    "lift": ["--input", FIXTURES / "flat_split.trade"],
    # a trade merged with its own flip cancels to the empty trade
    "merge": ["--input", FIXTURES / "flat_split.trade", "--input", FIXTURES / "flat_split.trade",
              "--flip"],
    "translate": ["--input", FIXTURES / "type_a_t1_i0_v4.trade", "--w", "0110"],
    "dup-coordinate": ["--input", FIXTURES / "type_a_t2_i0_v6.trade", "--coordinate", "3"],
}


@pytest.mark.parametrize("kind", CONSTRUCT_KINDS)
@pytest.mark.parametrize("as_json", [False, True])
def test_construct_then_verify(kind, as_json, capsys, tmp_path):
    target = tmp_path / f"out.{kind}"
    extra = ["--json"] if as_json else []
    code, out, err = run(capsys, "construct", kind, *CONSTRUCT_CASES[kind], "--output", target, *extra)
    assert code == 0, err
    code, out, _ = run(capsys, "verify", target)
    assert code == 0 and out.startswith("ok\t")


def test_merge_without_flip_names_the_intersection(capsys):
    path = FIXTURES / "flat_split.trade"
    code, _, err = run(capsys, "construct", "merge", "--input", path, "--input", path)
    assert code == 2 and "intersect in {000,111}" in err


def test_classify_output(capsys):
    assert run(capsys, "classify", 9, 2)[:2] == (0, "allowed\tform3 i=0\n")
    assert run(capsys, "classify", 5, 2)[:2] == (0, "forbidden\n")
    code, out, _ = run(capsys, "classify", 68, 5, "--json")
    assert json.loads(out)["matches"] == [{"form": 2, "i": 2}, {"form": 4, "i": 2}]


def test_rm_dist_and_spectrum_output(capsys):
    assert run(capsys, "rm-dist", 1, 3)[:2] == (0, "0\t1\n4\t14\n8\t1\n")
    code, out, _ = run(capsys, "spectrum", 4, 1, 4)
    assert code == 0 and [line.split("\t")[0] for line in out.splitlines()] == ["2", "3", "4"]
    code, out, _ = run(capsys, "spectrum", 4, 1, 4, "--json")
    data = json.loads(out)
    assert [r["volume"] for r in data["volumes"]] == [2, 3, 4]
    assert all(r["verdict"] == "allowed" for r in data["volumes"])


def test_capacity_exit_code(capsys):
    assert run(capsys, "rm-dist", 4, 7)[0] == 3
    assert run(capsys, "spectrum", 7, 2, 40)[0] == 3


def test_bad_thread_count(capsys):
    assert run(capsys, "rm-dist", 1, 3, "--threads", 0)[0] == 2


@pytest.mark.parametrize("argv", [["rm-dist", "2", "6"], ["rm-dist", "3", "5"], ["spectrum", "4", "1", "8"],
                                  ["spectrum", "5", "3", "16", "--json"]])
def test_thread_count_does_not_change_output(argv, capsys):
    one = run(capsys, *argv, "--threads", 1)
    eight = run(capsys, *argv, "--threads", 8)
    assert one == eight and one[0] == 0


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "cubetrades", "classify", "9", "2"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout == "allowed\tform3 i=0\n"


def test_tradefile_write_json(tmp_path):
    f = tradefile.read(FIXTURES / "simplex_trade.trade")
    target = tmp_path / "x.json"
    tradefile.write(target, f, as_json=True)
    assert target.read_bytes() == (FIXTURES / "simplex_trade.trade.json").read_bytes()
    assert isinstance(tradefile.read(target), TradeFile)
