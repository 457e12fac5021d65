import argparse
import json
import subprocess
import sys

import pytest

from distspec import cli, report, spectra


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_parse_params():
    assert cli.parse_params("m=4, n=3") == {"m": 4, "n": 3}
    for bad, msg in [("m", "name=value"), ("m=1,m=2", "twice"), ("m=x", "integer"), ("", "no parameters")]:
        with pytest.raises(argparse.ArgumentTypeError, match=msg):
            cli.parse_params(bad)


def test_spectrum_kpp_both(capsys):
    code, out, err = run(capsys, "spectrum", "--family", "kpp", "--params", "p=1,n=3", "--both")
    data = json.loads(out)
    assert code == 0 and err == ""
    assert data["integral"] and data["agreement"] and data["integer_roots"] == [[-1, 4], [4, 1]]


def test_spectrum_default_mode(capsys):
    code, out, _ = run(capsys, "spectrum", "--family", "wheel", "--params", "m=4,n=3")
    assert code == 0 and json.loads(out)["mode"] == "both"
    code, out, _ = run(capsys, "spectrum", "--family", "wheel", "--params", "m=4,n=3", "--matrix", "dl")
    assert code == 0 and json.loads(out)["mode"] == "oracle"
    code, _, err = run(capsys, "spectrum", "--family", "wheel", "--params", "m=4,n=3", "--matrix", "dl",
                       "--closed-form")
    assert code == 2 and "no closed form" in err


def test_spectrum_mismatch_exit(capsys, monkeypatch):
    monkeypatch.setattr(report, "closed_form_spectrum",
                        lambda family, kind, **p: spectra.dumbbell_distance_spectrum(as_printed=True, **p))
    code, out, err = run(capsys, "spectrum", "--family", "dumbbell", "--params", "m=2,n=3", "--both")
    assert code == 1 and "mismatch" in err
    assert json.loads(out)["agreement"] is False


def test_check_graph6(capsys):
    code, out, _ = run(capsys, "check", "--graph6", "C~", "--matrix", "dl", "--format", "csv")
    rows = out.strip().splitlines()[1:]
    assert code == 0 and [r.split(",")[2:5] for r in rows] == [["0", "0.0", "1"], ["4", "4.0", "3"]]


def test_check_errors(capsys):
    code, out, err = run(capsys, "check", "--graph6", "A?")
    assert code == 3 and out == "" and "disconnected" in err
    code, out, err = run(capsys, "check", "--graph6", "C~x")
    assert code == 2 and out == "" and "at byte 2" in err


def test_parameter_errors(capsys):
    code, out, err = run(capsys, "spectrum", "--family", "wheel", "--params", "m=0,n=3")
    assert code == 2 and out == "" and "m must be >= 1" in err
    code, _, err = run(capsys, "spectrum", "--family", "dumbbell", "--params", "m=1")
    assert code == 2 and "missing" in err


def test_usage_errors(capsys):
    code, out, err = run(capsys, "spectrum", "--family", "wheel", "--params", "m=1,n=3", "--bogus")
    assert code == 2 and out == "" and "usage:" in err
    code, _, err = run(capsys)
    assert code == 2 and "usage:" in err
    code, _, err = run(capsys, "search", "--theorem", "3")
    assert code == 2


def test_help_exits_zero(capsys):
    code, out, _ = run(capsys, "--help")
    assert code == 0 and "spectrum" in out


def test_global_options_either_side(capsys):
    a = run(capsys, "--format", "plain", "check", "--graph6", "C~")
    b = run(capsys, "check", "--graph6", "C~", "--format", "plain")
    assert a == b and a[0] == 0 and a[1].startswith("C~  [distance")


def test_search_t6(capsys):
    code, out, _ = run(capsys, "search", "--theorem", "6", "--threads", "2")
    data = json.loads(out)
    assert code == 0 and data["hit_count"] == 11 and data["agreement"]
    assert "elapsed" not in data
    code, out, _ = run(capsys, "--timing", "search", "--theorem", "6")
    assert "elapsed" in json.loads(out)


def test_search_thread_stability(capsys):
    outs = {run(capsys, "search", "--theorem", "1", "--threads", t)[1] for t in ("1", "3")}
    assert len(outs) == 1


def test_search_bound_too_small(capsys):
    code, _, err = run(capsys, "search", "--theorem", "1", "--max", "5")
    assert code == 2 and "max_m must be >= 12" in err


def test_corpus_file(capsys, tmp_path):
    f = tmp_path / "graphs.g6"
    f.write_text("@\nA_\nBw\nC~\nD~{\nDhc\n")
    code, out, _ = run(capsys, "corpus", "--file", str(f))
    data = json.loads(out)
    assert code == 0 and data["total"] == 6 and data["integral_count"] == 5
    assert [r["integral"] for r in data["records"]] == [True] * 5 + [False]


def test_corpus_exit_codes(capsys, tmp_path):
    f = tmp_path / "mixed.g6"
    f.write_text("C~\nA?\n")
    code, out, err = run(capsys, "corpus", "--file", str(f))
    assert code == 3 and json.loads(out)["error_count"] == 1 and "line 2" in err
    f.write_text("C~\nA?\nC~x\n")
    assert run(capsys, "corpus", "--file", str(f))[0] == 2
    code, _, err = run(capsys, "corpus", "--file", str(tmp_path / "missing.g6"))
    assert code == 2 and "cannot read" in err


def test_module_entry_point_stdin():
    out = subprocess.run([sys.executable, "-m", "distspec", "corpus", "--file", "-", "--format", "plain"],
                         input="C~\nDhc\n", capture_output=True, text=True)
    assert out.returncode == 0
    assert out.stdout.strip().splitlines()[-1] == "1 of 2 graphs are distance-integral"
