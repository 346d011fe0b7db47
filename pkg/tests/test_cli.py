import json
import subprocess
import sys
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qmzv.cli import ComplexValue, OutputRecord, decode_value, encode_value, main
from qmzv.exact import RatFunc


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_renorm_rational(capsys):
    code, out, _ = run(capsys, "renorm", "-k", "-1,-3", "--t", "1")
    assert code == 0 and out == "121/94080\n"


def test_renorm_symbolic(capsys):
    code, out, _ = run(capsys, "renorm", "-k", "-1,-3", "--t", "sym")
    assert code == 0
    assert out.strip() == "(166t^2+166t+31)/(129024t^2+129024t+24192)"
    # 8064 (4t+3)(4t+1) expanded
    assert RatFunc((31, 166, 166), (24192, 129024, 129024)) == RatFunc((31, 166, 166), (8064 * 3, 8064 * 16, 8064 * 16))


def test_renorm_other_t_forms(capsys):
    _, a, _ = run(capsys, "renorm", "-k", "-1,-3", "--t", "3/2")
    _, b, _ = run(capsys, "renorm", "-k", "-1,-3", "--t", "1.5")
    assert a == b
    assert Fraction(a.strip()) == RatFunc((31, 166, 166), (24192, 129024, 129024)).evaluate(Fraction(3, 2))
    code, c, _ = run(capsys, "renorm", "-k", "-1", "--t", "2+1i")
    assert code == 0 and c.startswith("-0.08333333")


def test_renorm_json_roundtrip(capsys):
    code, out, _ = run(capsys, "renorm", "-k", "-3,-1", "--format", "json")
    assert code == 0
    rec = OutputRecord.from_json(out)
    assert rec.signature == (-3, -1) and rec.t == "sym" and rec.mode == "log"
    assert rec.value.evaluate(1) == Fraction(-559, 282240)
    assert OutputRecord.from_json(rec.to_json()) == rec


def test_renorm_one_minus_q(capsys):
    _, out, _ = run(capsys, "renorm", "-k", "-1", "--mode", "1mq")
    assert out.strip() != "-1/12"
    assert out.strip() == str(RatFunc((1, -1, -1), (0, 12, 12)))


@pytest.mark.parametrize("argv", [
    ["renorm", "-k", "0"],
    ["renorm", "-k", "1,3"],
    ["renorm", "-k", "-1,x"],
    ["renorm", "-k", "-1", "--t", "banana"],
    ["renorm", "-k", "-1", "--guard", "-1"],
    ["renorm", "-k", "-1,-3", "--t", "-1/4"],
    ["table", "--max", "0"],
    ["numeric", "-k", "0,-1", "--q", "0.5"],
    ["numeric", "-k", "-1", "--q", "2"],
    ["frobnicate"],
])
def test_usage_errors_exit_2(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2
    assert out == ""
    assert err


def test_insufficient_truncation_exit_3(capsys, monkeypatch):
    import qmzv.cli as cli

    monkeypatch.setattr(cli, "truncation_order", lambda sig, guard=2: 1)
    code, _, err = run(capsys, "renorm", "-k", "-1,-3")
    assert code == 3 and "truncation" in err


def test_table_csv(capsys):
    code, out, _ = run(capsys, "table", "--max", "1", "--t", "1")
    assert code == 0 and out == "1/288\n"
    _, out, _ = run(capsys, "table", "--max", "2", "--t", "1/2")
    rows = [line.split(",") for line in out.strip().splitlines()]
    assert len(rows) == 2 and all(len(r) == 2 for r in rows)
    assert rows[0][0] == "1/288" and rows[1][1] == "0"
    vals = [[Fraction(c) for c in r] for r in rows]
    assert vals[0][1] == vals[1][0] == Fraction(-1, 240)


def test_table_max_6(capsys):
    code, out, _ = run(capsys, "table", "--max", "6", "--t", "1")
    cells = [line.split(",") for line in out.strip().splitlines()]
    assert code == 0 and len(cells) == 6
    assert cells[2][4] == "941347763/1150753443840"
    assert cells[3][5] == "-199275989809861/128121575662080000"
    assert cells[5][3] == "199275989809861/128121575662080000"


def test_table_json(capsys):
    _, out, _ = run(capsys, "table", "--max", "2", "--format", "json")
    data = json.loads(out)
    assert [[decode_value(v) for v in row] for row in data["rows"]] == [
        [Fraction(1, 288), Fraction(-1, 240)], [Fraction(-1, 240), Fraction(0)]]


def test_series(capsys):
    code, out, _ = run(capsys, "series", "-k", "-1", "--order", "4", "--t", "1")
    assert code == 0 and out == "1/2 z^-2  -1/12  7/720 z^2  -31/30240 z^4\n"
    _, out, _ = run(capsys, "series", "-k", "-1", "--order", "4", "--t", "1", "--kind", "minus")
    assert out.strip() == "-1/2 z^-2"
    _, out, _ = run(capsys, "series", "-k", "-1,-3", "--order", "7", "--t", "1", "--kind", "plus")
    assert out.startswith("121/94080  1/84 z")


def test_check(capsys):
    code, out, _ = run(capsys, "check", "--max-weight", "4")
    assert code == 0
    lines = out.strip().splitlines()
    assert all(line.startswith("PASS") for line in lines[:-1])
    assert lines[-1].endswith("suites passed")


def test_check_failure_exits_1(capsys, monkeypatch):
    from qmzv import checks

    def broken(*args, **kwargs):
        r = checks.CheckResult("always fails")
        r.fail("y-1")
        return [r]

    monkeypatch.setattr(checks, "run_all", broken)
    code, out, _ = run(capsys, "check", "--max-weight", "2")
    assert code == 1 and "FAIL always fails" in out and "y-1" in out


def test_numeric(capsys):
    code, out, _ = run(capsys, "numeric", "-k", "-2", "--q", "0.5", "--t", "1", "--cutoff", "50")
    assert code == 0
    value, bound = out.strip().split(" +- ")
    assert float(bound) < 1e-20
    # sum q^2m (1 - q^m)^2 = sum (q^2m - 2 q^3m + q^4m) at q = 1/2
    assert abs(float(value) - (1 / 3 - 2 / 7 + 1 / 15)) < 1e-15
    code, out, _ = run(capsys, "numeric", "-k", "-1,-3", "--q", "0.9", "--t", "1", "--cutoff", "500",
                       "--format", "json")
    assert code == 0 and json.loads(out)["cutoff"] == 500


def test_cache_second_run_is_identical_and_free(capsys, tmp_path):
    cache = str(tmp_path / "values.json")
    argv = ["table", "--max", "3", "--t", "1", "--cache", cache, "--verbose"]
    _, first, err1 = run(capsys, *argv)
    _, second, err2 = run(capsys, *argv)
    assert first == second
    assert "psi=0 birkhoff=0" in err2 and "cache_misses=0" in err2
    assert "cache_hits=0" in err1
    _, sym, _ = run(capsys, "renorm", "-k", "-1,-3", "--cache", cache, "--verbose")
    assert sym.strip() == "(166t^2+166t+31)/(129024t^2+129024t+24192)"


def test_cache_version_mismatch_ignored(capsys, tmp_path):
    path = tmp_path / "values.json"
    path.write_text(json.dumps({"version": "old", "entries": {"log|1,3|8": {"type": "rational", "num": "1", "den": "1"}}}))
    _, out, err = run(capsys, "renorm", "-k", "-1,-3", "--t", "1", "--cache", str(path), "--verbose")
    assert out == "121/94080\n"
    assert "cache_hits=0" in err


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "qmzv.cli", "renorm", "-k", "-5,-1", "--t", "1"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout == "110879/53222400\n"


fractions = st.fractions(max_denominator=10 ** 30).filter(lambda f: abs(f.numerator) < 10 ** 40)
small_polys = st.lists(st.integers(-10 ** 20, 10 ** 20), min_size=1, max_size=4)


@settings(max_examples=60, deadline=None)
@given(st.one_of(
    fractions,
    st.builds(lambda n, a: RatFunc(tuple(n), (a, 1)), small_polys, st.integers(1, 9)),
    st.builds(lambda r, i: ComplexValue(r, i, 10), st.from_regex(r"-?\d\.\d{9}", fullmatch=True),
              st.from_regex(r"-?\d\.\d{9}", fullmatch=True)),
))
def test_value_json_roundtrip(v):
    assert decode_value(json.loads(json.dumps(encode_value(v)))) == (
        v.constant_value() if isinstance(v, RatFunc) and v.is_constant() else v)


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(-6, -1), min_size=1, max_size=3), fractions, st.integers(0, 30))
def test_record_json_roundtrip(sig, value, order):
    rec = OutputRecord(tuple(sig), "log", "3/2", value, order)
    assert OutputRecord.from_json(rec.to_json()) == rec
