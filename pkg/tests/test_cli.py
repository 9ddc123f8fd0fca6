import json
import subprocess
import sys

import pytest

from palctl.cli import run
from palctl.complexity import ComplexityProfile


def call(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_generate(capsys):
    assert call(capsys, "generate", "--source", "period-doubling", "--length", "8") == (0, "01000101\n", "")


def test_generate_instructions_and_cf(capsys):
    code, out, _ = call(capsys, "generate", "--source", "paperfolding", "--instructions", "0(01)",
                        "--length", "16")
    code2, out2, _ = call(capsys, "generate", "--source", "paperfolding-classical", "--length", "16")
    assert code == code2 == 0 and out == out2
    _, fib, _ = call(capsys, "generate", "--source", "sturmian", "--cf", "1,1,1,...", "--length", "13")
    _, fib2, _ = call(capsys, "generate", "--source", "fibonacci", "--length", "13")
    assert fib == fib2 == "0100101001001\n"


def test_complexity_fibonacci_csv(capsys):
    code, out, _ = call(capsys, "complexity", "--source", "fibonacci", "--max-k", "10", "--format", "csv")
    assert code == 0
    profile = ComplexityProfile.from_csv(out)
    assert list(profile.fac[1:]) == [k + 1 for k in range(1, 11)]
    assert list(profile.pal[1:]) == [2 if k % 2 else 1 for k in range(1, 11)]
    assert profile.to_csv() == out


def test_budget_exceeded_gives_unstable_rows(capsys):
    code, out, _ = call(capsys, "complexity", "--source", "champernowne-binary", "--max-k", "20",
                        "--budget", "4096", "--format", "csv")
    assert code == 0
    profile = ComplexityProfile.from_csv(out)
    assert not profile.stable[20] and profile.stable[1]


def test_budget_below_twice_k_is_usage_error(capsys):
    with pytest.raises(SystemExit) as e:
        run(["complexity", "--source", "fibonacci", "--max-k", "100", "--budget", "150"])
    assert e.value.code == 2


def test_env_budget(capsys, monkeypatch):
    monkeypatch.setenv("PALCTL_BUDGET", "4096")
    _, out, _ = call(capsys, "complexity", "--source", "chacon", "--max-k", "8", "--format", "json")
    assert json.loads(out)["prefix_len"] == 4096


def test_periods(capsys):
    code, out, _ = call(capsys, "periods", "--word", "01101")
    assert code == 0 and "period: 3" in out


def test_palindromes_json(capsys):
    code, out, _ = call(capsys, "palindromes", "--source", "period-doubling", "--max-k", "7",
                        "--format", "json")
    assert code == 0
    found = [p["k"] for p in json.loads(out)["palindromes"]]
    assert [found.count(k) for k in range(1, 8)] == [2, 1, 3, 0, 4, 0, 3]


def test_classp_builtin_file(capsys, tmp_path):
    f = tmp_path / "pd.txt"
    f.write_text("alphabet: 0 1\nrule: 0 -> 01\nrule: 1 -> 00\nseed: 0\n", encoding="utf-8")
    code, out, _ = call(capsys, "classp", "--file", str(f), "--format", "json")
    assert code == 0 and '"p": "0"' in out


def test_malformed_file_exit_2(capsys, tmp_path):
    f = tmp_path / "bad.txt"
    f.write_text("alphabet: a b\nrule: a -> a b\nrule: b -> b x a\n", encoding="utf-8")
    code, out, err = call(capsys, "classp", "--file", str(f))
    assert code == 2 and out == ""
    assert f"{f}:3:" in err


def test_verify_exit_codes(capsys, tmp_path):
    code, out, _ = call(capsys, "verify", "--check", "droubay-pirillo", "--source", "fibonacci",
                        "--k-max", "20")
    assert code == 0 and json.loads(out)["status"] == "pass"
    code, out, _ = call(capsys, "verify", "--check", "droubay-pirillo", "--source", "period-doubling",
                        "--k-max", "20")
    assert code == 1 and json.loads(out)["witness"]["k"] == 3
    code, _, _ = call(capsys, "verify", "--check", "general", "--source", "fibonacci")
    assert code == 2
    dest = tmp_path / "r.json"
    code, out, _ = call(capsys, "verify", "--check", "scrambler", "--out", str(dest))
    assert code == 0 and out == "" and json.loads(dest.read_text())["status"] == "pass"


def test_unknown_source(capsys):
    code, _, err = call(capsys, "generate", "--source", "nope", "--length", "3")
    assert code == 2 and "nope" in err


def test_byte_identical_output():
    argv = [sys.executable, "-m", "palctl", "complexity", "--source", "rudin-shapiro",
            "--max-k", "24", "--format", "json", "--ratios"]
    runs = [subprocess.run(argv, capture_output=True, check=True).stdout for _ in range(2)]
    assert runs[0] == runs[1] and runs[0]


def test_csv_ratio_columns(capsys):
    code, out, _ = call(capsys, "complexity", "--source", "period-doubling", "--max-k", "5", "--ratios")
    assert code == 0
    header, *rows = out.splitlines()
    assert header.endswith(",k_pal_over_fac,pal_squared_over_fac")
    assert rows[2].endswith(",9/5,9/5")
    assert list(ComplexityProfile.from_csv(out).pal[1:]) == [2, 1, 3, 0, 4]
