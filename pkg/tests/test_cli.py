import json
import shutil
import subprocess
import sys

import pytest

from etalift.cli import main
from etalift.forms import expand_eta_quotient

META5 = '{"lambda":2,"N":1,"psi":"1","r":5}'


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def eta5_file(tmp_path):
    s = expand_eta_quotient("1^5", 3000)
    path = tmp_path / "eta5.json"
    path.write_text(json.dumps({"series": s.to_json()}))
    return str(path)


def test_expand(capsys):
    code, out, _ = run(capsys, "expand", "--eta", "1^5", "--prec", "5")
    obj = json.loads(out)
    assert code == 0 and obj["series"]["coeffs"] == [1, -5, 5, 10, -15]
    assert obj["weight"] == "5/2" and obj["series"]["valuation"] == 5


def test_expand_mod_and_deterministic(capsys):
    a = run(capsys, "expand", "--eta", "1^2 7^1", "--prec", "30", "--modulus", "13")
    b = run(capsys, "expand", "--eta", "1^2 7^1", "--prec", "30", "--modulus", "13")
    assert a == b and json.loads(a[1])["series"]["modulus"] == 13


def test_hecke_tp2(capsys, eta5_file):
    code, out, _ = run(capsys, "hecke", "--op", "tp2", "--p", "5", "--meta", META5, "--in", eta5_file)
    coeffs = json.loads(out)["series"]["coeffs"]
    assert code == 0 and coeffs[:5] == [-6, 30, -30, -60, 90]


def test_hecke_bad_prime(capsys, eta5_file):
    code, _, err = run(capsys, "hecke", "--op", "tp2", "--p", "3", "--meta", META5, "--in", eta5_file)
    assert code == 1 and json.loads(err)["status"] == "error"


def test_lift_and_compare(capsys, eta5_file):
    code, out, _ = run(capsys, "lift", "--t", "5", "--meta", META5, "--in", eta5_file, "--prec", "6")
    obj = json.loads(out)
    assert code == 0 and obj["series"]["coeffs"] == [1, -2, -3, 4, 6, 6]
    assert obj["target_level"] == 6 and obj["eps"] == [1, 1] and not obj["wrong_class"]
    code, out, _ = run(capsys, "compare-lifts", "--t", "5", "--meta", META5, "--in", eta5_file,
                       "--prec", "20")
    assert code == 0 and json.loads(out)["max_discrepancy"] == 0


def test_lift_wrong_class(capsys, eta5_file):
    code, out, _ = run(capsys, "lift", "--t", "1", "--meta", META5, "--in", eta5_file, "--prec", "5")
    assert code == 0 and json.loads(out)["wrong_class"]


def test_verify_example(capsys):
    code, out, _ = run(capsys, "verify-example", "--n", "2", "--prec", "60")
    assert code == 0 and "FAIL" not in out and out.rstrip().endswith("checks passed")


def test_check_multiplier(capsys):
    code, out, _ = run(capsys, "check-multiplier", "--which", "nu-v-t", "--r", "9", "--t", "7",
                       "--samples", "50")
    assert code == 0 and out.splitlines()[1].endswith("pass")
    code, out, _ = run(capsys, "check-multiplier", "--which", "eta", "--r", "5", "--samples", "5")
    assert code == 0


def test_build_fl_and_cphi(capsys):
    code, out, _ = run(capsys, "build-fl", "--ell", "7", "--prec", "30")
    assert code == 0 and json.loads(out)["zero"]
    code, out, _ = run(capsys, "cphi", "--m", "2", "--prec", "8")
    assert json.loads(out)["series"]["coeffs"] == [1, 4, 9, 20, 42, 80, 147, 260]


def test_scan_and_table(capsys):
    code, out, _ = run(capsys, "scan-congruence", "--Q", "97", "--eps", "-1", "--nmax", "40")
    assert code == 0 and out.splitlines()[1].endswith("pass")
    code, _, err = run(capsys, "scan-congruence", "--Q", "101", "--nmax", "40")
    assert code == 1 and json.loads(err)["status"] == "fail"
    code, out, _ = run(capsys, "table", "--lmax", "200")
    assert out.splitlines() == ["eps_Q,Q", '1,"103, 109"', '-1,"97, 191"']


def test_suitability(capsys):
    code, out, _ = run(capsys, "suitability", "--k", "4", "--ell", "17")
    obj = json.loads(out)
    assert code == 0 and obj["suitable"] is True


def test_acceptance_subcommand(capsys):
    code, out, _ = run(capsys, "acceptance", "--criterion", "2")
    assert code == 0 and "criterion  2 PASS" in out


def test_out_option(capsys, tmp_path):
    dest = tmp_path / "out.json"
    code, out, _ = run(capsys, "--out", str(dest), "expand", "--eta", "1^1", "--prec", "3")
    assert code == 0 and out == ""
    assert json.loads(dest.read_text())["series"]["coeffs"] == [1, -1, -1]


def test_usage_errors():
    with pytest.raises(SystemExit) as exc:
        main(["build-fl", "--ell", "5"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 2


def test_console_script():
    exe = shutil.which("etalift")
    cmd = [exe] if exe else [sys.executable, "-m", "etalift.cli"]
    res = subprocess.run(cmd + ["expand", "--eta", "1^5", "--prec", "3"], capture_output=True, text=True)
    assert res.returncode == 0 and json.loads(res.stdout)["series"]["coeffs"] == [1, -5, 5]
