import json
from fractions import Fraction as F

import pytest

from echspec.cli import (
    CLIError,
    load_cache,
    main,
    parse_complex,
    parse_range,
    parse_rational,
)
from echspec.spectrum import Ellipsoid


class TestParsers:
    def test_rational_forms(self):
        assert parse_rational("3/7") == F(3, 7)
        assert parse_rational("5") == F(5)
        assert parse_rational(" 2/3 ") == F(2, 3)

    @pytest.mark.parametrize("bad", ["1.5", "2e3", "1E2", "x", "1/0"])
    def test_rational_rejects(self, bad):
        with pytest.raises(CLIError):
            parse_rational(bad)

    def test_range(self):
        assert parse_range("3..10") == (3, 10)
        assert parse_range("0..0") == (0, 0)
        for bad in ["5..3", "abc", "1-2"]:
            with pytest.raises(CLIError):
                parse_range(bad)

    def test_complex(self):
        assert parse_complex("2.5") == complex(2.5, 0.0)
        assert parse_complex("1,-3") == complex(1.0, -3.0)
        with pytest.raises(CLIError):
            parse_complex("1,2,3")


class TestCapacitiesCommand:
    def test_csv_output(self, capsys):
        assert main(["capacities", "-a", "1", "-b", "1", "-k", "0..5"]) == 0
        lines = capsys.readouterr().out.strip().splitlines()
        assert lines[0] == "k,c_num,c_den,c_float"
        assert lines[1] == "0,0,1,0"
        assert [ln.split(",")[1] for ln in lines[1:]] == ["0", "1", "1", "2", "2", "2"]

    def test_json_output(self, capsys):
        assert main(
            ["capacities", "-a", "2/3", "-b", "5/7", "-k", "3..4", "--format", "json"]
        ) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["config"]["a"] == "2/3"
        assert [r["k"] for r in doc["rows"]] == [3, 4]
        for r in doc["rows"]:
            assert F(r["c_num"], r["c_den"]) > 0

    def test_exact_rationals_only(self, capsys):
        main(["capacities", "-a", "1/3", "-b", "1", "-k", "1..1"])
        line = capsys.readouterr().out.strip().splitlines()[1]
        k, num, den, _ = line.split(",")
        assert (k, num, den) == ("1", "1", "3")


class TestCache:
    def test_round_trip_and_reuse(self, tmp_path, capsys):
        cache = str(tmp_path / "spec.cache")
        args = ["capacities", "-a", "3/2", "-b", "5/7", "-k", "0..50", "--cache", cache]
        assert main(args) == 0
        first = capsys.readouterr().out
        vals = load_cache(cache, Ellipsoid(F(3, 2), F(5, 7)))
        assert vals is not None and len(vals) == 51
        mtime = (tmp_path / "spec.cache").stat().st_mtime_ns
        assert main(args) == 0
        second = capsys.readouterr().out
        assert first == second
        assert (tmp_path / "spec.cache").stat().st_mtime_ns == mtime

    def test_cache_ignored_for_other_ellipsoid(self, tmp_path, capsys):
        cache = str(tmp_path / "spec.cache")
        main(["capacities", "-a", "1", "-b", "1", "-k", "0..10", "--cache", cache])
        capsys.readouterr()
        assert main(["capacities", "-a", "1", "-b", "2", "-k", "0..10", "--cache", cache]) == 0
        lines = capsys.readouterr().out.strip().splitlines()
        assert lines[2].startswith("1,1,1")
        assert load_cache(cache, Ellipsoid(1, 2)) is not None

    def test_corrupt_cache_detected(self, tmp_path):
        cache = tmp_path / "spec.cache"
        cache.write_text("garbage header\nk,num,den\n")
        with pytest.raises(CLIError):
            load_cache(str(cache), Ellipsoid(1, 1))


class TestOtherCommands:
    def test_weyl(self, capsys):
        assert main(["weyl", "-a", "1", "-b", "1", "-R", "10"]) == 0
        lines = capsys.readouterr().out.strip().splitlines()
        assert lines[1] == "10,1,66,11"

    def test_weyl_fit_summary(self, capsys):
        R = ",".join(str(k) for k in range(50, 401, 50))
        assert main(["weyl", "-a", "1", "-b", "1", "-R", R]) == 0
        captured = capsys.readouterr()
        fit_lines = [ln for ln in captured.out.splitlines() if ln.startswith("# fit_coefficient=")]
        assert len(fit_lines) == 1
        assert abs(float(fit_lines[0].split("=")[1]) - 0.5) < 0.01
        assert "factor of about 2" in captured.err

    def test_dk(self, capsys):
        assert main(["dk", "-a", "1", "-b", "1", "-k", "1..100"]) == 0
        lines = capsys.readouterr().out.strip().splitlines()
        j3 = [ln for ln in lines if ln.startswith("3,")][0]
        assert abs(float(j3.split(",")[3]) - (2 - 6**0.5)) < 1e-12

    def test_zeta(self, capsys):
        assert main(["zeta", "-a", "1", "-b", "1", "-s", "3,0", "--convention", "interior"]) == 0
        lines = capsys.readouterr().out.strip().splitlines()
        val = float(lines[1].split(",")[2])
        # zeta(2) - zeta(3) for the diagonal collapse on the square
        assert abs(val - (1.6449340668482264 - 1.2020569031595943)) < 1e-9

    def test_residues(self, capsys):
        assert main(["residues", "-a", "1", "-b", "2"]) == 0
        captured = capsys.readouterr()
        lines = captured.out.strip().splitlines()
        row = [ln for ln in lines if ln.startswith("interior,2,")][0]
        assert abs(float(row.split(",")[2]) - 0.5) < 1e-7
        assert any(ln.startswith("# expected_res_s2=0.5") for ln in lines)

    def test_envelope(self, capsys):
        assert main(["envelope", "-k", "4..6"]) == 0
        lines = capsys.readouterr().out.strip().splitlines()
        assert lines[0].startswith("j,r1,r2,r3")
        assert len([ln for ln in lines if not ln.startswith("#")]) == 4


class TestExitCodes:
    def test_usage_error(self, capsys):
        assert main(["capacities", "-a", "1.5", "-b", "1", "-k", "0..3"]) == 2
        assert "decimal input rejected" in capsys.readouterr().err

    def test_domain_error(self, capsys):
        assert main(["zeta", "-a", "1", "-b", "1", "-s", "1,0"]) == 1
        assert "error" in capsys.readouterr().err

    def test_success(self, capsys):
        assert main(["capacities", "-a", "1", "-b", "1", "-k", "0..1"]) == 0
        capsys.readouterr()
