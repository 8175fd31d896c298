"""Command-line interface: flags, exit codes, JSON reports, TSV export."""

import json

import pytest

from thetakit.cli import EXIT_OK, EXIT_UNKNOWN_ID, EXIT_USAGE, format_complex, main, parse_complex
from thetakit.identities import builtin_catalog


def out_complex(text):
    """Read printed output values, which may use scientific notation."""
    return complex(text.strip()[:-1] + "j")


class TestComplexLiterals:
    @pytest.mark.parametrize(
        "text,value",
        [
            ("1", 1 + 0j),
            ("-2.5", -2.5 + 0j),
            ("1i", 1j),
            ("-1i", -1j),
            ("0.3+0.9i", 0.3 + 0.9j),
            ("-0.3-0.9i", -0.3 - 0.9j),
            ("−1i", -1j),
        ],
    )
    def test_accepted(self, text, value):
        assert parse_complex(text) == value

    @pytest.mark.parametrize("text", ["", "i", "1+i", "1x", "1e3", "0.3+0.9j", "1+2"])
    def test_rejected(self, text):
        with pytest.raises(ValueError):
            parse_complex(text)

    def test_round_trip_through_formatter(self):
        for z in (0.25 - 1.75j, 3 + 0j, -0.5j):
            assert parse_complex(format_complex(z)) == z


class TestEval:
    def test_odd_theta_at_zero(self, capsys):
        assert main(["eval", "--r", "1", "--u", "0", "--tau", "1i"]) == EXIT_OK
        out = capsys.readouterr().out.strip()
        assert abs(out_complex(out)) < 1e-12

    def test_spot_value(self, capsys):
        assert main(["eval", "--r", "3", "--u", "0", "--tau", "1i"]) == EXIT_OK
        out = capsys.readouterr().out.strip()
        assert abs(parse_complex(out) - 1.0864348112133082) < 1e-12

    def test_lower_half_plane_rejected(self, capsys):
        code = main(["eval", "--r", "3", "--u", "0", "--tau=-1i"])
        assert code == EXIT_USAGE
        assert "--tau" in capsys.readouterr().err

    def test_unicode_minus_tau_rejected_for_sign(self, capsys):
        # the literal parses (unicode minus is accepted) but violates Im > 0
        code = main(["eval", "--r", "3", "--u", "0", "--tau", "−1i"])
        assert code == EXIT_USAGE
        assert "--tau" in capsys.readouterr().err

    def test_malformed_complex_rejected(self, capsys):
        with pytest.raises(SystemExit) as err:
            main(["eval", "--r", "3", "--u", "0", "--tau", "nope"])
        assert err.value.code == EXIT_USAGE
        assert "--tau" in capsys.readouterr().err

    def test_characteristics_path(self, capsys):
        assert main(["eval", "--char", "0,0", "--u", "0", "--tau", "1i"]) == EXIT_OK
        out = capsys.readouterr().out.strip()
        assert abs(parse_complex(out) - 1.0864348112133082) < 1e-12

    def test_product_comparison(self, capsys):
        assert main(["eval", "--r", "2", "--u", "0.25", "--tau", "1i", "--product", "--json"]) == EXIT_OK
        payload = json.loads(capsys.readouterr().out)
        assert payload["difference"] < 1e-11
        assert out_complex(payload["series"]) == pytest.approx(
            out_complex(payload["product"]), rel=1e-10
        )


class TestVerify:
    def test_single_identity_passes(self, capsys):
        assert main(["verify", "--id", "B.I.2", "--trials", "3", "--seed", "7"]) == EXIT_OK
        out = capsys.readouterr().out
        assert "pass" in out and "B.I.2" in out

    def test_unknown_id(self, capsys):
        assert main(["verify", "--id", "NO.SUCH", "--trials", "1"]) == EXIT_UNKNOWN_ID
        assert "NO.SUCH" in capsys.readouterr().err

    def test_json_report_round_trip(self, tmp_path, capsys):
        path = tmp_path / "report.json"
        code = main(
            ["verify", "--id", "B.I.2", "--id", "TC.tc1", "--trials", "2",
             "--seed", "9", "--json", str(path)]
        )
        capsys.readouterr()
        assert code == EXIT_OK
        payload = json.loads(path.read_text())
        assert payload["seed"] == 9 and payload["trials"] == 2
        assert [r["id"] for r in payload["reports"]] == ["B.I.2", "TC.tc1"]
        for report in payload["reports"]:
            assert set(report) == {"id", "trials", "seed", "max_abs", "max_rel", "status"}
            assert report["status"] == "pass"

    def test_byte_identical_reports(self, tmp_path, capsys):
        paths = [tmp_path / "a.json", tmp_path / "b.json"]
        for path in paths:
            main(["verify", "--id", "R.I.1", "--trials", "2", "--seed", "7", "--json", str(path)])
            capsys.readouterr()
        assert paths[0].read_bytes() == paths[1].read_bytes()

    def test_stress_flag(self, capsys):
        code = main(
            ["verify", "--id", "B.I.4", "--trials", "3", "--seed", "2",
             "--stress", "--tol", "1e-8"]
        )
        capsys.readouterr()
        assert code == EXIT_OK


class TestCatalogCommand:
    def test_line_count_matches_catalog(self, capsys):
        assert main(["catalog"]) == EXIT_OK
        lines = capsys.readouterr().out.strip().splitlines()
        assert len(lines) == len(builtin_catalog())
        assert all(line.count("\t") == 2 for line in lines)

    def test_write_to_file(self, tmp_path, capsys):
        path = tmp_path / "catalog.tsv"
        assert main(["catalog", "--out", str(path)]) == EXIT_OK
        capsys.readouterr()
        assert len(path.read_text().strip().splitlines()) == len(builtin_catalog())


class TestZerosCommand:
    def test_theta1_row(self, capsys):
        assert main(["zeros", "--r", "1", "--tau", "1i", "--nmax", "1", "--mmax", "0"]) == EXIT_OK
        zs = {parse_complex(line) for line in capsys.readouterr().out.split()}
        assert zs == {-1 + 0j, 0j, 1 + 0j}

    def test_bad_range(self, capsys):
        assert main(["zeros", "--r", "1", "--tau", "1i", "--nmax", "-1"]) == EXIT_USAGE
        capsys.readouterr()


class TestReduceCommand:
    def test_inversion_word(self, capsys):
        assert main(["reduce", "--tau", "0.5i"]) == EXIT_OK
        out = capsys.readouterr().out
        assert "word       S" in out
        assert parse_complex(out.split()[3]) == 2j

    def test_with_argument(self, capsys):
        assert main(["reduce", "--tau", "0.9i", "--u", "3.1+1.8i", "--r", "4"]) == EXIT_OK
        out = capsys.readouterr().out
        assert "log_mult" in out and "index" in out


class TestFlagConflicts:
    def test_char_with_big_theta_rejected(self, capsys):
        code = main(["eval", "--char", "0,0", "--u", "0", "--tau", "1i", "--big-theta"])
        assert code == EXIT_USAGE
        capsys.readouterr()

    def test_char_with_product_rejected(self, capsys):
        code = main(["eval", "--char", "0,0", "--u", "0", "--tau", "1i", "--product"])
        assert code == EXIT_USAGE
        capsys.readouterr()
