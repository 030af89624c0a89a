import json

import pytest

from linesurf.cli import main
from linesurf.serialize import (
    SchemaError,
    decimal_str,
    load_custom_lines,
    load_custom_profile,
)

SCHUR_PROFILE = {"n": 4, "d": 64, "t": {"2": 336, "3": 64, "4": 8}}
BAD_SCHUR_PROFILE = {"n": 4, "d": 64, "t": {"2": 192, "3": 64, "4": 8}}


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestDecimalRendering:
    def test_truncates_toward_zero(self):
        from fractions import Fraction

        assert decimal_str(Fraction(-128, 51), 3) == "-2.509"
        assert decimal_str(Fraction(-27, 11), 3) == "-2.454"
        assert decimal_str(Fraction(-8), 3) == "-8.000"
        assert decimal_str(Fraction(5, 4), 2) == "1.25"
        assert decimal_str(Fraction(1, 3), 0) == "0"


class TestAnalyze:
    def test_fermat_cubic_table(self, capsys):
        code, out, _ = run(capsys, "analyze", "--surface", "fermat", "--degree", "3")
        assert code == 0
        assert "-27/11" in out
        assert "inapplicable" in out

    def test_schur_decimal(self, capsys):
        code, out, _ = run(capsys, "analyze", "--surface", "schur", "--format", "json")
        assert code == 0
        payload = json.loads(out)
        assert payload["h_linear"] == {"exact": "-128/51", "decimal": "-2.509"}
        assert payload["miyaoka"]["holds"] is True

    def test_from_lines_matches_formula(self, capsys):
        code, direct, _ = run(
            capsys, "analyze", "--surface", "fermat", "--degree", "3", "--format", "csv"
        )
        assert code == 0
        code, scanned, _ = run(
            capsys,
            "analyze",
            "--surface",
            "fermat",
            "--degree",
            "3",
            "--from-lines",
            "--format",
            "csv",
        )
        assert code == 0
        assert direct == scanned

    def test_no_singular_points_is_domain_error(self, capsys, tmp_path):
        path = tmp_path / "empty.json"
        path.write_text(json.dumps({"n": 4, "d": 2, "t": {}}))
        code, _, err = run(
            capsys, "analyze", "--surface", "custom", "--profile", str(path)
        )
        assert code == 2
        assert "s = 0" in err


class TestProfileAndCatalog:
    def test_profile_rams(self, capsys):
        code, out, _ = run(
            capsys, "profile", "--surface", "rams", "--degree", "6", "--format", "json"
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["d"] == 28 and payload["t"] == {"2": 52}

    def test_catalog_counts(self, capsys):
        code, out, _ = run(
            capsys, "catalog", "--surface", "fermat", "--degree", "3", "--format", "json"
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["d"] == 27 and len(payload["lines"]) == 27
        assert payload["conductor"] == 6

    def test_catalog_needs_explicit_surface(self, capsys):
        code, _, err = run(capsys, "profile", "--surface", "cubic")
        assert code == 1
        assert "--eckardt" in err

    def test_catalog_csv(self, capsys):
        code, out, _ = run(
            capsys, "catalog", "--surface", "fermat", "--degree", "3", "--format", "csv"
        )
        assert code == 0
        lines = out.strip().split("\n")
        assert lines[0] == "index,point_1,point_2,plucker"
        assert len(lines) == 28

    def test_catalog_singular_points(self, capsys):
        code, out, _ = run(
            capsys,
            "catalog", "--surface", "fermat", "--degree", "3",
            "--singular", "--format", "json",
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["meeting_pairs"] == 135
        assert len(payload["points"]) == 99
        mults = sorted({p["multiplicity"] for p in payload["points"]})
        assert mults == [2, 3]
        assert all(len(p["lines"]) == p["multiplicity"] for p in payload["points"])


class TestVerify:
    def test_schur_valency_passes(self, capsys, tmp_path):
        path = tmp_path / "schur.json"
        path.write_text(json.dumps(SCHUR_PROFILE))
        code, out, _ = run(
            capsys,
            "verify",
            "--surface",
            "custom",
            "--profile",
            str(path),
            "--valency",
            "18",
        )
        assert code == 0
        assert "valency_18" in out and "FAIL" not in out

    def test_bad_schur_valency_fails(self, capsys, tmp_path):
        path = tmp_path / "bad_schur.json"
        path.write_text(json.dumps(BAD_SCHUR_PROFILE))
        code, out, _ = run(
            capsys,
            "verify",
            "--surface",
            "custom",
            "--profile",
            str(path),
            "--valency",
            "18",
        )
        assert code == 0  # the command ran; the check itself reports FAIL
        assert "FAIL" in out

    def test_fermat_identities(self, capsys):
        code, out, _ = run(capsys, "verify", "--surface", "fermat", "--degree", "3")
        assert code == 0
        for name in ("multiplicity_sum", "point_count", "meeting_pairs", "on_surface"):
            assert name in out
        assert "FAIL" not in out


class TestBound:
    def test_bauer_bound(self, capsys, tmp_path):
        path = tmp_path / "bauer.json"
        path.write_text(json.dumps({"n": 4, "d": 16, "t": {"4": 8}}))
        code, out, _ = run(
            capsys, "bound", "--surface", "custom", "--profile", str(path),
            "--format", "json",
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["h_lower_bound"] == "-9"
        assert payload["miyaoka"] == {"lhs": 64, "rhs": 72, "holds": True}

    def test_cubic_is_inapplicable(self, capsys):
        code, _, err = run(capsys, "bound", "--surface", "cubic", "--eckardt", "18")
        assert code == 2
        assert "n >= 4" in err


class TestSweep:
    def test_fermat_csv_shape(self, capsys):
        code, out, _ = run(
            capsys, "sweep", "--surface", "fermat", "--degrees", "3:12",
            "--format", "csv",
        )
        assert code == 0
        lines = out.strip().split("\n")
        assert lines[0] == "n,d,s,t,h_exact,h_decimal,miyaoka_lhs,miyaoka_rhs,h_bound"
        assert len(lines) == 11
        from fractions import Fraction

        h_values = [Fraction(line.split(",")[4]) for line in lines[1:]]
        assert all(b < a for a, b in zip(h_values, h_values[1:]))
        assert all(h > -3 for h in h_values)

    def test_cubic_sweep(self, capsys):
        code, out, _ = run(
            capsys, "sweep", "--surface", "cubic", "--eckardt-range", "0:18",
            "--format", "csv",
        )
        assert code == 0
        assert len(out.strip().split("\n")) == 20

    def test_rams_sweep(self, capsys):
        code, out, _ = run(
            capsys, "sweep", "--surface", "rams", "--degrees", "6:20",
            "--format", "csv",
        )
        assert code == 0
        lines = out.strip().split("\n")
        assert len(lines) == 16
        from fractions import Fraction

        h_values = [Fraction(line.split(",")[4]) for line in lines[1:]]
        assert all(b < a for a, b in zip(h_values, h_values[1:]))

    def test_places_flag(self, capsys):
        code, out, _ = run(
            capsys, "analyze", "--surface", "schur", "--format", "json",
            "--places", "6",
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["h_linear"]["decimal"] == "-2.509803"

    def test_bad_range_is_usage_error(self, capsys):
        code, _, err = run(capsys, "sweep", "--surface", "fermat", "--degrees", "12")
        assert code == 1
        assert "A:B" in err


class TestSearches:
    def test_search_bauer(self, capsys):
        code, out, _ = run(
            capsys,
            "search-bauer",
            "--surface", "fermat", "--degree", "4", "--size", "16",
            "--format", "json",
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["solutions"]
        first = payload["solutions"][0]
        assert len(first["lines"]) == 16
        assert first["profile"]["t"] == {"4": 8}
        assert first["h_linear"] == "-8"

    def test_search_bauer_needs_lines(self, capsys):
        code, _, err = run(
            capsys, "search-bauer", "--surface", "custom", "--size", "16"
        )
        assert code == 1
        assert "--lines" in err

    def test_search_extremal(self, capsys):
        code, out, _ = run(
            capsys,
            "search-extremal",
            "--degree", "4", "--num-lines", "16", "--k-max", "4",
            "--limit", "5", "--format", "json",
        )
        assert code == 0
        payload = json.loads(out)
        assert "realizable" in payload["note"]
        assert len(payload["profiles"]) == 5

    def test_search_extremal_degree_gate(self, capsys):
        code, _, err = run(
            capsys, "search-extremal", "--degree", "3", "--num-lines", "5", "--k-max", "3"
        )
        assert code == 2
        assert "n >= 4" in err


class TestCustomInput:
    def test_load_schur_profile(self, tmp_path):
        path = tmp_path / "schur.json"
        path.write_text(json.dumps(SCHUR_PROFILE))
        profile = load_custom_profile(str(path))
        assert profile.s == 408

    def test_bad_variant_still_loads(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text(json.dumps(BAD_SCHUR_PROFILE))
        assert load_custom_profile(str(path)).s == 264

    def test_infeasible_profile_rejected(self, tmp_path):
        path = tmp_path / "infeasible.json"
        path.write_text(json.dumps({"n": 4, "d": 2, "t": {"2": 2}}))
        with pytest.raises(SchemaError, match="feasibility"):
            load_custom_profile(str(path))

    def test_line_bound_enforced(self, tmp_path):
        path = tmp_path / "too_many.json"
        path.write_text(json.dumps({"n": 4, "d": 65, "t": {}}))
        with pytest.raises(SchemaError, match="n\\(7n-12\\)"):
            load_custom_profile(str(path))

    def test_load_lines(self, tmp_path):
        data = {
            "n": 4,
            "lines": [
                [[1, 0, 0, 0], [0, 1, 0, 0]],
                [["0", "0", "1", "0"], [{"m": 8, "coeffs": ["0", "1", "0", "0"]}, "0", "0", "1"]],
            ],
        }
        path = tmp_path / "lines.json"
        path.write_text(json.dumps(data))
        arr = load_custom_lines(str(path))
        assert arr.d == 2 and arr.conductor == 8

    def test_repeated_line_rejected(self, tmp_path):
        data = {
            "n": 4,
            "lines": [
                [[1, 0, 0, 0], [0, 1, 0, 0]],
                [[2, 0, 0, 0], [0, 3, 0, 0]],
            ],
        }
        path = tmp_path / "dup.json"
        path.write_text(json.dumps(data))
        with pytest.raises(SchemaError, match="distinct"):
            load_custom_lines(str(path))

    def test_wrong_conductor_rejected(self, tmp_path):
        data = {
            "n": 4,
            "lines": [[[{"m": 6, "coeffs": ["1", "0"]}, 1, 0, 0], [0, 0, 1, 0]]],
        }
        path = tmp_path / "wrong_m.json"
        path.write_text(json.dumps(data))
        with pytest.raises(SchemaError, match="conductor"):
            load_custom_lines(str(path))

    def test_analyze_custom_lines_end_to_end(self, capsys, tmp_path):
        # two meeting lines: one double point, H_L = ((2-4)*2 - 2)/1 = -6
        data = {
            "n": 4,
            "lines": [
                [[1, 0, 0, 0], [0, 1, 0, 0]],
                [[1, 0, 0, 0], [0, 0, 1, 0]],
            ],
        }
        path = tmp_path / "pair.json"
        path.write_text(json.dumps(data))
        code, out, _ = run(
            capsys, "analyze", "--surface", "custom", "--lines", str(path),
            "--format", "json",
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["s"] == 1
        assert payload["h_linear"]["exact"] == "-6"


class TestOutputBehavior:
    def test_output_file_and_determinism(self, capsys, tmp_path):
        out_a = tmp_path / "a.csv"
        out_b = tmp_path / "b.csv"
        for target in (out_a, out_b):
            code, _, _ = run(
                capsys,
                "sweep", "--surface", "fermat", "--degrees", "3:8",
                "--format", "csv", "--output", str(target),
            )
            assert code == 0
        assert out_a.read_bytes() == out_b.read_bytes()

    def test_threads_do_not_change_output(self, capsys):
        code, plain, _ = run(
            capsys, "verify", "--surface", "fermat", "--degree", "4", "--format", "csv"
        )
        assert code == 0
        code, threaded, _ = run(
            capsys,
            "verify", "--surface", "fermat", "--degree", "4", "--format", "csv",
            "--threads", "4",
        )
        assert code == 0
        assert plain == threaded

    def test_unknown_flag_is_usage_error(self, capsys):
        code, _, err = run(capsys, "analyze", "--surface", "fermat", "--nope")
        assert code == 1
