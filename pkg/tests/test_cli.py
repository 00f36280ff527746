"""Command-line surface: scheme files, golden data, reports, exit codes."""

import json

import pytest

from schemeforge.catalogue import CATALOGUE
from schemeforge.cli import (
    EXIT_BUDGET,
    EXIT_NEGATIVE,
    EXIT_OK,
    EXIT_USAGE,
    SchemeFile,
    SchemeFileError,
    bundled_filename,
    load_bundled,
    main,
    parse_scheme_file,
    scheme_file_of,
    serialize_scheme_file,
)

VALID = """\
# the K3,3 scheme: relation 1 across the parts, relation 2 within
id AS06[3]
6
0 2 2 1 1 1
2 0 2 1 1 1   # trailing comment
2 2 0 1 1 1
1 1 1 0 2 2
1 1 1 2 0 2
1 1 1 2 2 0
"""


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def payload_of(out: str) -> dict:
    return json.loads(out)["payload"]


class TestParser:
    def test_valid_file(self):
        sf = parse_scheme_file(VALID)
        assert sf.n == 6
        assert sf.scheme_id == "AS06[3]"
        assert sf.grid[0] == (0, 2, 2, 1, 1, 1)

    def test_round_trip_is_fixed_point(self):
        sf = parse_scheme_file(VALID)
        text = serialize_scheme_file(sf)
        assert parse_scheme_file(text) == sf
        assert serialize_scheme_file(parse_scheme_file(text)) == text

    @pytest.mark.parametrize(
        "text,line,fragment",
        [
            ("", 1, "empty"),
            ("# only comments\n", 1, "empty"),
            ("2\n0 1\n1\n", 3, "expected 2x2 entries"),
            ("2\n0 1\n1 0 1\n", 3, "trailing"),
            ("2\n0 x\n1 0\n", 2, "integer"),
            ("2\n0 5\n5 0\n", 2, "out of range"),
            ("3\n0 1 2\n1 1 1\n2 1 0\n", 3, "diagonal"),
            ("3\n0 1 0\n1 0 1\n0 1 0\n", 2, "off-diagonal zero"),
            ("3\n0 1 2\n2 0 1\n2 1 0\n", 3, "asymmetric"),
            ("3\n0 2 2\n2 0 2\n2 2 0\n", 2, "skip 1"),
        ],
    )
    def test_positioned_errors(self, text, line, fragment):
        with pytest.raises(SchemeFileError) as exc:
            parse_scheme_file(text)
        assert exc.value.line == line
        assert exc.value.column >= 1
        assert fragment in exc.value.message

    def test_error_column_points_at_offender(self):
        with pytest.raises(SchemeFileError) as exc:
            parse_scheme_file("3\n0 1 2\n1 9 1\n2 1 0\n")
        assert (exc.value.line, exc.value.column) == (3, 3)


class TestGoldenData:
    def test_all_bundled_schemes_load(self):
        for sid in CATALOGUE:
            s = load_bundled(sid)
            assert s.n == int(sid[2:4])

    def test_hash_tamper_detected(self, tmp_path, monkeypatch):
        import schemeforge.cli as cli

        src = cli.DATA_DIR
        for f in src.iterdir():
            (tmp_path / f.name).write_bytes(f.read_bytes())
        name = bundled_filename("AS06[3]")
        text = (tmp_path / name).read_text()
        (tmp_path / name).write_text(text + "# tampered\n")
        monkeypatch.setattr(cli, "DATA_DIR", tmp_path)
        with pytest.raises(RuntimeError, match="hash mismatch"):
            load_bundled("AS06[3]")


class TestExitCodes:
    def test_verify_valid(self, capsys, tmp_path):
        f = tmp_path / "ok.scheme"
        f.write_text(VALID)
        code, out, _ = run(capsys, "verify", str(f))
        assert code == EXIT_OK
        assert payload_of(out)["valid"] is True

    def test_verify_refuted(self, capsys, tmp_path):
        # P3 distance partition: not an association scheme
        f = tmp_path / "p3.scheme"
        f.write_text("3\n0 1 2\n1 0 1\n2 1 0\n")
        code, out, _ = run(capsys, "verify", str(f))
        assert code == EXIT_NEGATIVE
        payload = payload_of(out)
        assert payload["valid"] is False
        assert len(payload["witness"]) >= 3

    def test_parse_error_is_usage_error(self, capsys, tmp_path):
        f = tmp_path / "bad.scheme"
        f.write_text("2\n0 1\n")
        code, _, err = run(capsys, "verify", str(f))
        assert code == EXIT_USAGE
        assert "line" in err and "column" in err

    def test_missing_file(self, capsys):
        code, _, err = run(capsys, "verify", "/no/such/file.scheme")
        assert code == EXIT_USAGE

    def test_unknown_subcommand(self, capsys):
        assert run(capsys, "frobnicate")[0] == EXIT_USAGE

    def test_search_budget_exhaustion(self, capsys):
        code, out, _ = run(
            capsys, "search", "--k1", "4", "--a1", "0", "--budget", "3"
        )
        assert code == EXIT_BUDGET
        assert payload_of(out)["complete"] is False

    def test_recognize_negative(self, capsys):
        # no connected locally-C5 graph exists on fewer than 12 vertices
        code, out, _ = run(capsys, "recognize", "--local", "C5", "--n-max", "11")
        assert code == EXIT_NEGATIVE
        assert payload_of(out)["found"] == []


class TestSubcommands:
    def test_spectra_exact_strings(self, capsys, tmp_path):
        f = tmp_path / "k33.scheme"
        f.write_text(VALID)
        code, out, _ = run(capsys, "spectra", str(f))
        assert code == EXIT_OK
        payload = payload_of(out)
        assert payload["m1"] == 4
        assert payload["cosines"][2][1] == "-1/2"
        # exact values are strings, never floats
        for row in payload["P"]:
            assert all(isinstance(x, str) for x in row)

    def test_search_matches_k33(self, capsys):
        code, out, _ = run(capsys, "search", "--k1", "3", "--a1", "0")
        assert code == EXIT_OK
        payload = payload_of(out)
        assert payload["matched"] == ["AS06[3]"]
        assert payload["unmatched_count"] == 0

    def test_search_reports_are_reproducible(self, capsys):
        _, out1, _ = run(capsys, "search", "--k1", "3", "--a1", "0")
        _, out2, _ = run(capsys, "search", "--k1", "3", "--a1", "0")
        assert payload_of(out1) == payload_of(out2)

    def test_search_text_emitter(self, capsys):
        code, out, _ = run(
            capsys, "search", "--k1", "3", "--a1", "0", "--emit", "text"
        )
        assert code == EXIT_OK
        assert "AS06[3]" in out

    def test_bad_field_spec(self, capsys):
        code, _, err = run(
            capsys, "search", "--k1", "3", "--a1", "0", "--field", "septic"
        )
        assert code == EXIT_USAGE

    def test_bound_delsarte(self, capsys):
        code, out, _ = run(capsys, "bound", "delsarte", "3", "2")
        assert code == EXIT_OK
        assert payload_of(out)["bound"] == 9

    def test_bound_kissing(self, capsys):
        code, out, _ = run(capsys, "bound", "kissing")
        assert payload_of(out)["bound"] == 24

    def test_bound_light_tail(self, capsys):
        code, out, _ = run(capsys, "bound", "light-tail", "4", "1", "1", "2")
        assert code == EXIT_OK
        assert payload_of(out)["bound"] == "36/11"

    def test_bound_usage_errors(self, capsys):
        assert run(capsys, "bound", "delsarte", "3")[0] == EXIT_USAGE
        assert run(capsys, "bound", "light-tail", "4", "x", "0", "3")[0] == EXIT_USAGE

    def test_classify_local(self, capsys):
        code, out, _ = run(capsys, "classify-local")
        assert code == EXIT_OK
        payload = payload_of(out)
        assert payload["graph_count"] == 9
        assert len(payload["geometric_cases"]) == 6

    def test_recognize_prism(self, capsys):
        code, out, _ = run(
            capsys, "recognize", "--local", "K3xK2", "--n-max", "15"
        )
        assert code == EXIT_OK
        assert [g["name"] for g in payload_of(out)["found"]] == ["J(5,2)"]

    def test_classify_single_case(self, capsys):
        code, out, _ = run(capsys, "classify", "--case", "N3")
        assert code == EXIT_OK
        payload = payload_of(out)
        assert [(r["graph"], r["scheme_id"]) for r in payload["results"]] == [
            ("K3,3", "AS06[3]")
        ]
        assert payload["complete"] is True

    def test_scheme_file_of_round_trip(self):
        from schemeforge.catalogue import catalogue_scheme

        s = catalogue_scheme("AS10[6]")
        sf = scheme_file_of(s, "AS10[6]")
        assert parse_scheme_file(serialize_scheme_file(sf)) == sf
