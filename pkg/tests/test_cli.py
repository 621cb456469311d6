import json
import random

import pytest

from conftest import EX2
from dtpower.cli import (closed_form_from_json, closed_form_to_json, main,
                         parse_vectors)
from dtpower.quasipoly import closed_form, eval_closed

EX1_TEXT = "1\n1\n2\n"
EX2_TEXT = "1 0\n0 1\n-1 2\n"


class TestParseVectors:
    def test_scalar_multiset(self):
        spec = parse_vectors(EX1_TEXT)
        assert spec.dimension == 1
        assert spec.vectors == ((1,), (1,), (2,))

    def test_planar(self):
        spec = parse_vectors(EX2_TEXT)
        assert spec.dimension == 2
        assert spec.vectors == ((1, 0), (0, 1), (-1, 2))

    def test_comments_and_blanks_ignored(self):
        spec = parse_vectors("# system\n\n1 0\n0 1\n")
        assert spec.vectors == ((1, 0), (0, 1))

    @pytest.mark.parametrize("text,fragment", [
        ("1 0\n0\n", "ragged"),
        ("1\n0\n", "zero vector"),
        ("1 0\n2 0\n", "rank-deficient"),
        ("1\n-1\n", "not pointed"),
        ("1 a\n", "not an integer"),
        ("", "no vectors"),
    ])
    def test_rejects_with_distinct_message(self, text, fragment, capsys, tmp_path):
        f = tmp_path / "bad.txt"
        f.write_text(text)
        assert main(["count", "--point", "0", str(f)]) == 2
        assert fragment in capsys.readouterr().err


def run(args, text, tmp_path, capsys):
    f = tmp_path / "sys.txt"
    f.write_text(text)
    code = main(args + [str(f)])
    out = capsys.readouterr()
    return code, out.out, out.err


class TestCount:
    @pytest.mark.parametrize("engine", ["brute", "recursion", "closed"])
    def test_scalar_point(self, engine, tmp_path, capsys):
        code, out, _ = run(["count", "--point", "2", "--engine", engine],
                           EX1_TEXT, tmp_path, capsys)
        assert code == 0 and out.strip() == "4"

    def test_planar_point(self, tmp_path, capsys):
        code, out, _ = run(["count", "--point", "0,4"], EX2_TEXT, tmp_path, capsys)
        assert code == 0 and out.strip() == "3"

    def test_bad_point_dimension(self, tmp_path, capsys):
        code, _, err = run(["count", "--point", "1,2"], EX1_TEXT, tmp_path, capsys)
        assert code == 2 and "point" in err


class TestFormats:
    def test_reduce_text(self, tmp_path, capsys):
        code, out, _ = run(["reduce"], EX1_TEXT, tmp_path, capsys)
        assert code == 0
        assert "(1 - e^(-(2x)))^3" in out

    def test_reduce_json(self, tmp_path, capsys):
        code, out, _ = run(["reduce", "--format", "json"], EX1_TEXT, tmp_path, capsys)
        data = json.loads(out)
        assert data["dimension"] == 1
        assert [t["shift"] for t in data["terms"]] == [[-2], [-1], [0]]
        assert [t["coeff"] for t in data["terms"]] == ["1", "2", "1"]

    def test_closed_form_text(self, tmp_path, capsys):
        code, out, _ = run(["closed-form"], EX1_TEXT, tmp_path, capsys)
        assert code == 0
        assert "N*{(2,)}" in out

    def test_closed_form_latex_scalar(self, tmp_path, capsys):
        code, out, _ = run(["closed-form", "--format", "latex"],
                           EX1_TEXT, tmp_path, capsys)
        assert code == 0
        assert out.count("t_{") == 3
        # the piece (x+2)(x+4)/8 expanded: x^2/8 + 3x/4 + 1
        assert "\\frac{1}{8}x^2" in out.replace(" ", "")

    def test_closed_form_json_roundtrip(self, tmp_path, capsys):
        code, out, _ = run(["closed-form", "--format", "json"],
                           EX2_TEXT, tmp_path, capsys)
        assert code == 0
        cf = closed_form(EX2)
        back = closed_form_from_json(json.loads(out))
        assert json.loads(out) == closed_form_to_json(cf)
        rng = random.Random(11)
        for _ in range(20):
            a = (rng.randint(-8, 12), rng.randint(-8, 12))
            assert eval_closed(back, a) == eval_closed(cf, a)


class TestVerify:
    def test_planar_ok(self, tmp_path, capsys):
        code, out, _ = run(["verify", "--box=-6:12", "--seed", "7"],
                           EX2_TEXT, tmp_path, capsys)
        assert code == 0
        assert out.strip() == "OK: 361 points, 0 mismatches"

    def test_scalar_ok(self, tmp_path, capsys):
        code, out, _ = run(["verify", "--box=-6:20"], EX1_TEXT, tmp_path, capsys)
        assert code == 0
        assert "0 mismatches" in out

    def test_bad_box(self, tmp_path, capsys):
        code, _, err = run(["verify", "--box", "5"], EX1_TEXT, tmp_path, capsys)
        assert code == 2 and "box" in err


class TestBench:
    def test_reports_three_engines(self, tmp_path, capsys):
        code, out, _ = run(["bench", "--box=-4:8"], EX1_TEXT, tmp_path, capsys)
        assert code == 0
        for eng in ("brute", "recursion", "closed"):
            assert eng in out


class TestUsage:
    def test_unknown_flag_exits_2(self, capsys):
        assert main(["count", "--nope"]) == 2

    def test_missing_subcommand_exits_2(self, capsys):
        assert main([]) == 2
