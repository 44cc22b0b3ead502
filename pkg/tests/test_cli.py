import io
from contextlib import redirect_stdout
from fractions import Fraction

import pytest

from logblocks.cli import (build_parser, load_config_file, main,
                           parse_rational)


def run(argv):
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = main(argv)
    return code, buf.getvalue()


class TestParsing:
    def test_parse_rational(self):
        assert parse_rational("3") == 3
        assert parse_rational("-1/2") == Fraction(-1, 2)
        with pytest.raises(ValueError):
            parse_rational("1/2/3")

    def test_config_file(self, tmp_path):
        path = tmp_path / "run.cfg"
        path.write_text("curve = p1\ntruncate=3  # window\n\nseed=7\n")
        values = load_config_file(str(path))
        assert values == {"curve": "p1", "truncate": "3", "seed": "7"}

    def test_bad_config_line(self, tmp_path):
        path = tmp_path / "run.cfg"
        path.write_text("curve p1\n")
        with pytest.raises(ValueError):
            load_config_file(str(path))

    def test_parser_requires_command(self):
        with pytest.raises(SystemExit):
            build_parser().parse_args([])


class TestCommands:
    def test_axioms(self):
        code, out = run(["axioms", "--va", "heisenberg", "--truncate", "3"])
        assert code == 0
        assert out.startswith("config:")
        assert "vacuum: pass" in out
        assert "virasoro_bracket: pass" in out

    def test_coords_roundtrip(self):
        code, out = run(["coords", "--input", "1,1,0,0"])
        assert code == 0
        assert "roundtrip: ok" in out

    def test_coords_needs_input(self):
        code, _ = run(["coords"])
        assert code == 1

    def test_diff_nodal(self):
        code, out = run(["diff", "--family", "nodal"])
        assert code == 0
        assert "(1)*dx/x + (1)*dy/y = 0" in out
        assert "relation_membership_check: True" in out

    def test_coinv_p1_text_and_csv(self):
        code, out = run(["coinv", "--curve", "p1", "--va", "heisenberg",
                         "--truncate", "3"])
        assert code == 0
        assert "quotient_dim" in out
        code, out = run(["coinv", "--curve", "p1", "--va", "heisenberg",
                         "--truncate", "3", "--format", "csv"])
        assert code == 0
        assert "0,1,0,1," in out  # degree 0 survives

    def test_coinv_nodal_vanishes(self):
        code, out = run(["coinv", "--curve", "nodal", "--va", "virasoro",
                         "--central-charge", "1/2", "--truncate", "3",
                         "--format", "csv"])
        assert code == 0
        for line in out.strip().split("\n"):
            if line[:1].isdigit():
                assert line.split(",")[3] == "0"

    def test_propagate(self):
        code, out = run(["propagate", "--curve", "p1", "--va", "heisenberg",
                         "--truncate", "3"])
        assert code == 0
        assert "tables_equal: True" in out

    def test_propagate_wrong_curve(self):
        code, _ = run(["propagate", "--curve", "nodal"])
        assert code == 1

    def test_bracket_check(self):
        code, out = run(["bracket-check", "--va", "heisenberg",
                         "--truncate", "4", "--seed", "5"])
        assert code == 0
        assert "failures: 0" in out

    def test_functoriality(self):
        code, out = run(["functoriality", "--curve", "p1", "--va",
                         "heisenberg", "--truncate", "3"])
        assert code == 0
        assert "inequality_holds: True" in out

    def test_config_file_with_flag_override(self, tmp_path):
        path = tmp_path / "run.cfg"
        path.write_text("curve=nodal\nva=heisenberg\ntruncate=2\n")
        code, out = run(["coinv", "--config", str(path), "--truncate", "3"])
        assert code == 0
        assert "truncate=3" in out  # flag wins over the file

    def test_unknown_config_key(self, tmp_path):
        path = tmp_path / "run.cfg"
        path.write_text("windows=95\n")
        code, _ = run(["coinv", "--config", str(path)])
        assert code == 1

    def test_unknown_flag_value_exits_with_usage(self):
        code, _ = run(["coinv", "--curve", "mystery"])
        assert code == 1

    def test_seed_echoed(self):
        code, out = run(["bracket-check", "--va", "heisenberg",
                         "--truncate", "3", "--seed", "42"])
        assert code == 0
        assert "seed=42" in out
