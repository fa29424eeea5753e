import json
import subprocess
import sys
import time
from pathlib import Path

import pytest

from thetaperm import cli, verify
from thetaperm.errors import InexactDivisionError, IntegralityError
from thetaperm.polyring import theta

GOLDEN = Path(__file__).parent / "golden"
SCHEMA = Path(__file__).parent.parent / "schemas" / "thetaperm-output.schema.json"


def run(capsys, *argv):
    code = cli.main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--format", "json")
    return code, json.loads(out)


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    for key in ("ORDER", "FACE_CAP", "PERM_CAP", "CLASS_CAP", "GRADE_CAP", "SEED"):
        monkeypatch.delenv(f"THETAPERM_{key}", raising=False)


class TestGolden:
    @pytest.mark.parametrize(
        "name, argv",
        [
            ("hodge_4.txt", ("hodge", 4)),
            ("sequences_eulerian_6.txt", ("sequences", "eulerian", 6)),
            ("cobordism_3.txt", ("cobordism", 3)),
            ("tomei_2.txt", ("tomei", 2)),
        ],
    )
    def test_byte_for_byte(self, capsys, name, argv):
        code, out, _ = run(capsys, *argv)
        assert code == 0
        assert out.encode() == (GOLDEN / name).read_bytes()

    def test_hodge_4_golden_holds_printed_diamond(self):
        rows = [[int(x) for x in line.split()] for line in (GOLDEN / "hodge_4.txt").read_text().splitlines()]
        assert [r[-1] for r in rows] == [1, 10, 45, 120, 288, 120, 45, 10, 1]
        assert rows[4][:-1] == [5, 66, 146, 66, 5]
        assert rows[3][:-1] == [10, 50, 50, 10]

    def test_oracle_flag_same_diamond(self, capsys):
        _, plain, _ = run(capsys, "hodge", 4)
        _, oracle, _ = run(capsys, "hodge", 4, "--oracle")
        assert plain == oracle


class TestSequences:
    def test_bernoulli(self, capsys):
        code, out, _ = run(capsys, "sequences", "bernoulli", 8)
        assert code == 0
        assert out.splitlines()[-1] == "B_8 = -1/30"

    def test_stirling(self, capsys):
        _, out, _ = run(capsys, "sequences", "stirling2", 5)
        assert out.splitlines()[-1] == "5: 0 1 15 25 10 1"

    def test_limit(self, capsys):
        code, _, err = run(capsys, "sequences", "eulerian", 51)
        assert code == 3
        assert "error" in err

    def test_latex(self, capsys):
        _, out, _ = run(capsys, "sequences", "eulerian", 3, "--format", "latex")
        assert out.splitlines()[-1] == "3 & 1 & 4 & 1 \\\\"


class TestCommands:
    def test_permutohedron(self, capsys):
        code, doc = run_json(capsys, "permutohedron", 3, "f")
        assert code == 0
        assert doc["f_vector"] == [24, 36, 14, 1]
        code, doc = run_json(capsys, "permutohedron", 3, "h")
        assert doc["h_poly"] == "s^3 + 11*s^2*t + 11*s*t^2 + t^3"
        code, doc = run_json(capsys, "permutohedron", 3, "oracle")
        assert doc["face_oracle"] == [24, 36, 14, 1]
        assert doc["vertex_index_oracle"] == [1, 11, 11, 1]

    def test_face_cap(self, capsys):
        code, _, _ = run(capsys, "permutohedron", 8, "oracle")
        assert code == 3
        code, _, _ = run(capsys, "permutohedron", 4, "oracle", "--face-cap", 3)
        assert code == 3

    def test_genus(self, capsys):
        code, out, _ = run(capsys, "genus", "h", 4)
        assert code == 0
        assert out.splitlines()[2] == "n=2: s^2 + 4*s*t + t^2"
        _, doc = run_json(capsys, "genus", "td", 6)
        assert doc["values"][1] == "2*t - b"
        assert doc["order"] == 6

    def test_cobordism_json(self, capsys):
        code, doc = run_json(capsys, "cobordism", 3)
        assert code == 0
        assert doc["text"] == "1/2*θ1^3 - 2/3*θ1*θ2 - 5/6*θ3"
        assert doc["class"]["grade"] == 3
        assert doc["consistent"] is True
        assert len(doc["points"]) == 3
        assert all(c["equal"] for c in doc["checks"])

    def test_cobordism_cap(self, capsys):
        assert run(capsys, "cobordism", 6)[0] == 3
        assert run(capsys, "cobordism", 3, "--class-cap", 2)[0] == 3
        with pytest.warns(RuntimeWarning):
            code, out, _ = run(capsys, "cobordism", 3, "--class-cap", 2, "--allow-large")
        assert code == 0 and out.startswith("[X^3] = 1/2*θ1^3")

    def test_tomei(self, capsys):
        code, doc = run_json(capsys, "tomei", 4)
        assert code == 0
        assert doc["invariants"]["euler"] == 16
        assert doc["report"]["all_equal"] is True

    def test_hodge_bad_dimension(self, capsys):
        assert run(capsys, "hodge", -1)[0] == 3


class TestVerify:
    def test_fast(self, capsys):
        start = time.perf_counter()
        code, out, _ = run(capsys, "verify", 6, "--fast")
        assert time.perf_counter() - start < 10
        assert code == 0
        assert out.splitlines()[-1] == "13/13 checks passed"

    def test_includes_xpi3(self, capsys, monkeypatch):
        code, out, _ = run(capsys, "verify", 3)
        assert code == 0
        assert "PASS permutohedral class [xpi]" in out
        # a wrong reference class must be caught
        monkeypatch.setitem(verify.KNOWN_CLASSES, 3, -theta(3))
        code, out, _ = run(capsys, "verify", 3)
        assert code == 2
        assert "FAIL permutohedral class" in out
        assert "class n=3" in out

    def test_internal_error_exit(self, capsys, monkeypatch):
        def broken(cx, n_max, cfg):
            raise InexactDivisionError("synthetic", remainder=None)

        monkeypatch.setattr(verify, "CHECKS", verify.CHECKS[:1] + (("broken", "x", broken),))
        code, out, _ = run(capsys, "verify", 2)
        assert code == 4
        assert "InexactDivisionError: synthetic" in out

    def test_internal_error_from_command(self, capsys, monkeypatch):
        def boom(n, oracle=False):
            raise IntegralityError("synthetic")

        monkeypatch.setattr(cli.hodge, "hodge_diamond", boom)
        code, _, err = run(capsys, "hodge", 2)
        assert code == 4
        assert "IntegralityError" in err

    def test_json(self, capsys):
        code, doc = run_json(capsys, "verify", 2)
        assert code == 0 and doc["exit_code"] == 0
        assert [c["anchor"] for c in doc["checks"]][-1] == "xpi"


class TestConfig:
    ALL = [
        ("sequences", "bernoulli", 4),
        ("permutohedron", 2, "h"),
        ("hodge", 2),
        ("genus", "chi-y", 4),
        ("cobordism", 2),
        ("tomei", 2),
        ("verify", 1),
    ]

    @pytest.mark.parametrize("argv", ALL)
    def test_json_envelope(self, capsys, argv):
        code, doc = run_json(capsys, *argv)
        assert code == 0
        assert doc["config"]["seed"] == 20200917
        assert doc["paper_anchor"]

    @pytest.mark.parametrize("argv", ALL)
    def test_schema(self, capsys, argv):
        jsonschema = pytest.importorskip("jsonschema")
        schema = json.loads(SCHEMA.read_text())
        _, doc = run_json(capsys, *argv)
        jsonschema.validate(doc, {**schema, "$ref": f"#/$defs/{argv[0]}"})

    def test_same_seed_same_bytes(self, capsys):
        first = run(capsys, "cobordism", 2, "--format", "json", "--seed", 11)[1]
        second = run(capsys, "cobordism", 2, "--format", "json", "--seed", 11)[1]
        other = run(capsys, "cobordism", 2, "--format", "json", "--seed", 12)[1]
        assert first == second
        assert json.loads(first)["points"] != json.loads(other)["points"]
        assert json.loads(first)["text"] == json.loads(other)["text"] == "θ2"

    def test_entropy_seed_recorded(self, capsys):
        _, doc = run_json(capsys, "cobordism", 1, "--seed", 0)
        assert doc["config"]["seed"] != 0

    def test_env_override(self, capsys, monkeypatch):
        monkeypatch.setenv("THETAPERM_CLASS_CAP", "2")
        assert run(capsys, "cobordism", 3)[0] == 3
        monkeypatch.setenv("THETAPERM_CLASS_CAP", "five")
        assert run(capsys, "cobordism", 1)[0] == 3

    def test_env_seed(self, capsys, monkeypatch):
        monkeypatch.setenv("THETAPERM_SEED", "99")
        _, doc = run_json(capsys, "cobordism", 1)
        assert doc["config"]["seed"] == 99

    def test_nonpositive_cap(self, capsys):
        assert run(capsys, "hodge", 2, "--order", 0)[0] == 3


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "thetaperm", "hodge", "2"], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[2].split() == ["3", "10", "3", "16"]
