import io
import json
import subprocess
import sys

import pytest
from hypothesis import given

from helpers import complexes
from zkwedge import cli, decomposer
from zkwedge.cli import parse_scx, parse_scx_document, print_scx, run
from zkwedge.errors import ComplexError, NonRegularStepError
from zkwedge.scomplex import construct, skeleton
from zkwedge.wedge import SymbolicWedge


def call(*argv):
    buf = io.StringIO()
    code = run(list(map(str, argv)), out=buf)
    return code, buf.getvalue()


@pytest.fixture
def files(tmp_path):
    def write(name, K):
        p = tmp_path / name
        p.write_text(print_scx(K))
        return str(p)
    return {
        "points": write("points.scx", skeleton(3, 1)),
        "edges": write("edges.scx", skeleton(3, 2)),
        "six": write("six.scx", skeleton(6, 3)),
        "cycle": write("cycle.scx", construct(4, [[1, 2], [2, 3], [3, 4], [1, 4]])),
        "edge": write("edge.scx", skeleton(2, 2)),
        "point": write("point.scx", construct(1, [[1]])),
        "big": write("big.scx", skeleton(21, 1)),
        "dir": str(tmp_path),
    }


class TestScx:
    def test_examples(self):
        assert parse_scx("vertices: 3\n1 2\n3\n") == construct(3, [[1, 2], [3]])
        assert parse_scx("vertices: 3\n# a comment\n1 2 3\n") == skeleton(3, 3)

    def test_duplicate_vertex(self):
        with pytest.raises(ComplexError, match="line 2"):
            parse_scx("vertices: 2\n1 1\n")

    def test_missing_header(self):
        with pytest.raises(ComplexError, match="header"):
            parse_scx("1 2\n")
        with pytest.raises(ComplexError, match="header"):
            parse_scx("# only a comment\n")

    def test_out_of_range(self):
        with pytest.raises(ComplexError, match="line 3"):
            parse_scx("vertices: 2\n1 2\n1 3\n")

    def test_comments_kept(self):
        doc = parse_scx_document("vertices: 2\n1 2  # edge\n")
        assert doc.comments == ["edge"] and doc.faces == [[1, 2]]

    def test_downward_closure(self):
        K = parse_scx("vertices: 3\n1 2 3\n1 2\n")
        assert K.maximal_faces == ((1, 2, 3),)

    @pytest.mark.parametrize("n,q", [(n, q) for n in range(0, 6) for q in range(0, n + 1)])
    def test_skeleton_round_trip(self, n, q):
        K = skeleton(n, q)
        assert parse_scx(print_scx(K)) == K

    @given(complexes(max_n=6))
    def test_round_trip(self, K):
        assert parse_scx(print_scx(K)) == K
        assert print_scx(parse_scx(print_scx(K))) == print_scx(K)


class TestCommands:
    def test_decompose_three_points(self, files):
        assert call("decompose", files["points"]) == (0, "S^3 x3, S^4 x2\n")

    def test_decompose_quaternionic(self, files):
        code, out = call("decompose", files["edges"], "--loop-dim", "3")
        assert code == 0 and out == "S^11\n"

    def test_decompose_trace(self, files):
        code, out = call("decompose", files["six"], "--trace", "--json")
        res = json.loads(out)["result"]
        assert code == 0 and res["trace"] and res["levels"]

    def test_oracle_check_agree(self, files):
        assert call("oracle-check", files["six"]) == (0, "agree\n")

    def test_poincare(self, files):
        code, out = call("poincare", files["points"], "--order", "4")
        lines = out.splitlines()
        assert code == 0
        assert lines[1] == "1 3 6 12 24"
        assert lines[2] == "equality (Golod: shifted)"

    def test_poincare_upper_bound(self, files):
        code, out = call("poincare", files["cycle"], "--json")
        assert json.loads(out)["result"]["tag"] == "upper bound"

    def test_is_shifted(self, files):
        assert call("is-shifted", files["points"])[1].startswith("shifted")
        code, out = call("is-shifted", files["cycle"], "--search")
        assert code == 0 and out == "not shifted under any vertex order\n"
        res = json.loads(call("is-shifted", files["cycle"], "--json")[1])["result"]
        assert res["shifted"] is False and res["violation"] is not None

    def test_betti(self, files):
        code, out = call("betti", files["cycle"], "--bigraded")
        assert code == 0
        assert out.splitlines() == ["(1 3) 3 1", "(2 4) 3 1", "(1 2 3 4) 6 1", "torsion-free"]
        assert call("betti", files["cycle"])[1].splitlines()[:2] == ["H^3: rank 2", "H^6: rank 1"]

    def test_profile(self, files):
        res = json.loads(call("profile", files["points"], "--json")[1])["result"]
        assert res["poincare"] == [0, 0, 0, 3, 2]
        assert res["sphere_candidate"] == {"3": 3, "4": 2}

    def test_golod(self, files):
        assert call("golod", files["points"]) == (0, "golod (shifted)\n")
        assert call("golod", files["cycle"]) == (0, "unknown (none)\n")

    def test_skeleton(self):
        code, out = call("skeleton", 3, 2)
        assert code == 0 and parse_scx(out) == skeleton(3, 2)

    def test_compose(self, files, tmp_path):
        target = tmp_path / "out.scx"
        code, out = call("compose", "union", files["edge"], files["point"], "--out", target)
        assert code == 0 and "S^3 x2, S^4" in out
        assert parse_scx(target.read_text()) == construct(3, [[1, 2], [3]])
        code, out = call("compose", "join", files["edge"], files["points"], "--json")
        assert json.loads(out)["result"]["t"] == 1
        code, out = call("compose", "glue", files["edge"], files["edges"], "--face1", "1 2", "--face2", "1,2")
        assert code == 0 and out.startswith("vertices: 3")


class TestExitCodes:
    def test_usage(self, files):
        assert call()[0] == 1
        assert call("frobnicate")[0] == 1
        assert call("decompose", files["points"], "--loop-dim", "2")[0] == 1
        assert call("decompose", files["dir"] + "/missing.scx")[0] == 1

    def test_bad_input(self, tmp_path):
        p = tmp_path / "bad.scx"
        p.write_text("vertices: 2\n1 1\n")
        assert call("betti", p)[0] == 1

    def test_bad_face(self, files):
        assert call("compose", "glue", files["edge"], files["edges"], "--face1", "x")[0] == 1
        assert call("compose", "glue", files["edge"], files["edges"], "--face1", "1 2", "--face2", "1 2 3")[0] == 1

    def test_refusals(self, files):
        assert call("decompose", files["cycle"])[0] == 2
        assert call("betti", files["big"])[0] == 2
        assert call("compose", "union", files["cycle"], files["point"])[0] == 2

    def test_internal_violation(self, files, monkeypatch):
        def boom(K):
            raise NonRegularStepError("forced")
        monkeypatch.setattr(decomposer, "decompose", boom)
        assert call("decompose", files["points"])[0] == 3

    def test_oracle_mismatch(self, files, monkeypatch):
        monkeypatch.setattr(decomposer, "decompose", lambda K: SymbolicWedge())
        code, out = call("oracle-check", files["points"], "--json")
        assert code == 3
        assert json.loads(out)["result"]["agree"] is False


class TestJson:
    def test_fields(self, files):
        doc = json.loads(call("decompose", files["points"], "--json")[1])
        assert set(doc) == {"command", "input_hash", "result", "warnings", "millis"}
        assert doc["millis"] is None and doc["command"] == "decompose"

    def test_timing(self, files):
        doc = json.loads(call("golod", files["points"], "--json", "--timing")[1])
        assert isinstance(doc["millis"], int)

    def test_hash_independent_of_formatting(self, files, tmp_path):
        p = tmp_path / "messy.scx"
        p.write_text("# header comment\nvertices: 3\n\n3\n2 # b\n1\n")
        a = json.loads(call("golod", p, "--json")[1])["input_hash"]
        b = json.loads(call("golod", files["points"], "--json")[1])["input_hash"]
        assert a == b

    def test_search_warning(self, tmp_path):
        p = tmp_path / "star.scx"
        p.write_text("vertices: 4\n1 3\n3 4\n2 3\n")
        doc = json.loads(call("decompose", p, "--search", "--json")[1])
        # a cone over three points, so the same spheres as three points
        assert doc["warnings"] and doc["result"]["spheres"] == {"3": 3, "4": 2}


def test_module_entry_point(files):
    proc = subprocess.run([sys.executable, "-m", "zkwedge", "decompose", files["points"]],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout == "S^3 x3, S^4 x2\n"


def test_main_exits(monkeypatch, files):
    monkeypatch.setattr(sys, "argv", ["zkwedge", "golod", files["points"]])
    with pytest.raises(SystemExit) as e:
        cli.main()
    assert e.value.code == 0
