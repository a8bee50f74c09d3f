"""End-to-end command-line behaviour, exit codes, and file round-trips."""

from fractions import Fraction

import pytest

from deltadisp import is_dispersed, parse_graph, parse_witness
from deltadisp.cli import run

K2_TEXT = "2 1\n0 1\n"
STAR_TEXT = "4 3\n0 1\n0 2\n0 3\n"
K4_TEXT = "4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n"


@pytest.fixture
def k2(tmp_path):
    p = tmp_path / "k2.graph"
    p.write_text(K2_TEXT)
    return p


@pytest.fixture
def star(tmp_path):
    p = tmp_path / "star.graph"
    p.write_text(STAR_TEXT)
    return p


@pytest.fixture
def k4(tmp_path):
    p = tmp_path / "k4.graph"
    p.write_text(K4_TEXT)
    return p


class TestSolve:
    def test_k2_delta_2(self, k2, capsys):
        assert run(["solve", str(k2), "--delta", "2"]) == 0
        assert capsys.readouterr().out.strip() == "1"

    def test_star_delta_2(self, star, capsys):
        assert run(["solve", str(star), "--delta", "2"]) == 0
        assert capsys.readouterr().out.strip() == "3"

    def test_witness_file_roundtrip(self, star, tmp_path, capsys):
        out = tmp_path / "w.txt"
        assert run(["solve", str(star), "--delta", "2/3", "--witness", str(out)]) == 0
        value = int(capsys.readouterr().out.strip())
        g = parse_graph(STAR_TEXT)
        ws = parse_witness(g, out.read_text(), Fraction(2, 3))
        assert len(ws) == value
        assert is_dispersed(g, ws.points, Fraction(2, 3))

    def test_hard_regime_needs_flag(self, k2, capsys):
        assert run(["solve", str(k2), "--delta", "3"]) == 2
        assert "--brute-force" in capsys.readouterr().err

    def test_hard_regime_with_flag(self, k2, capsys):
        assert run(["solve", str(k2), "--delta", "3", "--brute-force"]) == 0
        assert capsys.readouterr().out.strip() == "1"

    def test_rejects_float_delta(self, k2):
        assert run(["solve", str(k2), "--delta", "0.5"]) == 2

    def test_missing_graph(self, tmp_path):
        assert run(["solve", str(tmp_path / "nope.graph"), "--delta", "2"]) == 2

    def test_bad_graph_file(self, tmp_path, capsys):
        p = tmp_path / "bad.graph"
        p.write_text("2 1\n0 0\n")
        assert run(["solve", str(p), "--delta", "2"]) == 2
        assert "line 2" in capsys.readouterr().err


class TestOracle:
    def test_value_and_witness_on_stdout(self, star, capsys):
        assert run(["oracle", str(star), "--delta", "2"]) == 0
        out = capsys.readouterr().out.splitlines()
        assert out[0] == "3"
        assert len(out) == 4

    def test_cap_exits_3(self, k4, capsys):
        assert run(["oracle", str(k4), "--delta", "1/7", "--cap", "10"]) == 3
        assert "cap" in capsys.readouterr().err

    def test_timeout_exits_3(self, k4):
        assert run(["oracle", str(k4), "--delta", "3/2", "--timeout", "0"]) == 3

    def test_agreement_with_solve(self, tmp_path, capsys):
        graphs = {
            "k2": K2_TEXT,
            "star": STAR_TEXT,
            "k4": K4_TEXT,
            "c5": "5 5\n0 1\n1 2\n2 3\n3 4\n4 0\n",
            "tree": "6 5\n0 1\n0 2\n1 3\n1 4\n2 5\n",
        }
        for name, text in graphs.items():
            p = tmp_path / f"{name}.graph"
            p.write_text(text)
            for delta in ("1", "1/2", "2", "2/3"):
                assert run(["solve", str(p), "--delta", delta]) == 0
                solve_out = capsys.readouterr().out.strip()
                assert run(["oracle", str(p), "--delta", delta]) == 0
                oracle_out = capsys.readouterr().out.splitlines()[0]
                assert solve_out == oracle_out, (name, delta)


class TestVerify:
    def test_accept(self, star, tmp_path, capsys):
        cert = tmp_path / "c.txt"
        cert.write_text("3\nW: 1 2 3\n")
        assert run(["verify", str(star), "--delta", "2", "--certificate", str(cert)]) == 0
        assert capsys.readouterr().out.strip() == "accept"

    def test_reject(self, star, tmp_path, capsys):
        cert = tmp_path / "c.txt"
        cert.write_text("4\nW: 1 2 3\n")
        assert run(["verify", str(star), "--delta", "2", "--certificate", str(cert)]) == 1
        assert capsys.readouterr().out.startswith("reject")

    def test_bad_certificate_file(self, star, tmp_path):
        cert = tmp_path / "c.txt"
        cert.write_text("zzz\n")
        assert run(["verify", str(star), "--delta", "2", "--certificate", str(cert)]) == 2


class TestGadget:
    def test_emission(self, k4, tmp_path, capsys, monkeypatch):
        monkeypatch.chdir(tmp_path)
        assert run(["gadget", str(k4), "--delta", "3", "--out", "gg"]) == 0
        out = capsys.readouterr().out
        assert "x1=4 y1=1 x2=4 y2=1" in out
        assert "k + 18" in out
        emitted = parse_graph((tmp_path / "gg.graph").read_text())
        assert emitted.vertex_count == 64 and emitted.edge_count == 72
        map_lines = (tmp_path / "gg.map").read_text().splitlines()
        assert len(map_lines) == 10

    def test_non_cubic_rejected(self, star, tmp_path, monkeypatch):
        monkeypatch.chdir(tmp_path)
        assert run(["gadget", str(star), "--delta", "3"]) == 2


class TestSubdivide:
    def test_emits_subdivision(self, k2, capsys):
        assert run(["subdivide", str(k2), "--factor", "3"]) == 0
        emitted = parse_graph(capsys.readouterr().out)
        assert emitted.vertex_count == 4 and emitted.edge_count == 3

    def test_bad_factor(self, k2):
        assert run(["subdivide", str(k2), "--factor", "0"]) == 2


class TestSingleVertexGraph:
    def test_solve_and_witness(self, tmp_path, capsys):
        p = tmp_path / "k1.graph"
        p.write_text("1 0\n")
        out = tmp_path / "w.txt"
        assert run(["solve", str(p), "--delta", "5", "--brute-force", "--witness", str(out)]) == 0
        assert capsys.readouterr().out.strip() == "1"
        assert out.read_text() == "-1 0 0 0/1\n"
        g = parse_graph("1 0\n")
        ws = parse_witness(g, out.read_text(), Fraction(5))
        assert len(ws) == 1


class TestUsage:
    def test_no_command(self, capsys):
        assert run([]) == 2
        capsys.readouterr()

    def test_unknown_command(self, capsys):
        assert run(["frobnicate"]) == 2
        capsys.readouterr()

    def test_missing_delta(self, k2, capsys):
        assert run(["solve", str(k2)]) == 2
        capsys.readouterr()
