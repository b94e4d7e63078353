import subprocess
import sys

import pytest

from conftest import DATA
from diagram_groups.cli import run

P1 = str(DATA / "interchange_p1.txt")
P2 = str(DATA / "interchange_p2.txt")


def cli(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_eq_interchange_files(capsys):
    code, out, _ = cli(capsys, "eq", P1, P2)
    assert code == 0 and out == "equal\n"


def test_eq_negative(capsys, tmp_path):
    other = tmp_path / "other.txt"
    other.write_text("diagram over thompson: xx => xxxx\n(1, x -> xx, x)\n(1, x -> xx, xx)\n")
    code, out, _ = cli(capsys, "eq", P1, str(other))
    assert code == 1 and out == "not equal\n"


def test_fprime(capsys):
    code, out, _ = cli(capsys, "fprime", "x0")
    assert code == 1 and out == "not in F'\n"
    code, out, _ = cli(capsys, "fprime", "x0^-1 x1^-1 x0 x1")
    assert code == 0 and out == "in F'\n"


def test_wreath(capsys):
    assert cli(capsys, "wreath", "phi", "--k", "3", "--g", "2")[1] == "8\n"
    assert cli(capsys, "wreath", "cost", "--g", "5")[1] == "25\n"
    assert cli(capsys, "wreath", "g", "--k", "2", "--g", "1")[1] == "(0:a_1^-1, 1:a_1^1)^a_2^0\n"


def test_reduce_then_eq(capsys, tmp_path):
    code, out, _ = cli(capsys, "reduce", P2)
    assert code == 0
    red = tmp_path / "red.txt"
    red.write_text(out)
    assert cli(capsys, "eq", str(red), P2)[0] == 0


def test_nf_roundtrip(capsys, tmp_path):
    code, out, _ = cli(capsys, "nf", "x1 x0", "--to-diagram", "-k", "3")
    assert code == 0 and out.startswith("diagram over thompson: xxx => xxx\n")
    f = tmp_path / "d.txt"
    f.write_text(out)
    assert cli(capsys, "nf", "--diagram", str(f))[1] == "x0 x2\n"
    assert cli(capsys, "nf", "x1 x1^-1 x3")[1] == "x3\n"


def test_mul_inv_comp(capsys, tmp_path):
    f = tmp_path / "x0.txt"
    f.write_text(cli(capsys, "nf", "x0", "--to-diagram")[1])
    sq = tmp_path / "sq.txt"
    sq.write_text(cli(capsys, "mul", str(f), str(f))[1])
    assert cli(capsys, "nf", "--diagram", str(sq))[1] == "x0^2\n"
    inv = tmp_path / "inv.txt"
    inv.write_text(cli(capsys, "inv", str(f))[1])
    assert cli(capsys, "nf", "--diagram", str(inv))[1] == "x0^-1\n"
    assert cli(capsys, "comp", str(f))[1].startswith("comp 1\n")


def test_pl(capsys):
    assert cli(capsys, "pl", "x0")[1] == "0:0;1/2^2:1/2^1;1/2^1:3/2^2;1:1\n"
    assert cli(capsys, "pl", "x1", "--support")[1] == "(1/2^1, 1)\n"
    assert cli(capsys, "pl", "x0", "--eval", "1/4")[1] == "1/2^1\n"
    assert cli(capsys, "pl", "x0", "--halfline")[1] == "0:0;1:2;tail:1\n"
    assert cli(capsys, "pl", "x0", "--format", "csv")[1].startswith("t,value\n")


def test_rho(capsys):
    assert cli(capsys, "rho", "x0", "-k", "3")[1] == "- (1, x=xx, x) + (x, x=xx, 1)\n"
    assert cli(capsys, "rho", "x0^-1 x1^-1 x0 x1")[1] == "0\n"


def test_squier(capsys):
    code, out, _ = cli(capsys, "squier", "--presentation", "wreath_z", "--depth", "3")
    assert code == 0
    assert out.splitlines()[:2] == ["4 vertices, 6 edges, 2 2-cells, truncated=True", "pi1 of truncation ⟨g0 ∣ ∅⟩"]
    code, out, _ = cli(capsys, "squier", "--presentation", "wreath_z", "--depth", "1", "--format", "dot")
    assert out.startswith("graph squier {")


def test_squier_from_file(capsys, tmp_path):
    p = tmp_path / "p.txt"
    p.write_text("# identified letters\nx y | x = y\n")
    code, out, _ = cli(capsys, "squier", "--presentation", str(p), "--base", "x")
    assert code == 0 and "⟨ ∣ ∅⟩" in out
    assert cli(capsys, "squier", "--presentation", str(p))[0] == 2


def test_build(capsys):
    out = cli(capsys, "build", "f_wr_z")[1]
    assert out == "⟨x, y, z, a, u ∣ xy = x, yz = z, y = aua, uu = u⟩\nbase xz\n"
    out = cli(capsys, "build", "big_O")[1]
    assert out == "⟨x, y, ȳ, z, p, q, r ∣ x = xyp, z = rȳz, pyq = qȳr⟩\nbase xyqȳz\n"
    code, out, _ = cli(capsys, "build", "product", "--presentation", "direct_power", "--family", "y:thompson:x")
    assert code == 0 and out.splitlines()[0] == "⟨x, y, a, x_ ∣ x = x y, y = a x_ a, x_ = x_ x_⟩"


def test_zwrz(capsys):
    code, out, _ = cli(capsys, "zwrz", "thm18")
    assert code == 0 and out.endswith("PASS at depth 4\n")
    assert cli(capsys, "zwrz", "verify")[0] == 0
    assert cli(capsys, "zwrz", "verify", "--a", "x0", "--b", "x0")[0] == 1
    code, out, _ = cli(capsys, "zwrz", "search", "--presentation", "thompson")
    assert code == 0 and out.startswith("x = x, y = x, z = x\n")


def test_zwrz_search_not_found(capsys, tmp_path):
    p = tmp_path / "free.txt"
    p.write_text("a b | \n")
    code, out, _ = cli(capsys, "zwrz", "search", "--presentation", str(p), "--base", "a b")
    assert code == 3 and out.startswith("not found")


def test_distort(capsys):
    code, out, _ = cli(capsys, "distort", "--cyclic", "--n", "3")
    assert code == 0
    assert out == "n,disto_lower,exact\n0,0,true\n1,1,true\n2,2,true\n3,3,true\n"


def test_dot(capsys):
    assert cli(capsys, "dot", P1)[1].startswith("digraph diagram {")


def test_word_equality_exit_codes(capsys):
    assert cli(capsys, "eq", "--words", "x", "x x x")[0] == 0
    assert cli(capsys, "eq", "--words", "x", "x x x x x x x x", "--max-len", "4")[0] == 3

def test_word_equality_negative(capsys, tmp_path):
    p = tmp_path / "comm.txt"
    p.write_text("x y | x y = y x\n")
    assert cli(capsys, "eq", "--words", "--presentation", str(p), "x y", "y x")[0] == 0
    assert cli(capsys, "eq", "--words", "--presentation", str(p), "x y", "x x")[0] == 1


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as exc:
        run([])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        run(["squier", "--max-len", "0"])
    assert exc.value.code == 2
    capsys.readouterr()
    code, _, err = cli(capsys, "reduce", "no-such-file.txt")
    assert code == 2 and err.startswith("error:")
    code, _, err = cli(capsys, "nf", "x0 y")
    assert code == 2


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "diagram_groups", "wreath", "phi", "--k", "2", "--g", "3"],
                         capture_output=True, text=True, check=True)
    assert out.stdout == "9\n"
