import subprocess
import sys

import pytest

from moravak.cli import main, render_exact
from moravak.cyclotomic import Cyclotomic, root_of_unity


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_action_basis_listing(capsys):
    code, out = run(capsys, "action", "--p", "2", "--n", "1", "--d", "2", "--group", "GL2F2", "--k", "0")
    assert code == 0
    assert sum(line.startswith("basis\t") for line in out.splitlines()) == 4
    code, out = run(capsys, "action", "--p", "2", "--n", "1", "--d", "2", "--group", "GL2F2", "--k", "0", "--reduced")
    assert sum(line.startswith("basis\t") for line in out.splitlines()) == 3


def test_action_uv_dimension(capsys):
    code, out = run(capsys, "action", "--p", "3", "--n", "2", "--d", "3", "--group", "UV", "--k", "1")
    assert code == 0
    assert out.count("matrix\t") == 2 and "91x91" in out


def test_action_identity_group(capsys):
    code, out = run(capsys, "action", "--p", "3", "--n", "1", "--d", "2", "--group", "1", "--k", "1")
    assert code == 0
    lines = out.splitlines()
    start = lines.index("matrix\tidentity\t4x4")
    rows = [list(map(int, r.split("\t"))) for r in lines[start + 1:start + 5]]
    assert rows == [[int(i == j) for j in range(4)] for i in range(4)]


def test_character_identity_column_and_agreement(capsys):
    code, out = run(capsys, "character", "--p", "2", "--n", "2", "--d", "2", "--variant", "L")
    assert code == 0
    rows = [line.split("\t") for line in out.splitlines() if line.startswith("g")]
    assert all(r[-1] == "agree" for r in rows)
    # the identity column lists piece dimensions: 6 for grade 0, 5 otherwise
    assert {int(r[2]): int(r[3]) for r in rows if r[1] == "1"} == {0: 6, 1: 5, 2: 5}
    order3 = {int(r[2]): r[3] for r in rows if r[1] == "3"}
    assert order3[1] == "-1"


def test_table_and_theorem_commands(capsys, tmp_path):
    out_file = tmp_path / "t81.tsv"
    code, _ = run(capsys, "table", "8.1", "--out", str(out_file))
    text = out_file.read_text()
    assert code == 0 and "FAIL" not in text and text.startswith("# command=table")
    code, out = run(capsys, "theorems", "1.1e")
    assert code == 0 and "FAIL" not in out


def test_gl2f2_and_sl2f3_commands(capsys):
    code, out = run(capsys, "gl2f2", "--n", "3")
    assert code == 0 and "MISMATCH" not in out
    code, out = run(capsys, "sl2f3", "--n", "1", "--k", "1", "--reduced")
    assert code == 0 and out.splitlines()[-1].endswith("0\t0\t0\t0\t1\t0\t0")


def test_permdecomp_command(capsys):
    code, out = run(capsys, "permdecomp", "--p", "3", "--n", "2", "--d", "3", "--k", "1", "--reduced")
    assert code == 0
    last = out.splitlines()[-1].split("\t")
    assert last[2:5] == ["91", "65", "not-permutation"]


def test_bad_parameters_exit_2(capsys):
    assert main(["action", "--p", "4", "--n", "1", "--d", "2"]) == 2
    assert main(["action", "--p", "2", "--n", "0", "--d", "2"]) == 2
    assert main(["character", "--p", "3", "--n", "1", "--d", "3", "--max-group-order", "100"]) == 2
    with pytest.raises(SystemExit):
        main(["table", "9.1"])


def test_render_exact():
    assert render_exact(Cyclotomic.rational(4)) == "4"
    gauss = root_of_unity(7, 1) + root_of_unity(7, 2) + root_of_unity(7, 4)
    assert render_exact(gauss) == "[7] z + z^2 + z^4"


def test_output_is_deterministic(tmp_path):
    outs = []
    for jobs in ("1", "2"):
        path = tmp_path / f"o{jobs}.tsv"
        subprocess.run([sys.executable, "-m", "moravak.cli", "table", "8.3", "--jobs", jobs, "--out", str(path)], check=True)
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]
