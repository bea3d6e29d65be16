import json

import pytest

from quandlekit.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, (json.loads(out.out) if out.out else None), out.err


def test_invariant_examples(capsys):
    code, doc, _ = run(capsys, "invariant", "--pd", "trefoil.pd", "--quandle", "dihedral:3",
                       "--cocycle", "theta:3", "--workers", "1")
    assert code == 0 and doc["schema"] == 1
    assert doc["invariant"]["values"] == {"0": 3, "2": 6} and doc["colorings"] == 9
    _, doc, _ = run(capsys, "invariant", "--pd", "unknot.pd", "--quandle", "dihedral:5",
                    "--cocycle", "theta:5")
    assert doc["invariant"]["values"] == {"0": 5}
    _, doc, _ = run(capsys, "invariant", "--pd", "trefoil.pd", "--quandle", "dihedral:4",
                    "--cocycle", "theta:4")
    assert doc["normalized_by"] == 4 and doc["invariant"]["values"] == {"0": 4}


def test_invariant_inputs(capsys, tmp_path):
    pd = tmp_path / "k.pd"
    pd.write_text("X[1,5,2,4] X[3,1,4,6] X[5,3,6,2]\n")
    _, a, _ = run(capsys, "invariant", "--pd", str(pd), "--quandle", "dihedral:3",
                  "--cocycle", "theta:3")
    _, b, _ = run(capsys, "invariant", "--pd", "X[1,5,2,4] X[3,1,4,6] X[5,3,6,2]",
                  "--quandle", "dihedral:3", "--cocycle", "theta:3")
    assert a["invariant"] == b["invariant"]
    _, c, _ = run(capsys, "invariant", "--pd", "trefoil", "--quandle", "conj:D6:h",
                  "--cocycle", "transfer-b1b2:3")
    assert c["invariant"]["values"] == {"0": 3, "1": 6}
    _, d, _ = run(capsys, "invariant", "--pd", "trefoil", "--quandle", "dihedral:3",
                  "--cocycle", "transfer-b1b2:3")
    assert d["invariant"] == a["invariant"]


def test_homology_examples(capsys):
    _, doc, _ = run(capsys, "homology", "--quandle", "dihedral:3", "--degree", "3", "--coeff", "F3")
    assert doc["dim"] == 1
    _, doc, _ = run(capsys, "homology", "--quandle", "dihedral:3", "--degree", "3", "--coeff", "Z")
    assert doc["torsion"] == [3]
    _, doc, _ = run(capsys, "homology", "--quandle", "dihedral:3", "--degree", "2", "--coeff", "Z")
    assert doc["rank"] == 0 and doc["torsion"] == []


def test_cover_examples(capsys):
    _, doc, _ = run(capsys, "cover", "--pd", "trefoil.pd", "--fold", "2", "--branched")
    assert doc["abelianization"]["torsion"] == [3] and doc["abelianization"]["free_rank"] == 0
    _, doc, _ = run(capsys, "cover", "--pd", "fig8.pd", "--fold", "2", "--branched")
    assert doc["abelianization"]["torsion"] == [5]
    _, doc, _ = run(capsys, "cover", "--pd", "trefoil.pd", "--fold", "2")
    assert doc["abelianization"]["pretty"] == "Z + Z/3"
    _, doc, _ = run(capsys, "cover", "--pd", "trefoil", "--branched", "--quandle", "conj:D6:h")
    assert doc["cycle_invariant"]["value"]["values"] == {"0": 3, "1": 6}


def test_dw_and_compare(capsys):
    _, doc, _ = run(capsys, "dw", "--lens", "3:1")
    assert doc["triangulation"]["values"] == {"0": 1, "2": 2} and doc["agree"] is True
    _, doc, _ = run(capsys, "dw", "--lens", "5:0")
    assert doc["triangulation"]["values"] == {"0": 5}
    _, doc, _ = run(capsys, "compare", "--p", "5")
    assert doc["constant"] == 5 and doc["match"] is True


@pytest.mark.parametrize("argv,code", [
    (["invariant", "--pd", "nope", "--quandle", "dihedral:3", "--cocycle", "theta:3"], 2),
    (["invariant", "--pd", "trefoil", "--quandle", "dihedral:3", "--cocycle", "theta:5"], 2),
    (["invariant", "--pd", "trefoil", "--quandle", "conj:D6:zz", "--cocycle", "theta:3"], 2),
    (["invariant", "--pd", "X[1,2,3]", "--quandle", "dihedral:3", "--cocycle", "theta:3"], 2),
    (["homology", "--quandle", "weird:3", "--degree", "2"], 2),
    (["cover", "--pd", "trefoil", "--fold", "1"], 2),
    (["compare", "--p", "4"], 2),
    (["dw", "--lens", "3"], 2),
    (["invariant", "--pd", "trefoil", "--quandle", "dihedral:3", "--cocycle", "theta:3",
      "--workers", "0"], 2),
])
def test_exit_codes(capsys, argv, code):
    assert main(argv) == code
    assert capsys.readouterr().err


def test_resource_cap_exit(capsys, monkeypatch):
    monkeypatch.setenv("QUANDLEKIT_SIZE_CAP", "100")
    assert main(["homology", "--quandle", "dihedral:5", "--degree", "3"]) == 3


def test_argparse_usage_exit():
    with pytest.raises(SystemExit) as exc:
        main(["invariant"])
    assert exc.value.code == 2


def test_output_file_is_stable(tmp_path, capsys):
    paths = [tmp_path / "a.json", tmp_path / "b.json"]
    for w, path in zip((1, 2), paths):
        assert main(["compare", "--p", "3", "--workers", str(w), "--out", str(path)]) == 0
    assert paths[0].read_bytes() == paths[1].read_bytes()
    assert json.loads(paths[0].read_text())["command"] == "compare"


def test_module_entry_point():
    import subprocess
    import sys
    res = subprocess.run([sys.executable, "-m", "quandlekit", "dw", "--lens", "3:1"],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0
    assert json.loads(res.stdout)["agree"] is True
