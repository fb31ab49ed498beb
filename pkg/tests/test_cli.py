from pathlib import Path

import pytest

from gddkit.cli import main

DATA = str(Path(__file__).parent.parent / "src" / "gddkit" / "data" / "exceptional_rows.gdd")
FIXTURES = Path(__file__).parent / "fixtures"

ITEM_11_1_1 = """\
# item=11.1.1 N=3
gdd M=6 n=6
diag 2 2 3 2 2 2
edge 1 2 4
edge 1 6 4
edge 2 3 4
edge 3 4 4
edge 4 5 4
edge 5 6 4
"""

AFFINE_A11 = """\
gdd M=10 n=2
diag 2 2
edge 1 2 6
"""

CHAIN_T7 = """\
gdd M=6 n=5
diag 2 2 2 2 2
edge 1 2 4
edge 2 3 4
edge 3 4 4
edge 4 5 4
"""


@pytest.fixture
def files(tmp_path):
    d = {}
    for name, text in [
        ("item", ITEM_11_1_1), ("a11", AFFINE_A11), ("chain", CHAIN_T7)
    ]:
        p = tmp_path / f"{name}.gdd"
        p.write_text(text)
        d[name] = str(p)
    return d


def test_check_quasi_affine_item(files, capsys):
    rc = main(["check", files["item"], "--db", DATA])
    out = capsys.readouterr().out
    assert rc == 0
    assert "quasi-affine: YES" in out
    assert "arithmetic: no" in out


def test_check_affine_catalogue_member(files, capsys):
    rc = main(["check", files["a11"], "--db", DATA])
    out = capsys.readouterr().out
    assert rc == 0
    assert "Cartan type: yes (affine)" in out
    assert "affine family: A^(1)_1" in out
    assert "arithmetic: no" in out


def test_check_classical_chain(files, capsys):
    rc = main(["check", files["chain"], "--db", DATA])
    out = capsys.readouterr().out
    assert rc == 0
    assert "classical: yes (T7)" in out
    assert "arithmetic: yes" in out


def test_check_is_deterministic(files, capsys):
    main(["check", files["item"], "--db", DATA])
    first = capsys.readouterr().out
    main(["check", files["item"], "--db", DATA])
    second = capsys.readouterr().out
    assert first == second


def test_check_parse_error_exit_1(tmp_path, capsys):
    p = tmp_path / "bad.gdd"
    p.write_text("gdd M=6 n=2\ndiag 2 2\nedge 1 2 0\n")
    assert main(["check", str(p)]) == 1


def test_enumerate_without_db_exit_3(capsys, tmp_path):
    rc = main(["enumerate", "--rank", "6", "--order-of-q", "3",
               "--out", str(tmp_path / "r.txt")])
    assert rc == 3


def test_enumerate_rejects_small_rank(capsys, tmp_path):
    with pytest.raises(ValueError):
        main(["enumerate", "--rank", "5", "--order-of-q", "3", "--db", DATA])


def test_db_validate(capsys):
    rc = main(["db-validate", "--db", DATA])
    out = capsys.readouterr().out
    assert rc == 0
    assert "99 entries" not in out  # conjugate expansion enlarges the count
    assert "entries after conjugate expansion" in out


def test_db_validate_bad_file(tmp_path, capsys):
    p = tmp_path / "bad.gdd"
    p.write_text("# row=1 gdd=1 N=3\ngdd M=6 n=2\ndiag 0 2\nedge 1 2 4\n")
    assert main(["db-validate", "--db", str(p)]) == 1


def test_catalogue(capsys):
    rc = main(["catalogue", "--order-of-q", "5", "--max-rank", "6"])
    out = capsys.readouterr().out
    assert rc == 0
    assert "family=G1_2" in out  # ord(q) = 5 > 3 admits it
    assert "family=A2_2\n" in out  # ord(q) = 5 > 4 admits it
    blocks = [b for b in out.split("\n\n") if b.strip().startswith("# family")]
    assert len(blocks) >= 16


def test_catalogue_excludes_small_orders(capsys):
    main(["catalogue", "--order-of-q", "3", "--max-rank", "6"])
    out = capsys.readouterr().out
    assert "family=G1_2" not in out  # needs ord(q) > 3
    assert "family=A1_N" in out


def test_export_dot(files, capsys):
    rc = main(["export-dot", files["item"]])
    out = capsys.readouterr().out
    assert rc == 0
    assert out.count("--") == 6  # six labelled edges
    assert out.count("[label=") == 12  # six vertices + six edges


def test_export_dot_stdin(monkeypatch, capsys):
    import io

    monkeypatch.setattr("sys.stdin", io.StringIO(CHAIN_T7))
    rc = main(["export-dot", "-"])
    out = capsys.readouterr().out
    assert rc == 0 and "v1 -- v2" in out


def test_enumerate_restricted_smoke(tmp_path, capsys):
    # a tiny run through the command path: rank 6, expected = empty file
    out = tmp_path / "report.txt"
    expected = tmp_path / "none.gdd"
    expected.write_text("")
    rc = main([
        "enumerate", "--rank", "6", "--order-of-q", "4", "--db", DATA,
        "--out", str(out), "--expected", str(expected),
    ])
    assert rc == 0
    text = out.read_text()
    assert "quasi-affine enumeration rank=6" in text
    assert "matched=0 missing=0" in text


def test_verify_subcommand(tmp_path, capsys):
    report = tmp_path / "report.gdd"
    report.write_text(ITEM_11_1_1)
    good = tmp_path / "good.gdd"
    good.write_text(ITEM_11_1_1)
    assert main(["verify", "--report", str(report), "--expected", str(good)]) == 0
    out = capsys.readouterr().out
    assert "missing=0" in out

    other = tmp_path / "other.gdd"
    other.write_text(CHAIN_T7)
    assert main(["verify", "--report", str(report), "--expected", str(other)]) == 2
