import subprocess
import sys

import pytest

from conftest import field
from sharply.cli import build_parser, main
from sharply.formats import (
    FormatError,
    format_group,
    parse_group_text,
    parse_table_text,
    write_table,
)
from sharply.perm import catalog


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def kv(text):
    return dict(line.split(": ", 1) for line in text.splitlines() if ": " in line)


def test_agl_pipeline(tmp_path, capsys):
    g = str(tmp_path / "g.txt")
    code, _, _ = run(["build", "agl", "--q", "9", "--dickson", "-o", g], capsys)
    assert code == 0
    code, out, _ = run(["analyze", "--group", g], capsys)
    report = kv(out)
    assert code == 0
    assert report["characteristic"] == "3" and report["split"] == "true"


def test_neumann_witness(capsys):
    code, out, _ = run(["freeprod", "neumann-witness", "--radius", "1"], capsys)
    assert code == 0
    r = kv(out)
    assert (r["u"], r["v"], r["in_tJ"]) == ("n1", "n1^-1", "false")
    assert int(r["cyclic_length"]) > 1


def test_verify_cyclic_group_fails(tmp_path, capsys):
    path = tmp_path / "c3.txt"
    path.write_text("degree: 3\ngen: 1 2 0\n")
    code, out, _ = run(["verify", "--group", str(path), "--sharp", "2"], capsys)
    assert code == 1
    assert "not 2-transitive" in out


def test_verify_m11(tmp_path, capsys):
    path = str(tmp_path / "m11.txt")
    run(["build", "catalog", "--name", "M11", "-o", path], capsys)
    code, out, _ = run(["verify", "--group", path, "--sharp", "4"], capsys)
    assert code == 0 and kv(out)["order"] == "7920"
    code, out, _ = run(["verify", "--group", path, "--sharp", "5"], capsys)
    assert code == 1


def test_group_file_round_trip():
    text = format_group(3, catalog("S(3)").generators)
    degree, gens = parse_group_text(text)
    assert format_group(degree, gens) == text


def test_group_file_comments_and_errors():
    degree, gens = parse_group_text("# S3\n\ndegree: 3\ngen: 1 2 0  # rotation\ngen: 1 0 2\n")
    assert degree == 3 and len(gens) == 2
    with pytest.raises(FormatError, match="line 2"):
        parse_group_text("degree: 3\ngen: 1 1 0\n")
    with pytest.raises(FormatError, match="line 1"):
        parse_group_text("gen: 1 0\n")
    with pytest.raises(FormatError, match="missing degree"):
        parse_group_text("# nothing\n")


def test_table_round_trip():
    text = write_table(field(4))
    S = parse_table_text(text)
    assert write_table(S) == text
    assert S.add == field(4).add and S.mul == field(4).mul


def test_truncated_table_names_the_row():
    lines = write_table(field(4)).splitlines()
    with pytest.raises(FormatError, match="mul table is missing row 2"):
        parse_table_text("\n".join(lines[:-2]) + "\n")
    with pytest.raises(FormatError, match="add table is missing row 3"):
        parse_table_text("\n".join(lines[:7] + lines[8:]) + "\n")


def test_malformed_input_exits_2(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("degree: 3\ngen: 0 1\n")
    code, _, err = run(["verify", "--group", str(bad), "--sharp", "2"], capsys)
    assert code == 2 and "line 2" in err
    code, _, err = run(["analyze", "--group", str(tmp_path / "missing.txt")], capsys)
    assert code == 2


def test_usage_errors_exit_2(capsys):
    for argv in (["verify"], ["build", "agl"], ["frobnicate"], ["verify", "--bogus", "1"]):
        with pytest.raises(SystemExit) as exc:
            main(argv)
        assert exc.value.code == 2
    capsys.readouterr()


def test_verify_table(tmp_path, capsys):
    path = str(tmp_path / "d9.txt")
    code, _, _ = run(["nearfield", "--q", "9", "--dickson", "-o", path], capsys)
    assert code == 0
    code, out, _ = run(["verify", "--table", path], capsys)
    assert code == 0 and kv(out)["verdict"] == "pass"
    broken = tmp_path / "loop.txt"
    broken.write_text("order: 5\nzero: 0\none: 1\nadd:\n0 1 2 3 4\n1 0 3 4 2\n2 4 0 1 3\n"
                      "3 2 4 0 1\n4 3 1 2 0\nmul:\n" +
                      "".join(" ".join(str(a * b % 5) for b in range(5)) + "\n" for a in range(5)))
    code, out, _ = run(["verify", "--table", str(broken), "--near-domain"], capsys)
    assert code == 1 and kv(out)["axiom"] == "right distributivity"


def test_classify(capsys):
    code, out, _ = run(["nearfield", "--classify", "--p", "3", "--k", "2"], capsys)
    assert code == 0 and kv(out)["classes"] == "2"


def test_construct(tmp_path, capsys):
    snap = tmp_path / "s.txt"
    code, out, _ = run(["construct", "--steps", "10", "--depth", "3", "--seed", "1",
                        "--snapshot", str(snap)], capsys)
    assert code == 0 and kv(out)["verdict"] == "pass"
    assert snap.read_text().startswith("points: 24\n")


def test_pgl_and_kerby(tmp_path, capsys):
    code, out, _ = run(["pgl", "--q", "5", "--emit-group", str(tmp_path / "p.txt")], capsys)
    assert code == 0 and kv(out)["order"] == "120"
    code, out, _ = run(["kerby", "--q", "5"], capsys)
    assert code == 0 and kv(out)["holds"] == "true"
    code, out, _ = run(["kerby", "--q", "5", "--convention", "zero"], capsys)
    assert code == 1 and kv(out)["witness"] == "4 0 1"
    table = tmp_path / "d9.txt"
    run(["nearfield", "--q", "9", "--dickson", "-o", str(table)], capsys)
    code, out, _ = run(["kerby", "--table", str(table), "--sigma", "search"], capsys)
    assert code == 0 and kv(out)["solutions"] == "3"


def test_extract(tmp_path, capsys):
    g = str(tmp_path / "a4.txt")
    run(["build", "catalog", "--name", "A(4)", "-o", g], capsys)
    code, out, _ = run(["extract", "--group", g], capsys)
    assert code == 0 and kv(out)["near_field"] == "true"


def test_freeprod_words(capsys):
    code, out, _ = run(["freeprod", "multiply", "t n1", "n1^-1 t"], capsys)
    assert code == 0 and kv(out)["product"] == "1"
    code, out, _ = run(["freeprod", "conjugate", "t", "n1 t n1^-1"], capsys)
    assert code == 0
    code, out, _ = run(["freeprod", "multiply", "t q7"], capsys)
    assert code == 2


def test_output_is_reproducible(capsys):
    argv = ["construct", "--steps", "15", "--depth", "2", "--seed", "4"]
    first = run(argv, capsys)
    assert run(argv, capsys) == first


def test_help_lists_acceptance_flags():
    parser = build_parser()
    text = parser.format_help()
    subs = parser._subparsers._group_actions[0].choices
    text += "".join(p.format_help() for p in subs.values())
    for flag in ("--group", "--table", "--q", "--dickson", "--sharp", "--radius",
                 "--steps", "--depth", "--seed", "-o"):
        assert flag in text


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "sharply", "freeprod", "multiply", "t", "t"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout == "product: 1\nsyllables: 0\n"
