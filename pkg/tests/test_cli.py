
import pytest

from fusionlab.cli import main
from fusionlab.errors import ParseError
from fusionlab.groupfile import (
    eval_subgroup_spec,
    parse_group_text,
    perm_to_cycles,
)

D8_FILE = """\
# dihedral group of order 8
group D8file
perm 4
(1 2)
(1 3 2 4)
"""

TRIVIAL_TABLE = """\
group triv
table 1
0
"""

S3_FILE = """\
group S3file
perm 3
(1 2)
(1 2 3)
"""


def test_parse_perm_file_gives_order_8():
    g = parse_group_text(D8_FILE)
    assert g.order == 8
    assert g.name == "D8file"


def test_parse_trivial_table():
    g = parse_group_text(TRIVIAL_TABLE)
    assert g.order == 1


def test_parse_malformed_cycle_reports_line():
    bad = "group X\nperm 4\n(1 2\n"
    with pytest.raises(ParseError) as err:
        parse_group_text(bad)
    assert err.value.line == 3


def test_parse_rejects_missing_header():
    with pytest.raises(ParseError):
        parse_group_text("perm 3\n(1 2)\n")


def test_parse_rejects_bad_row_width():
    with pytest.raises(ParseError):
        parse_group_text("group X\ntable 2\n0 1\n1\n")


def test_eval_subgroup_spec_words():
    g = parse_group_text(S3_FILE)
    whole = eval_subgroup_spec(g, "a,b")
    assert whole.order == 6
    rot = eval_subgroup_spec(g, "b")
    assert rot.order == 3
    rot_inv = eval_subgroup_spec(g, "B")
    assert rot_inv.mask == rot.mask
    by_index = eval_subgroup_spec(g, "0")
    assert by_index.order == 1


def test_perm_to_cycles_roundtrip():
    from fusionlab.groupfile import parse_cycles

    p = (1, 0, 3, 2)
    assert parse_cycles(perm_to_cycles(p), 4) == p


@pytest.fixture()
def d8_path(tmp_path):
    path = tmp_path / "d8.grp"
    path.write_text(D8_FILE)
    return str(path)


def test_cli_analyze(capsys, d8_path):
    assert main(["analyze", d8_path]) == 0
    out = capsys.readouterr().out
    assert "order 8" in out


def test_cli_jthompson(capsys, d8_path):
    assert main(["jthompson", d8_path, "2"]) == 0
    out = capsys.readouterr().out
    assert "J(S)" in out and "order 8" in out


def test_cli_fusion_profile(capsys):
    assert main(["fusion", "S4", "2", "--profile-all", "--essentials"]) == 0
    out = capsys.readouterr().out
    assert "essential subgroups: 1" in out


def test_cli_fusion_dump_homs(capsys, d8_path):
    assert main(["fusion", d8_path, "2", "--dump-homs", "a", "ab"]) == 0
    out = capsys.readouterr().out
    assert "morphisms" in out


def test_cli_subsystem(capsys):
    assert main(["subsystem", "S4", "2", "--kind", "normalizer",
                 "--q", "0"]) == 0
    out = capsys.readouterr().out
    assert "carrier order 8" in out


def test_cli_hfree(capsys):
    assert main(["hfree", "SL(2,3)", "2", "--h", "sigma4"]) == 0
    out = capsys.readouterr().out
    assert "S4-free: True" in out


def test_cli_wcompute(capsys, tmp_path, d8_path):
    assert main(["wcompute", d8_path, "2", "--catalog"]) == 0
    out = capsys.readouterr().out
    assert "W(S): order 2" in out


def test_cli_verify_ok(capsys, tmp_path):
    rc = main(["--cache-dir", str(tmp_path), "verify", "--theorem", "1",
               "--group", "SL(2,3)", "--p", "2"])
    assert rc == 0
    out = capsys.readouterr().out
    assert "hypotheses=True" in out and "conclusion=True" in out


def test_cli_verify_frobenius(capsys, tmp_path):
    rc = main(["--cache-dir", str(tmp_path), "verify", "--theorem",
               "frobenius", "--group", "A4", "--p", "3"])
    assert rc == 0


def test_cli_parse_error_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.grp"
    bad.write_text("group X\nperm 4\n(1 2\n")
    assert main(["analyze", str(bad)]) == 1


def test_cli_cap_exceeded_exit_code(capsys):
    assert main(["--order-cap", "10", "analyze", "S4"]) == 3


def test_cli_catalog(capsys):
    assert main(["catalog"]) == 0
    out = capsys.readouterr().out
    assert "Qd(3)" in out and "validated 16 entries" in out


Q8_FILE = """\
group Q8file
perm 8
(1 2 5 6)(3 4 7 8)
(1 3 5 7)(2 8 6 4)
"""

SL23_FILE = """\
group SL23file
perm 8
(1 4 7)(2 8 5)
(1 6 2 3)(4 7 8 5)
"""


def test_cli_wcompute_with_family_file(capsys, tmp_path):
    q8 = tmp_path / "q8.grp"
    q8.write_text(Q8_FILE)
    sl = tmp_path / "sl23.grp"
    sl.write_text(SL23_FILE)
    rc = main(["wcompute", str(q8), "2", "--family", str(sl)])
    assert rc == 0
    out = capsys.readouterr().out
    assert "admitted" in out and "W(S): order 2" in out


def test_cli_verify_with_family_file(capsys, tmp_path):
    sl = tmp_path / "sl23.grp"
    sl.write_text(SL23_FILE)
    rc = main(["--cache-dir", str(tmp_path), "verify", "--theorem", "2",
               "--group", str(sl), "--p", "2", "--family", str(sl)])
    assert rc == 0
    out = capsys.readouterr().out
    assert "conclusion=True" in out
