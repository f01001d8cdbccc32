import json

import pytest

from replab import cli
from replab.errors import ParseError


def run_json(capsys, *argv):
    code = cli.main([*argv, "--json"])
    return code, json.loads(capsys.readouterr().out)


def test_parse_helpers():
    assert cli.parse_ints("0, 1,2") == [0, 1, 2]
    assert cli.parse_window("-2:6") == (-2, 6)
    assert cli.parse_matrix("0,1,1,0", 2) == ((0, 1), (1, 0))
    with pytest.raises(ParseError):
        cli.parse_ints("1,x")
    with pytest.raises(ParseError):
        cli.parse_window("2-6")
    with pytest.raises(ParseError):
        cli.parse_matrix("1,0,0", 2)


def test_load_matrix_file(tmp_path):
    fpath = tmp_path / "targets.txt"
    fpath.write_text("# minus one\n2,0,0,2\n\n1,0,0,1\n", encoding="utf-8")
    assert cli.load_matrix_file(str(fpath), 2) == [((2, 0), (0, 2)), ((1, 0), (0, 1))]


def test_path_matrix(capsys):
    code, record = run_json(capsys, "path-matrix", "--braid", "s1")
    assert code == cli.EXIT_OK
    assert record["flavor"] == "xz"
    assert record["reduced"] is True
    assert record["matrix"] == "[p1, 1]\n[1, 0]"


def test_bruhat_single_matrix(capsys):
    code, record = run_json(
        capsys, "bruhat", "--n", "2", "--q", "2", "--matrix", "0,1,1,0"
    )
    assert code == cli.EXIT_OK
    assert record["cell"] == "(1 2)"
    assert record["permutation"] == [2, 1]
    assert record["braid"] == "s1"


def test_bruhat_partition(capsys):
    code, record = run_json(capsys, "bruhat", "--n", "2", "--q", "3")
    assert code == cli.EXIT_OK
    assert record["partition"] is True
    assert record["total"] == 48
    assert sorted(record["cell_sizes"].values()) == [12, 36]


def test_count_augs_satellite(capsys):
    code, record = run_json(
        capsys, "count-augs", "--knot", "trefoil", "--satellite", "s1", "--q", "2"
    )
    assert code == cli.EXIT_OK
    assert record["knot"] == "S(trefoil, s1)"
    assert record["count"] == 146
    assert record["aug_number"]["a"] == "0"
    assert record["aug_number"]["b"] == "73/8"
    assert record["aug_number"]["q"] == 2


def test_count_reps(capsys):
    code, record = run_json(
        capsys, "count-reps", "--knot", "m52", "--n", "2", "--q", "2", "--m", "2"
    )
    assert code == cli.EXIT_OK
    assert record["count"] == 124
    assert record["kernel_units"] == 6
    assert record["d"] == [[0, 0], [0, 0]]


def test_count_reps_pathset_target(capsys):
    code, record = run_json(
        capsys, "count-reps", "--knot", "trefoil", "--n", "2", "--q", "2",
        "--target", "pathset:s1",
    )
    assert code == cli.EXIT_OK
    assert record["count"] == 146


def test_count_reps_matrix_file_target(capsys, tmp_path):
    fpath = tmp_path / "targets.txt"
    fpath.write_text("2,0,0,2\n1,0,0,1\n", encoding="utf-8")
    code, record = run_json(
        capsys, "count-reps", "--knot", "unknot", "--n", "2", "--q", "3",
        "--target", str(fpath),
    )
    assert code == cli.EXIT_OK
    assert record["count"] == 1


def test_count_reps_all_differentials(capsys):
    code, record = run_json(
        capsys, "count-reps", "--knot", "unknot", "--degrees", "1,0", "--q", "3",
        "--d", "auto",
    )
    assert code == cli.EXIT_OK
    assert len(record["records"]) == 3
    assert sorted(r["count"] for r in record["records"]) == [2, 2, 3]


def test_satellite(capsys):
    code, record = run_json(capsys, "satellite", "--knot", "trefoil", "--braid", "s1")
    assert code == cli.EXIT_OK
    assert record["generators"] == 25
    assert record["components"] == 1
    assert record["chi_0"] == 7
    assert record["sigma_lattice"] == 4
    assert record["sigma_dip"] == 2
    assert record["sigma_crossing"] == 1


def test_satellite_dump(capsys):
    argv = ["satellite", "--knot", "unknot", "--braid", "", "--n", "1", "--dump"]
    code = cli.main(argv)
    assert code == cli.EXIT_OK
    out = capsys.readouterr().out
    assert out.splitlines()[0] == "knot S(unknot, id)"
    assert "d b_1_1 = 1 + t1" in out


def test_theorem_a(capsys):
    code, record = run_json(
        capsys, "theorem-a", "--knot", "trefoil", "--braid", "s1", "--q", "2"
    )
    assert code == cli.EXIT_OK
    assert record["equal"] is True


def test_ruling_interp(capsys):
    code, record = run_json(
        capsys, "ruling-interp", "--knot", "trefoil", "--window=-1:1", "--qs", "2,3",
        "--integral",
    )
    assert code == cli.EXIT_OK
    assert record["ruling"]["polynomial"] == "2z^-1 + z"
    assert record["window"] == [-1, 1]


def test_ruling_interp_narrows_default_window(capsys):
    code, record = run_json(capsys, "ruling-interp", "--knot", "trefoil", "--qs", "2,3")
    assert code == cli.EXIT_OK
    assert record["window"] == [-1, 1]
    assert record["ruling"]["polynomial"] == "2z^-1 + z"


def test_colored_ruling(capsys):
    code, record = run_json(
        capsys, "colored-ruling", "--knot", "unknot", "--n", "1", "--m", "0",
        "--q", "3", "--route", "both",
    )
    assert code == cli.EXIT_OK
    assert record["agree"] is True


def test_homfly_compare(capsys):
    code, record = run_json(
        capsys, "homfly-compare", "--knot", "m52", "--poly", "m52_n2.poly", "--qs", "2"
    )
    assert code == cli.EXIT_OK
    assert record["equal"] is True
    assert record["n"] == 2
    assert record["values"]["2"]["homfly"]["a"] == "31/6"
    assert record["bounds"]["sharp"] is True


def test_text_output(capsys):
    assert cli.main(["count-augs", "--knot", "trefoil", "--q", "3"]) == cli.EXIT_OK
    out = capsys.readouterr().out
    assert "count" in out
    assert "10" in out


@pytest.mark.parametrize(
    "argv",
    [
        ["count-augs", "--knot", "figure8", "--q", "2"],
        ["count-augs", "--knot", "trefoil", "--q", "6"],
        ["path-matrix", "--braid", "s0"],
        ["ruling-interp", "--knot", "trefoil", "--window=1:x"],
    ],
)
def test_bad_input_exits_with_usage(capsys, argv):
    assert cli.main(argv) == cli.EXIT_USAGE
    assert capsys.readouterr().err.startswith("replab: error:")


def test_verification_cases():
    cases = dict(cli.verification_cases("quick"))
    assert len(cases) == len(cli.verification_cases("quick"))
    for name in (
        "kalman form, n=3",
        "bruhat partition GL(2,3)",
        "path subset of s1 over F_2 has 4 matrices",
        "satellite of trefoil by s1: degrees and chi_0",
        "trefoil representation split 40/33/40/33",
        "ruling polynomial of trefoil",
        "path matrices of s1 s2 s1 s3 and s2 s1 s2 s3",
        "satellite augmentations biject onto representations, q=2",
        "stabilization invariance trefoil, m=0",
        "basepoint split invariance unknot, m=2",
        "sigma_m partial sums match the closed form",
        "sigma_m of satellites splits by generator family",
    ):
        assert cases[name]()
    assert "bruhat partition GL(3,3)" not in cases
    assert "ruling polynomial of trefoil satellite" not in cases
    full = [name for name, _ in cli.verification_cases("full")]
    assert "bruhat partition GL(3,3)" in full
    assert [name for name, _ in cli.verification_cases("paper")] == full


@pytest.mark.slow
def test_verify_quick_suite(capsys):
    assert cli.main(["verify"]) == cli.EXIT_OK
    assert "cases passed" in capsys.readouterr().out
