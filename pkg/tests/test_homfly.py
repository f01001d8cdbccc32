from fractions import Fraction

import pytest
import sympy

from replab import homfly, knotlib
from replab.errors import HomflyError, ParseError
from replab.homfly import A, S, KnotMeta, TwoVarPoly
from replab.sqrtq import SqrtQ

POLY_FILES = [
    "m52_n2.poly",
    "unknot_n1.poly",
    "unknot_n2.poly",
    "unknot_framed0_n1.poly",
    "unknot_framed0_n2.poly",
]


def test_two_var_poly():
    P = TwoVarPoly.from_expr(A - 1 / A)
    assert P.coeffs == {1: 1, -1: -1}
    assert P == TwoVarPoly({1: sympy.Integer(1), -1: sympy.Integer(-1)})
    assert P + TwoVarPoly.from_expr(1 / A) == TwoVarPoly.from_expr(A)
    assert P * TwoVarPoly({-1: S}) == TwoVarPoly.from_expr(S - S / A ** 2)
    assert not TwoVarPoly({2: sympy.Integer(0)})
    assert sympy.simplify(P.to_expr() - (A - 1 / A)) == 0


def test_parse_poly():
    assert homfly.parse_poly("a - a^-1") == TwoVarPoly.from_expr(A - 1 / A)
    assert homfly.parse_poly("q^(1/2)*a^2") == TwoVarPoly({2: S})
    assert homfly.parse_poly("(a^2 - 1)/a") == homfly.parse_poly("a - a^-1")


@pytest.mark.parametrize(
    "text, match",
    [
        ("", "empty"),
        ("  \n", "empty"),
        ("a +", "malformed"),
        ("a*b", "unknown symbols"),
        ("1/0", "divides by zero"),
        ("1/(a + 1)", "monomial"),
    ],
)
def test_parse_poly_errors(text, match):
    with pytest.raises(ParseError, match=match):
        homfly.parse_poly(text)


@pytest.mark.parametrize("fname", POLY_FILES)
def test_serialize_reads_back(fname):
    P = homfly.load_poly(fname).poly
    assert homfly.parse_poly(homfly.serialize(P)) == P


def test_load_poly():
    data = homfly.load_poly("m52_n2.poly")
    assert data.knot == "m52"
    assert data.n == 2
    assert data.framing == "legendrian"
    assert "cofactor" in data.note


def test_load_poly_requires_header(tmp_path):
    fpath = tmp_path / "bare.poly"
    fpath.write_text("# knot: unknot\na - a^-1\n", encoding="utf-8")
    with pytest.raises(ParseError, match="lacks header fields"):
        homfly.load_poly(fpath)
    with pytest.raises(ParseError):
        homfly.load_poly("missing.poly", data_dir=tmp_path)


@pytest.mark.parametrize(
    "fname, degree",
    [
        ("m52_n2.poly", 0),
        ("unknot_n1.poly", 0),
        ("unknot_n2.poly", 0),
        ("unknot_framed0_n1.poly", 1),
        ("unknot_framed0_n2.poly", 2),
    ],
)
def test_deg_a(fname, degree):
    assert homfly.deg_a(homfly.load_poly(fname).poly) == degree


def test_deg_a_of_zero():
    assert homfly.deg_a(TwoVarPoly()) is None


def test_specialize():
    special = homfly.specialize_a_inv_zero(homfly.load_poly("unknot_n1.poly").poly)
    assert homfly.evaluate(special, 2) == SqrtQ.sqrt(2)
    assert homfly.evaluate(special, 4) == Fraction(2, 3)
    with pytest.raises(HomflyError):
        homfly.specialize_a_inv_zero(homfly.load_poly("unknot_framed0_n1.poly").poly)
    assert homfly.specialize_a_inv_zero(TwoVarPoly({-2: S})) == 0


def test_evaluate():
    assert homfly.evaluate(S + 1 / S, 4) == Fraction(5, 2)
    assert homfly.evaluate(S ** 2 - 1, 3) == 2
    assert homfly.evaluate(1 / S, 2) == SqrtQ(0, Fraction(1, 2), 2)


def test_framing():
    assert homfly.framing_factor(2, -1) == TwoVarPoly({-2: S ** -2})
    assert homfly.framing_factor(1, 3) == TwoVarPoly({3: sympy.Integer(1)})
    P = homfly.load_poly("m52_n2.poly").poly
    assert homfly.reframe(homfly.reframe(P, 2, 3), 2, -3) == P


@pytest.mark.parametrize("n", [1, 2])
def test_unknot_colored_matches_data(n):
    framed0 = homfly.load_poly(f"unknot_framed0_n{n}.poly").poly
    legendrian = homfly.load_poly(f"unknot_n{n}.poly").poly
    assert homfly.unknot_colored(n) == framed0
    assert homfly.unframe(legendrian, n, -1) == framed0


def test_compare_with_rep_m52(m52):
    P = homfly.load_poly("m52_n2.poly").poly
    report = homfly.compare_with_rep(P, m52, 2, (2, 3))
    assert report["equal"]
    assert report["mismatches"] == []
    assert report["values"][2] == (Fraction(31, 6), Fraction(31, 6))
    assert report.name == "m52"


def test_compare_with_rep_unknot(unknot):
    P = homfly.load_poly("unknot_n1.poly").poly
    assert homfly.compare_with_rep(P, unknot, 1, (2, 3))["equal"]


def test_compare_with_rep_reports_mismatch(m52):
    P = homfly.load_poly("m52_n2.poly").poly + TwoVarPoly({0: sympy.Integer(1)})
    report = homfly.compare_with_rep(P, m52, 2, (2,))
    assert not report["equal"]
    assert report["mismatches"] == [2]


def test_degree_bounds_unknot(unknot):
    meta = knotlib.builtin("unknot").meta
    assert meta == KnotMeta(tb=-1, rotation=0)
    P = homfly.load_poly("unknot_n1.poly").poly
    report = homfly.check_degree_bounds(P, meta, 1, dga=unknot)
    assert report["deg_a"] == 0
    assert report["deg_a_reduced"] == -1
    assert report["deg_a_unframed"] == 1
    assert report["tb_bound_ok"]
    assert report["sharp"]
    assert report["witness_found"]
    assert report["witness_qs_checked"] == [2]
    assert report["coincides"]
    assert report["valid"]


def test_degree_bounds_m52(m52):
    meta = knotlib.builtin("m52").meta
    assert meta.tb == 1
    P = homfly.load_poly("m52_n2.poly").poly
    report = homfly.check_degree_bounds(P, meta, 2, dga=m52)
    assert report["deg_a"] == 0
    assert report["deg_a_reduced"] == -2
    assert report["deg_a_unframed"] == -2
    assert report["sharp"]
    assert report["coincides"]
    assert report["valid"]


def test_degree_bounds_without_tb():
    P = homfly.load_poly("unknot_framed0_n1.poly").poly
    report = homfly.check_degree_bounds(P, KnotMeta(), 1)
    assert report["bound_ok"] is False
    assert report["sharp"] is None
    assert report["witness_found"] is None
    assert not report["valid"]
    assert report.name == "homfly"
