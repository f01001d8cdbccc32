from fractions import Fraction

import pytest

from replab import repcount, ruling
from replab.braid import BraidWord
from replab.errors import InterpolationError, ProblemError
from replab.ruling import LaurentZ
from replab.sqrtq import SqrtQ

TREFOIL_R = LaurentZ({-1: 2, 1: 1})
SATELLITE_R = LaurentZ({-1: 3, 1: 9, 3: 6, 5: 1})


def test_z_of_q():
    assert ruling.z_of_q(2) == SqrtQ(0, Fraction(1, 2), 2)
    assert ruling.z_of_q(4) == Fraction(3, 2)
    assert ruling.z_of_q(3) ** 2 == Fraction(4, 3)


def test_quantum_int():
    assert ruling.quantum_int(1, 5) == 1
    assert ruling.quantum_int(2, 4) == Fraction(5, 2)
    assert ruling.quantum_int(2, 2) == SqrtQ(0, Fraction(3, 2), 2)
    assert ruling.quantum_int(3, 2) == Fraction(7, 2)


def test_alpha_n():
    assert ruling.alpha_n(1, 3) == 1
    assert ruling.alpha_n(2, 2) == 3
    assert ruling.alpha_n(2, 3) == 4
    assert ruling.alpha_n(3, 2) == 21


def test_laurent():
    assert str(TREFOIL_R) == "2z^-1 + z"
    assert str(LaurentZ({0: -1, 2: Fraction(1, 2)})) == "-1 + 1/2*z^2"
    assert str(LaurentZ()) == "0"
    assert not LaurentZ({3: 0})
    assert TREFOIL_R[1] == 1
    assert TREFOIL_R[0] == 0
    assert TREFOIL_R.support == (-1, 1)
    assert TREFOIL_R.parities() == {1}
    assert TREFOIL_R.is_integral()
    assert not LaurentZ({1: Fraction(1, 3)}).is_integral()
    assert SATELLITE_R.to_json() == {"-1": "3", "1": "9", "3": "6", "5": "1"}


def test_laurent_evaluate():
    assert TREFOIL_R.evaluate(2) == SqrtQ(0, Fraction(5, 2), 2)
    assert TREFOIL_R.evaluate(3) == SqrtQ(0, Fraction(5, 3), 3)
    assert SATELLITE_R.evaluate(2) == SqrtQ(0, Fraction(73, 8), 2)
    assert LaurentZ({-1: 1}).evaluate(4) == Fraction(2, 3)


def test_interpolate(unknot, trefoil):
    values = [(q, repcount.aug_number(trefoil, 0, q)) for q in (2, 3)]
    assert ruling.interpolate_ruling(values, (-1, 1), integral=True) == TREFOIL_R
    values = [(q, repcount.aug_number(unknot, 0, q)) for q in (2, 3)]
    assert ruling.interpolate_ruling(values, (-1, 0)) == LaurentZ({-1: 1})


def test_interpolate_mixes_square_and_nonsquare_q():
    values = [(q, SATELLITE_R.evaluate(q)) for q in (2, 3, 4, 5, 7)]
    assert ruling.interpolate_ruling(values, (-1, 5)) == SATELLITE_R


def test_interpolate_errors():
    values = [(q, TREFOIL_R.evaluate(q)) for q in (2, 3)]
    with pytest.raises(InterpolationError, match="window too small"):
        ruling.interpolate_ruling(values, (-1, -1))
    with pytest.raises(InterpolationError, match="need more points"):
        ruling.interpolate_ruling([(4, TREFOIL_R.evaluate(4))], (-1, 1))
    with pytest.raises(InterpolationError, match="repeated"):
        ruling.interpolate_ruling(values + values[:1], (-1, 1))
    with pytest.raises(InterpolationError):
        ruling.interpolate_ruling(values, (1, 0))
    half = LaurentZ({-1: Fraction(1, 2)})
    values = [(q, half.evaluate(q)) for q in (2, 3)]
    assert ruling.interpolate_ruling(values, (-1, -1)) == half
    with pytest.raises(InterpolationError, match="not integral"):
        ruling.interpolate_ruling(values, (-1, -1), integral=True)


def test_defaults(trefoil):
    assert ruling.default_window(trefoil) == (-10, 10)
    assert ruling.default_qs(0, (-1, 1)) == (2, 3, 4)
    assert ruling.default_qs(0, (0, 0)) == (2, 3)
    assert ruling.default_qs(1, (-5, 5)) == ruling.DEFAULT_QS_CHAR2


@pytest.mark.parametrize(
    "qs, window",
    [
        ((2,), (0, 0)),
        ((4,), (0, 0)),
        ((2, 3), (-1, 1)),
        ((3, 2, 3), (-1, 1)),
        ((2, 3, 5), (-2, 2)),
    ],
)
def test_default_window_narrows_to_qs(trefoil, qs, window):
    assert ruling.default_window(trefoil, qs) == window


def test_default_window_needs_a_point(trefoil):
    with pytest.raises(InterpolationError, match="no window"):
        ruling.default_window(trefoil, ())


def test_ruling_polynomial(trefoil, unknot):
    assert ruling.ruling_polynomial(trefoil, 0, window=(-1, 1)) == TREFOIL_R
    assert ruling.ruling_polynomial(unknot, 0) == LaurentZ({-1: 1})
    assert ruling.ruling_polynomial(unknot, 2, qs=(2, 3)) == LaurentZ({-1: 1})
    assert ruling.ruling_polynomial(trefoil, 0, qs=(2, 3)) == TREFOIL_R


@pytest.mark.slow
def test_ruling_polynomial_default_window(trefoil):
    assert ruling.ruling_polynomial(trefoil, 0) == TREFOIL_R


@pytest.mark.parametrize(
    "name, word, mu, q",
    [
        ("unknot", "", (0, 0), 2),
        ("unknot", "", (1, 0), 2),
        ("unknot", "s1", (0, 0), 3),
        ("trefoil", "", (0, 0), 2),
        ("trefoil", "s1", (0, 0), 2),
        ("trefoil", "s1", (0, 0), 3),
        pytest.param("trefoil", "s1", (0, 0), 4, marks=pytest.mark.slow),
        pytest.param("trefoil", "s1", (0, 0), 5, marks=pytest.mark.slow),
        pytest.param("m52", "s1", (0, 0), 2, marks=pytest.mark.slow),
    ],
)
def test_theorem_A(name, word, mu, q, request):
    knot = request.getfixturevalue(name)
    report = ruling.theorem_A_check(knot, BraidWord.parse(word, n=2), mu, 0, q)
    assert report["equal"], (report["lhs"], report["rhs"])


def test_theorem_A_trefoil_values(trefoil, a2):
    report = ruling.theorem_A_check(trefoil, a2, (0, 0), 0, 2)
    assert report["lhs"] == report["rhs"] == SqrtQ(0, Fraction(73, 8), 2)
    assert report["num_differentials"] == 1
    assert report.name == "trefoil:s1:m=0:q=2"


def test_theorem_A_sums_over_differentials(unknot):
    report = ruling.theorem_A_check(unknot, BraidWord.identity(2), (1, 0), 0, 3)
    assert report["num_differentials"] == 3
    assert report["equal"]


def test_colored_ruling_unknot(unknot):
    value = ruling.colored_ruling(unknot, 1, 0, 3, route="both")
    assert value.agree
    assert value.value == repcount.aug_number(unknot, 0, 3)
    assert value.breakdown == {"id": value.satellite}


def test_colored_ruling_trefoil(trefoil):
    value = ruling.colored_ruling(trefoil, 2, 0, 2, route="both")
    assert value.agree
    assert set(value.breakdown) == {"id", "s1"}
    assert value.breakdown["s1"] == SqrtQ(0, Fraction(73, 8), 2)
    only_rep = ruling.colored_ruling(trefoil, 2, 0, 2, route="representation")
    assert only_rep.satellite is None
    assert only_rep.agree is None
    assert only_rep.value == value.satellite


@pytest.mark.slow
def test_colored_ruling_three_colors(unknot):
    assert ruling.colored_ruling(unknot, 3, 0, 2, route="both").agree


def test_colored_ruling_rejects(trefoil):
    with pytest.raises(ProblemError):
        ruling.colored_ruling(trefoil, 2, 1, 2)
    with pytest.raises(ProblemError):
        ruling.colored_ruling(trefoil, 2, 0, 2, route="skein")


@pytest.mark.slow
def test_satellite_ruling_polynomial(trefoil_sat):
    qs = (2, 3, 4, 5, 7)
    value = ruling.ruling_polynomial(trefoil_sat.dga, 0, qs=qs, window=(-1, 5))
    assert value == SATELLITE_R


@pytest.mark.slow
@pytest.mark.parametrize(
    "name, n, m, q",
    [("m52", 2, 2, 2), ("m52", 2, 0, 2), ("trefoil", 3, 0, 2), ("trefoil", 2, 2, 3)],
)
def test_colored_ruling_routes_agree(name, n, m, q, request):
    value = ruling.colored_ruling(request.getfixturevalue(name), n, m, q, route="both")
    assert value.agree, (value.satellite, value.value)
