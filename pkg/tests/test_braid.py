import itertools

import pytest

from replab import braid
from replab.braid import BraidWord
from replab.errors import BraidError, ParseError
from replab.ncdga import NcMatrix, NcPoly

p1, p2, p3, p4 = (NcPoly.gen(f"p{j}") for j in range(1, 5))


@pytest.fixture(scope="module")
def b1213():
    return BraidWord.parse("s1 s2 s1 s3")


@pytest.mark.parametrize(
    "text, n, letters",
    [
        ("s1 s2 s1 s3", 4, (1, 2, 1, 3)),
        ("σ1,σ2", 3, (1, 2)),
        ("", 1, ()),
        ("1 1", 2, (1, 1)),
    ],
)
def test_parse(text, n, letters):
    b = BraidWord.parse(text)
    assert (b.n, b.letters) == (n, letters)


def test_parse_with_strands():
    assert BraidWord.parse("sigma_2", n=4) == BraidWord(4, [2])
    assert str(BraidWord.parse("s2 s1")) == "s2 s1"


def test_parse_errors():
    with pytest.raises(ParseError):
        BraidWord.parse("x1")
    with pytest.raises(BraidError):
        BraidWord(2, [2])
    with pytest.raises(BraidError):
        BraidWord(0)
    with pytest.raises(ParseError):
        braid.parse_mu("0,a")
    assert braid.parse_mu("0, 1,1 0") == (0, 1, 1, 0)


def test_concatenation():
    assert BraidWord(3, [1]) + BraidWord(3, [2]) == BraidWord(3, [1, 2])
    with pytest.raises(BraidError):
        BraidWord(3, [1]) + BraidWord(2, [1])


def test_permutation(b1213):
    perm = braid.permutation_of(b1213)
    assert perm == (3, 2, 4, 1)
    assert braid.inverse_permutation(perm) == (4, 2, 1, 3)
    assert braid.cycle_notation(perm) == "(1 3 4)"
    assert braid.cycles(perm) == [(1, 4, 3), (2,)]
    assert braid.permutation_length(perm) == 4
    assert braid.permutation_of(BraidWord.identity(3)) == (1, 2, 3)


def test_cycle_notation():
    assert braid.cycle_notation((1, 2, 3)) == "id"
    assert braid.cycle_notation((2, 1)) == "(1 2)"
    assert braid.cycle_notation((2, 1, 4, 3)) == "(1 2)(3 4)"


def test_is_reduced(b1213):
    assert braid.is_reduced(b1213)
    assert not braid.is_reduced(BraidWord(2, [1, 1]))
    assert not braid.is_reduced(BraidWord.parse("s1 s2 s1 s2"))


def test_reduced_word():
    assert braid.reduced_word((2, 1)) == BraidWord(2, [1])
    assert braid.reduced_word((3, 2, 1)) == BraidWord.parse("s2 s1 s2")
    assert braid.reduced_word((3, 2, 4, 1)) == BraidWord.parse("s2 s1 s2 s3")
    assert braid.reduced_word((1, 2, 3)) == BraidWord.identity(3)
    with pytest.raises(BraidError):
        braid.reduced_word((1, 1, 2))


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_reduced_words_realize_permutation(n):
    for perm in itertools.permutations(range(1, n + 1)):
        b = braid.reduced_word(perm)
        assert braid.permutation_of(b) == perm
        assert braid.is_reduced(b)
        assert len(b) == braid.permutation_length(perm)


def test_all_reduced_words():
    assert braid.reduced_words((3, 2, 1)) == [
        BraidWord.parse("s1 s2 s1"),
        BraidWord.parse("s2 s1 s2"),
    ]
    assert len(braid.reduced_words((4, 3, 2, 1))) == 16


def test_crossing_degrees_and_signs(b1213):
    mu = (0, 1, 1, 0)
    assert braid.crossing_degrees(b1213, mu) == [-1, -1, 0, 0]
    assert braid.crossing_signs(b1213, mu) == [-1, -1, -1, 1]
    assert braid.crossing_signs(BraidWord(2, [1]), (0, 1)) == [-1]
    with pytest.raises(BraidError):
        braid.crossing_degrees(b1213, (0, 0))


def test_braid_degrees():
    degrees = braid.braid_degrees(BraidWord(2, [1]), (1, 0))
    assert degrees == {"t1": 0, "t2": 0, "p1": 1, "x_1_2": 1, "y_1_2": 0}


def test_path_matrix_xz(b1213):
    P = braid.path_matrix_xz(b1213, (0, 0, 0, 0))
    assert P.rows[0] == (p2 + p1 * p3, p1, p4, NcPoly.one())
    assert P[1, 0] == p3
    assert P[2, 0] == 1
    assert P[3, 2] == 1
    assert P.flavor == "xz"


def test_path_matrix_xz_signs(b1213):
    P = braid.path_matrix_xz(b1213, (0, 1, 1, 0))
    assert P.rows[0] == (-p2 + p1 * p3, -p1, p4, NcPoly.one())


@pytest.mark.parametrize("mu", list(itertools.product((0, 1), repeat=4)))
def test_path_matrix_xz_full(b1213, mu):
    _, s2, s3, s4 = ((-1) ** x for x in mu)
    assert braid.path_matrix_xz(b1213, mu) == NcMatrix(
        [
            [s3 * p2 + s2 * s3 * p1 * p3, s2 * p1, s4 * p4, 1],
            [s3 * p3, 1, 0, 0],
            [1, 0, 0, 0],
            [0, 0, 1, 0],
        ]
    )
    reduced = BraidWord.parse("s2 s1 s2 s3")
    assert braid.path_matrix_xz(reduced, mu) == NcMatrix(
        [
            [s3 * p2, s2 * p3, s4 * p4, 1],
            [s3 * p1, 1, 0, 0],
            [1, 0, 0, 0],
            [0, 0, 1, 0],
        ]
    )


def test_kalman_form():
    b = BraidWord.parse("s2 s1 s2 s3")
    P = braid.path_matrix_xz(b, (0, 0, 0, 0))
    expected = NcMatrix([[p2, p3, p4, 1], [p1, 1, 0, 0], [1, 0, 0, 0], [0, 0, 1, 0]])
    assert P == expected
    assert braid.kalman_form_check(P, (3, 2, 4, 1))
    assert braid.kalman_labels(P)[(1, 0)] == ("p1", 1)


def test_kalman_form_rejects_products(b1213):
    P = braid.path_matrix_xz(b1213, (0, 0, 0, 0))
    assert not braid.kalman_form_check(P, (3, 2, 4, 1))
    assert not braid.kalman_form_check(P, (1, 2, 3))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_reduced_words_have_kalman_form(n):
    for perm in itertools.permutations(range(1, n + 1)):
        for mu in [(0,) * n, tuple(i % 2 for i in range(n))]:
            P = braid.path_matrix_xz(braid.reduced_word(perm), mu)
            assert braid.kalman_form_check(P, perm), (perm, mu)


@pytest.mark.slow
def test_reduced_words_have_kalman_form_five_strands():
    for perm in itertools.permutations(range(1, 6)):
        P = braid.path_matrix_xz(braid.reduced_word(perm), (0,) * 5)
        assert braid.kalman_form_check(P, perm)


@pytest.mark.parametrize("mu", [(0, 0, 0, 0), (0, 1, 1, 0), (1, 2, 0, 3)])
@pytest.mark.parametrize("flavor", ["xz", "xy"])
def test_path_matrix_inverse(b1213, mu, flavor):
    build = braid.path_matrix_xz if flavor == "xz" else braid.path_matrix_xy
    P = build(b1213, mu)
    inverse = braid.path_matrix_inverse(P)
    assert inverse.flavor == f"inverse-{flavor}"
    assert P * inverse == NcMatrix.identity(4)
    assert inverse * P == NcMatrix.identity(4)
    with pytest.raises(BraidError):
        braid.path_matrix_inverse(inverse)


def test_path_matrix_xy_two_strands():
    P = braid.path_matrix_xy(BraidWord(2, [1]), (0, 0))
    t1, t2, x = NcPoly.gen("t1"), NcPoly.gen("t2"), NcPoly.gen("x_1_2")
    assert P == NcMatrix([[t1 * p1, t1 * p1 * x + t1], [t2, t2 * x]])


def test_lambda_m(b1213):
    assert braid.lambda_m(b1213, (0, 0, 0, 0), 0) == len(b1213)
    assert braid.lambda_m(b1213, (0, 0, 0, 0), 3) == len(b1213)
    assert braid.lambda_m(b1213, (0, 1, 1, 0), 0) == 4
