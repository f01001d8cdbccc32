import pickle

import pytest

from replab import gf
from replab.errors import FieldError

ORDERS = (2, 3, 4, 5, 7, 8, 9)


@pytest.mark.parametrize(
    "q, expected",
    [(2, (2, 1)), (4, (2, 2)), (8, (2, 3)), (9, (3, 2)), (13, (13, 1)), (125, (5, 3))],
)
def test_prime_power(q, expected):
    assert gf.prime_power(q) == expected


@pytest.mark.parametrize("q", [0, 1, 6, 12, 100])
def test_prime_power_rejects(q):
    with pytest.raises(FieldError):
        gf.prime_power(q)


def test_field_too_large():
    with pytest.raises(FieldError):
        gf.field_make(257)


def test_least_irreducible():
    assert gf.least_irreducible(2, 2) == (1, 1, 1)
    assert gf.least_irreducible(2, 3) == (1, 1, 0, 1)
    assert gf.least_irreducible(3, 2) == (1, 0, 1)
    assert not gf.is_irreducible((1, 0, 1), 2)


def test_f4_arithmetic(f4):
    # x = 2, x^2 = x + 1 = 3
    assert f4.mul(2, 2) == 3
    assert f4.mul(2, 3) == 1
    assert f4.add(2, 3) == 1
    assert f4.neg(3) == 3
    assert f4.from_int(5) == 1


@pytest.mark.parametrize("q", ORDERS)
def test_field_axioms(q):
    field = gf.field_make(q)
    for a in field.elements():
        assert field.add(a, field.neg(a)) == 0
        assert field.mul(a, 1) == a
        assert field.mul(a, 0) == 0
        for b in field.elements():
            assert field.add(a, b) == field.add(b, a)
            assert field.mul(a, b) == field.mul(b, a)
            assert field.sub(field.add(a, b), b) == a
    for a in field.units():
        assert field.mul(a, field.inv(a)) == 1
        assert field.div(a, a) == 1


@pytest.mark.parametrize("q", ORDERS)
def test_distributivity(q):
    field = gf.field_make(q)
    for a in field.elements():
        for b in field.elements():
            for c in field.elements():
                left = field.mul(a, field.add(b, c))
                right = field.add(field.mul(a, b), field.mul(a, c))
                assert left == right


@pytest.mark.parametrize("q", ORDERS)
def test_multiplicative_group_is_cyclic(q):
    field = gf.field_make(q)
    orders = [field.multiplicative_order(a) for a in field.units()]
    assert max(orders) == q - 1
    assert all((q - 1) % k == 0 for k in orders)


def test_pow(f3):
    assert f3.pow(2, 2) == 1
    assert f3.pow(2, -1) == 2
    assert f3.pow(0, 0) == 1


def test_inverse_of_zero(f3):
    with pytest.raises(FieldError):
        f3.inv(0)
    with pytest.raises(FieldError):
        f3.multiplicative_order(0)


def test_field_cache_and_pickle():
    assert gf.field_make(9) is gf.field_make(9)
    field = pickle.loads(pickle.dumps(gf.field_make(8)))
    assert field == gf.field_make(8)
    assert field.mul(2, 4) == gf.field_make(8).mul(2, 4)


def test_field_elements(f4):
    x = f4.element(2)
    one = f4.element(1)
    assert x * x == x + one
    assert x * x.inverse() == one
    assert -x == x
    assert x ** 3 == one
    assert (x / x) == one
    assert gf.field_arith(x, one, "add") == f4.element(3)
    assert gf.field_arith(x, None, "inv") == f4.element(3)


def test_field_element_errors(f2, f3):
    with pytest.raises(FieldError):
        f2.element(1) + f3.element(1)
    with pytest.raises(FieldError):
        f3.element(3)
    with pytest.raises(ValueError):
        gf.field_arith(f3.element(1), f3.element(1), "pow")


def test_matrix_ops(f3):
    A = ((1, 2), (0, 1))
    B = ((2, 0), (1, 1))
    assert gf.mat_mul(A, B, f3) == ((1, 2), (1, 1))
    assert gf.mat_add(A, B, f3) == ((0, 2), (1, 2))
    assert gf.mat_scale(A, 2, f3) == ((2, 1), (0, 2))
    assert gf.mat_identity(2) == ((1, 0), (0, 1))
    assert gf.mat_zeros(2, 3) == ((0, 0, 0), (0, 0, 0))


def test_rank_and_inverse(f3):
    A = ((1, 2), (2, 1))
    assert gf.mat_rank(A, f3) == 1
    assert not gf.is_invertible(A, f3)
    assert gf.mat_inverse(A, f3) is None
    B = ((1, 1, 0), (0, 1, 2), (1, 0, 0))
    inv = gf.mat_inverse(B, f3)
    assert gf.mat_mul(B, inv, f3) == gf.mat_identity(3)
    assert gf.mat_mul(inv, B, f3) == gf.mat_identity(3)


def test_solve_affine(f2):
    particular, basis = gf.solve_affine([[1, 1]], [1], f2)
    assert particular == [1, 0]
    assert basis == [[1, 1]]
    assert gf.solve_affine([[1, 1], [1, 1]], [0, 1], f2) is None
    particular, basis = gf.solve_affine([], [], f2)
    assert particular == []
    assert basis == []
