import random

import pytest

from replab.errors import DgaError
from replab.ncdga import (
    DgaPresentation,
    Generator,
    NcMatrix,
    NcPoly,
    apply_diff,
    check_dga,
    chi_k,
    degree_distribution,
    format_distribution,
    is_zero_mod,
    nu_rm,
    poly_canonical,
    sigma_m,
    split_basepoint,
    stabilize,
    summary,
)

a, b, c = NcPoly.gen("a"), NcPoly.gen("b"), NcPoly.gen("c")
t, t_inv = NcPoly.gen("t"), NcPoly.gen("t", -1)


def test_units_cancel():
    assert t * t_inv == NcPoly.one()
    assert t_inv * t == 1
    assert a * t * t_inv * b == a * b
    assert NcPoly.word("a", ("t", 1), ("t", -1)) == a


def test_like_terms_merge():
    assert a + a == 2 * a
    assert not (a - a)
    assert a * b + b * a - a * b == b * a
    assert a * b != b * a
    assert NcPoly.zero() == 0
    assert poly_canonical(list((a + a).terms)) == 2 * a


def test_gen_exponent():
    with pytest.raises(ValueError):
        NcPoly.gen("t", 2)


def test_str():
    assert str(NcPoly.word("a1", ("t", -1), coeff=2)) == "2*a1*t^-1"
    assert str(-a) == "-a"
    assert str(NcPoly.zero()) == "0"
    assert str(1 - a - b * a) == "1 - a - b*a"


def test_str_orders_by_length(trefoil):
    assert str(trefoil.d("a4")) == "a1 + a3 + t^-1 + a1*a2*a3"
    assert str(trefoil.d("a5")) == "1 - a1 - a3 - a3*a2*a1"


def test_substitute():
    p = a * t + t_inv
    images = {("t", 1): b * c, ("t", -1): NcPoly.gen("c", -1) * NcPoly.gen("b", -1)}
    assert p.substitute(images) == a * b * c + NcPoly.word(("c", -1), ("b", -1))
    assert p.letters() == {"a", "t"}
    assert (p + 3).constant_term() == 3


def test_evaluate(f3):
    assert (a * b + 2).evaluate({"a": 2, "b": 2}, f3) == 0
    assert (t_inv + 1).evaluate({"t": 2}, f3) == 0
    assert t_inv.evaluate({"t": 0}, f3) is None


def test_homogeneous_degree():
    degrees = {"a": 0, "b": 1, "c": 2, "t": 0}
    assert (a * b + b).homogeneous_degree(degrees) == 1
    assert (a + b).homogeneous_degree(degrees) is None
    assert (a + b).word_degrees(degrees) == {0, 1}


def test_matrices():
    M = NcMatrix([[a, 1], [0, b]])
    assert M.shape == (2, 2)
    assert (M * NcMatrix.identity(2)) == M
    assert (M * M)[0, 1] == a + b
    assert (M - M).is_zero()
    assert (M * 2)[0, 0] == 2 * a
    assert (c * M)[1, 1] == c * b
    assert NcMatrix.diag([a, b])[1, 1] == b


def test_apply_diff_sign_rule(trefoil):
    a4, a5 = NcPoly.gen("a4"), NcPoly.gen("a5")
    expected = trefoil.d("a4") * a5 - a4 * trefoil.d("a5")
    assert apply_diff(trefoil, a4 * a5) == expected
    assert apply_diff(trefoil, NcPoly.gen("t", -1)) == 0
    assert apply_diff(trefoil, trefoil.d("a4")) == 0


def test_apply_diff_unknown_generator(trefoil):
    with pytest.raises(DgaError):
        apply_diff(trefoil, NcPoly.gen("z"))


@pytest.mark.parametrize("name", ["unknot", "trefoil", "m52"])
def test_builtins_pass_check(name, request):
    report = check_dga(request.getfixturevalue(name))
    assert report["valid"]
    assert report["failures"] == []


def test_check_dga_detects_grading():
    dga = DgaPresentation(
        [Generator("c", 2), Generator("t", 0, True)], {"c": t}, name="bad"
    )
    report = check_dga(dga)
    assert not report["valid"]
    assert not report["grading_ok"]
    assert report["squares_to_zero"]


def test_check_dga_detects_square():
    dga = DgaPresentation(
        [Generator("a", 0), Generator("b", 1), Generator("c", 2)],
        {"b": a, "c": b},
        name="bad",
    )
    report = check_dga(dga)
    assert not report["valid"]
    assert report["grading_ok"]
    assert report["failures"] == [("c", "d^2", "a")]


@pytest.mark.parametrize(
    "generators, diff",
    [
        ([Generator("t", 1, True)], {}),
        ([Generator("a", 0)], {"b": a}),
        ([Generator("a", 0)], {"a": NcPoly.gen("z")}),
        ([Generator("a", 1), Generator("b", 0)], {"a": NcPoly.gen("b", -1)}),
        ([Generator("a", 1), Generator("t", 0, True)], {"t": a}),
        ([Generator("a", 0), Generator("a", 1)], {}),
    ],
)
def test_presentation_rejects(generators, diff):
    with pytest.raises(DgaError):
        DgaPresentation(generators, diff)


def test_components_must_partition():
    gens = [Generator("s", 0, True), Generator("t", 0, True)]
    with pytest.raises(DgaError):
        DgaPresentation(gens, {}, components=[["s"]])
    dga = DgaPresentation(gens, {}, components=[["s"], ["t"]])
    assert [c.initial for c in dga.components] == ["s", "t"]


def test_split_basepoint(unknot):
    split = split_basepoint(unknot, "t", 2)
    assert [g.name for g in split.basepoints] == ["t_1", "t_2"]
    assert split.d("b") == NcPoly.word("t_1", "t_2") + 1
    assert split.components[0].basepoints == ("t_1", "t_2")
    assert check_dga(split)["valid"]
    assert split_basepoint(unknot, "t", 1) is unknot
    with pytest.raises(DgaError):
        split_basepoint(unknot, "b", 2)


def test_split_basepoint_inverse(trefoil):
    split = split_basepoint(trefoil, "t", 3)
    a1, a2, a3 = (NcPoly.gen(f"a{i}") for i in (1, 2, 3))
    inverse = NcPoly.word(("t_3", -1), ("t_2", -1), ("t_1", -1))
    assert split.d("a4") == inverse + a1 + a3 + a1 * a2 * a3
    assert check_dga(split)["valid"]


def test_stabilize(trefoil):
    stab = stabilize(trefoil, 1)
    assert len(stab.chords) == len(trefoil.chords) + 2
    assert stab.d("sa1") == NcPoly.gen("sb1")
    assert stab.generator("sb1").degree == 0
    assert check_dga(stab)["valid"]


def test_degree_distribution(trefoil, m52):
    assert degree_distribution(trefoil) == {0: 3, 1: 2}
    assert degree_distribution(m52) == {-2: 1, 0: 3, 1: 4, 2: 1}
    assert format_distribution({1: 8, -1: 1, 0: 14}) == "{-1: 1, 0: 14, 1: 8}"
    assert summary(m52)["num_generators"] == 9


def test_chi_k():
    assert chi_k({-1: 1, 0: 14, 1: 8}, 0) == 7
    m52 = {-2: 1, 0: 3, 1: 4, 2: 1}
    assert [chi_k(m52, k) for k in (-2, 0, 2)] == [1, -1, 1]
    assert chi_k({}, 0) == 0


def test_sigma_m():
    assert sigma_m({0: 1}, 3) == 1
    assert sigma_m({-1: 1, 0: 14, 1: 8}, 0) == 7
    assert sigma_m({-2: 1, 0: 3, 1: 4, 2: 1}, 2) == 1
    assert sigma_m({1: 1}, 2) == -1
    assert sigma_m({2: 1}, 2) == 3
    assert sigma_m({}, 4) == 0


def test_sigma_m_partial_sums_match_closed_form():
    # sigma_m asserts the agreement internally
    rng = random.Random(20)
    for _ in range(200):
        degrees = rng.sample(range(-5, 6), rng.randint(1, 5))
        dist = {d: rng.randint(1, 3) for d in degrees}
        for m in (0, 2, 3, 4, 5):
            sigma_m(dist, m)


def test_nu_rm():
    assert nu_rm({0: 1}, 0, 1) == 1
    assert nu_rm({1: 2, 2: 1}, 1, 3) == 2 - 1


def test_is_zero_mod():
    assert is_zero_mod(0, 0)
    assert not is_zero_mod(2, 0)
    assert is_zero_mod(-4, 2)
    assert not is_zero_mod(3, 2)


def _random_word(rng, dga):
    letters = [(g.name, 1) for g in dga.chords]
    letters += [(g.name, e) for g in dga.basepoints for e in (1, -1)]
    word = [rng.choice(letters) for _ in range(rng.randint(1, 4))]
    return NcPoly.word(*word, coeff=rng.choice((1, -1, 2)))


def _random_homogeneous(rng, dga):
    """A sum of random words sharing the degree of the first."""
    first = _random_word(rng, dga)
    degree = first.homogeneous_degree(dga.degrees)
    out = first
    for _ in range(rng.randint(0, 6)):
        word = _random_word(rng, dga)
        if word.homogeneous_degree(dga.degrees) == degree:
            out = out + word
    return out if out.homogeneous_degree(dga.degrees) is not None else first


@pytest.mark.parametrize("name", ["trefoil", "m52"])
def test_leibniz_rule_on_builtins(name, request):
    dga = request.getfixturevalue(name)
    rng = random.Random(11)
    for _ in range(50):
        u, v = _random_homogeneous(rng, dga), _random_homogeneous(rng, dga)
        sign = (-1) ** (u.homogeneous_degree(dga.degrees) % 2)
        expected = apply_diff(dga, u) * v + sign * (u * apply_diff(dga, v))
        assert apply_diff(dga, u * v) == expected


def test_leibniz_rule_on_random_presentations(random_record):
    rng = random.Random(12)
    for index in range(30):
        dga = random_record(rng, index).dga
        assert check_dga(dga)["valid"]
        for _ in range(10):
            u, v = _random_homogeneous(rng, dga), _random_homogeneous(rng, dga)
            sign = (-1) ** (u.homogeneous_degree(dga.degrees) % 2)
            expected = apply_diff(dga, u) * v + sign * (u * apply_diff(dga, v))
            assert apply_diff(dga, u * v) == expected
