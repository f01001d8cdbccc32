"""
Ruling polynomials recovered from augmentation numbers, the satellite formula for
augmentation numbers, and colored ruling polynomials.
"""
from __future__ import annotations

import itertools
import logging
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import pandas as pd
import sympy

from replab import braid as braid_
from replab import gf
from replab.braid import BraidWord
from replab.errors import InterpolationError, ProblemError
from replab.ncdga import DgaPresentation
from replab.pathsets import PathSubsetSpec
from replab.repcount import (
    GradedVS,
    RepProblem,
    aug_number,
    enumerate_differentials,
    reduced_rep_number,
    total_rep_number,
)
from replab.satellite import build_satellite
from replab.sqrtq import SqrtQ

LOGGER = logging.getLogger(__name__)

DEFAULT_QS = (2, 3, 4, 5, 7, 8, 9, 11, 13)
DEFAULT_QS_CHAR2 = (2, 4, 8, 16)
ROUTES = ("satellite", "representation", "both")


class LaurentZ:
    """
    Laurent polynomial in ``z`` with rational coefficients, kept without zero terms.

    Args:
        coeffs: Map from exponent to coefficient.
    """

    def __init__(self, coeffs: Optional[Mapping[int, int | Fraction]] = None):
        self.coeffs: Dict[int, Fraction] = {
            int(j): Fraction(c) for j, c in sorted((coeffs or {}).items()) if c
        }

    def __eq__(self, other):
        if not isinstance(other, LaurentZ):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(self.coeffs.items()))

    def __bool__(self):
        return bool(self.coeffs)

    def __getitem__(self, j: int) -> Fraction:
        return self.coeffs.get(j, Fraction(0))

    @property
    def support(self) -> Tuple[int, ...]:
        return tuple(self.coeffs)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs.values())

    def parities(self) -> set:
        return {j % 2 for j in self.coeffs}

    def evaluate(self, q: int) -> SqrtQ:
        """Value at ``z = q^(1/2) - q^(-1/2)``."""
        z = z_of_q(q)
        total = SqrtQ(0, 0, q)
        for j, c in self.coeffs.items():
            total = total + z ** j * c
        return total

    def to_json(self) -> Dict[str, str]:
        return {str(j): str(c) for j, c in self.coeffs.items()}

    def __str__(self):
        if not self.coeffs:
            return "0"
        out = []
        for i, (j, c) in enumerate(self.coeffs.items()):
            mag = abs(c)
            power = "" if j == 0 else ("z" if j == 1 else f"z^{j}")
            if not power:
                text = str(mag)
            elif mag == 1:
                text = power
            else:
                text = f"{mag}{power}" if mag.denominator == 1 else f"{mag}*{power}"
            if i == 0:
                out.append(text if c > 0 else f"-{text}")
            else:
                out.append(("+ " if c > 0 else "- ") + text)
        return " ".join(out)

    def __repr__(self):
        return f"LaurentZ('{self}')"


def z_of_q(q: int) -> SqrtQ:
    """``z = q^(1/2) - q^(-1/2)``."""
    return SqrtQ(0, 1 - Fraction(1, q), q)


def quantum_int(r: int, q: int) -> SqrtQ:
    """``[r] = (q^(r/2) - q^(-r/2)) / (q^(1/2) - q^(-1/2))``."""
    return (SqrtQ.q_half_power(q, r) - SqrtQ.q_half_power(q, -r)) / z_of_q(q)


def alpha_n(n: int, q: int) -> SqrtQ:
    """``(q^(1/2))^(n(n-1)/2) [n][n-1]...[1]``."""
    result = SqrtQ.q_half_power(q, n * (n - 1) // 2)
    for r in range(1, n + 1):
        result = result * quantum_int(r, q)
    return result


def satellite_ruling_value(
    knot: DgaPresentation,
    b: BraidWord,
    mu: Optional[Sequence[int]],
    m: int,
    q: int,
    threads: Optional[int] = None,
) -> SqrtQ:
    """The augmentation number of ``S(K, beta)``: its ruling polynomial at ``z(q)``."""
    sat = build_satellite(knot, b, mu)
    return aug_number(sat.dga, m, q, threads=threads)


def theorem_A_check(
    knot: DgaPresentation,
    b: BraidWord,
    mu: Optional[Sequence[int]],
    m: int,
    q: int,
    threads: Optional[int] = None,
) -> pd.Series:
    """
    Compare the augmentation number of ``S(K, beta)`` with
    ``q^(-lambda_m/2) z^(-n) sum_d Rep~_m(K, (V_beta, d), B^m_beta)``, both computed
    exactly and independently.
    """
    mu = tuple(mu) if mu is not None else (0,) * b.n
    field = gf.field_make(q)
    lhs = satellite_ruling_value(knot, b, mu, m, q, threads=threads)
    space = GradedVS(mu, field)
    spec = PathSubsetSpec(b, mu, m, field)
    total = SqrtQ(0, 0, q)
    differentials = enumerate_differentials(space, m)
    for d in differentials:
        problem = RepProblem(knot, space, d, m, targets=[spec])
        total = total + reduced_rep_number(problem, threads=threads)
    rhs = (
        SqrtQ.q_half_power(q, -braid_.lambda_m(b, mu, m))
        * z_of_q(q) ** (-b.n)
        * total
    )
    LOGGER.info(
        "satellite formula for %s, '%s', q=%d: %s vs %s", knot.name, b, q, lhs, rhs
    )
    return pd.Series(
        index=["equal", "lhs", "rhs", "num_differentials"],
        data=[lhs == rhs, lhs, rhs, len(differentials)],
        name=f"{knot.name}:{b or 'id'}:m={m}:q={q}",
    )


def _z_power_parts(q: int, j: int) -> Tuple[Fraction, Fraction]:
    value = z_of_q(q) ** j
    return value.a, value.b


def _equation_rows(q: int, exponents: Sequence[int]) -> List[List[sympy.Rational]]:
    """Rational part row, then the sqrt(q) part row unless every power is rational."""
    parts = [_z_power_parts(q, j) for j in exponents]
    rows = [[sympy.Rational(a.numerator, a.denominator) for a, _ in parts]]
    if any(b for _, b in parts):
        rows.append([sympy.Rational(b.numerator, b.denominator) for _, b in parts])
    return rows


def interpolate_ruling(
    values: Sequence[Tuple[int, SqrtQ]],
    window: Tuple[int, int],
    integral: bool = False,
) -> LaurentZ:
    """
    The Laurent polynomial in ``z`` supported on ``window`` taking the given values
    at ``z = q^(1/2) - q^(-1/2)``.

    Each value ``a + b sqrt(q)`` gives two rational equations when ``q`` is not a
    square (``z^j`` is rational for even ``j`` and a rational multiple of
    ``sqrt(q)`` for odd ``j``) and one when it is.

    Raises:
        InterpolationError: "window too small" if no polynomial fits,
            "need more points" if several do, or on repeated ``q``.
    """
    lo, hi = window
    if lo > hi:
        raise InterpolationError(f"empty window [{lo}, {hi}]")
    qs = [q for q, _ in values]
    if len(set(qs)) != len(qs):
        raise InterpolationError(f"repeated q values in {qs}")
    exponents = list(range(lo, hi + 1))
    rows, rhs = [], []
    for q, value in values:
        q_rows = _equation_rows(q, exponents)
        rows.extend(q_rows)
        rhs.append(sympy.Rational(value.a.numerator, value.a.denominator))
        if len(q_rows) > 1:
            if value.b and value.q != q:
                raise InterpolationError(f"value {value} is not in Q(sqrt({q}))")
            rhs.append(sympy.Rational(value.b.numerator, value.b.denominator))
    A = sympy.Matrix(rows)
    y = sympy.Matrix(rhs)
    try:
        solution, params = A.gauss_jordan_solve(y)
    except ValueError:
        raise InterpolationError(
            f"window too small: no polynomial on [{lo}, {hi}] fits"
        )
    if params.shape[0]:
        raise InterpolationError(
            f"need more points: {params.shape[0]} free coefficients on [{lo}, {hi}]"
        )
    coeffs = {
        j: Fraction(int(c.p), int(c.q))
        for j, c in zip(exponents, solution)
    }
    result = LaurentZ(coeffs)
    if integral and not result.is_integral():
        raise InterpolationError(f"interpolated polynomial {result} is not integral")
    for q, value in values:
        assert result.evaluate(q) == value, (q, value)
    LOGGER.debug("interpolated %s from q in %s", result, qs)
    return result


def default_window(
    dga: DgaPresentation, qs: Optional[Sequence[int]] = None
) -> Tuple[int, int]:
    """
    ``[-2c, 2c]`` for ``c`` Reeb chords, narrowed symmetrically until the values at
    ``qs`` determine every coefficient on it.

    Without ``qs`` the full window is returned. Otherwise the result is the widest
    symmetric window whose interpolation system at ``qs`` has full column rank.

    Raises:
        InterpolationError: if ``qs`` cannot determine even the constant term.
    """
    width = 2 * len(dga.chords)
    if qs is None:
        return -width, width
    qs = sorted(set(qs))
    for w in range(width, -1, -1):
        exponents = list(range(-w, w + 1))
        rows = [row for q in qs for row in _equation_rows(q, exponents)]
        if len(rows) >= len(exponents) and sympy.Matrix(rows).rank() == len(
            exponents
        ):
            if w < width:
                LOGGER.info(
                    "window for %s narrowed from [%d, %d] to [%d, %d] by q in %s",
                    dga.name, -width, width, -w, w, qs,
                )
            return -w, w
    raise InterpolationError(f"no window is determined by q in {qs}")


def default_qs(m: int, window: Tuple[int, int]) -> Tuple[int, ...]:
    """The smallest prime powers, one per exponent of the window as far as they go."""
    pool = DEFAULT_QS_CHAR2 if m % 2 else DEFAULT_QS
    return pool[: max(2, window[1] - window[0] + 1)]


def ruling_polynomial(
    dga: DgaPresentation,
    m: int,
    qs: Optional[Sequence[int]] = None,
    window: Optional[Tuple[int, int]] = None,
    threads: Optional[int] = None,
) -> LaurentZ:
    """
    The m-graded ruling polynomial of ``dga``'s Legendrian, interpolated from its
    augmentation numbers.
    """
    if window is None:
        qs = tuple(qs) if qs else default_qs(m, default_window(dga))
        window = default_window(dga, qs)
    qs = tuple(qs) if qs else default_qs(m, window)
    values = [(q, aug_number(dga, m, q, threads=threads)) for q in qs]
    return interpolate_ruling(values, window)


class ColoredRulingValue:
    """
    Value of the n-colored m-graded ruling polynomial at ``q``.

    Attributes:
        n
        m
        q
        satellite: Value from the satellite sum, if computed.
        representation: Total representation number, if computed.
        breakdown: Augmentation number of each permutation braid's satellite.
    """

    def __init__(
        self,
        n: int,
        m: int,
        q: int,
        satellite: Optional[SqrtQ] = None,
        representation: Optional[SqrtQ] = None,
        breakdown: Optional[Dict[str, SqrtQ]] = None,
    ):
        self.n = n
        self.m = m
        self.q = q
        self.satellite = satellite
        self.representation = representation
        self.breakdown = dict(breakdown or {})

    @property
    def value(self) -> SqrtQ:
        return self.satellite if self.satellite is not None else self.representation

    @property
    def agree(self) -> Optional[bool]:
        if self.satellite is None or self.representation is None:
            return None
        return self.satellite == self.representation

    def __repr__(self):
        return (
            f"ColoredRulingValue(n={self.n}, m={self.m}, q={self.q}, "
            f"satellite={self.satellite}, representation={self.representation})"
        )


def colored_ruling(
    knot: DgaPresentation,
    n: int,
    m: int,
    q: int,
    route: str = "satellite",
    threads: Optional[int] = None,
) -> ColoredRulingValue:
    """
    ``R^m_{n,K}(q) = (1/alpha_n) sum_beta q^(l(beta)/2) R^m_{S(K,beta)}(z)`` over the
    positive permutation braids on ``n`` strands with Maslov potential 0, or the
    total n-dimensional representation number, or both.

    Raises:
        ProblemError: for ``m = 1`` or an unknown route.
    """
    if m == 1:
        raise ProblemError("the 1-graded colored ruling polynomial is not defined")
    if route not in ROUTES:
        raise ProblemError(f"route must be one of {ROUTES}, not '{route}'")
    result = ColoredRulingValue(n, m, q)
    if route in ("satellite", "both"):
        total = SqrtQ(0, 0, q)
        for perm in itertools.permutations(range(1, n + 1)):
            b = braid_.reduced_word(perm)
            value = satellite_ruling_value(knot, b, None, m, q, threads=threads)
            result.breakdown[str(b) or "id"] = value
            total = total + SqrtQ.q_half_power(q, len(b)) * value
        result.satellite = total / alpha_n(n, q)
    if route in ("representation", "both"):
        result.representation = total_rep_number(knot, n, m, q, threads=threads)
    LOGGER.info("colored ruling of %s: %r", knot.name, result)
    return result
