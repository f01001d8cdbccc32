"""
Colored HOMFLY-PT data: parsing, the ``a^-1 = 0`` specialization, framing changes,
and the comparison with total 2-graded representation numbers.

Polynomials are Laurent polynomials in ``a`` whose coefficients are rational
functions of ``s = q^(1/2)``, handled exactly with sympy.
"""
from __future__ import annotations

import logging
import pathlib
import re
from fractions import Fraction
from tokenize import TokenError
from typing import Dict, Mapping, NamedTuple, Optional, Sequence

import pandas as pd
import sympy

from replab import gf, utils
from replab.errors import HomflyError, ParseError
from replab.ncdga import DgaPresentation
from replab.repcount import GradedVS, RepProblem, count_reps, total_rep_number
from replab.sqrtq import SqrtQ

LOGGER = logging.getLogger(__name__)

A = sympy.Symbol("a")
S = sympy.Symbol("s", positive=True)

_RE_HEADER = re.compile(r"^#\s*(\w+)\s*:\s*(.*?)\s*$")


class KnotMeta(NamedTuple):
    """Classical invariants supplied with a knot; ``tb`` may be unknown."""

    tb: Optional[int] = None
    rotation: int = 0


class TwoVarPoly:
    """
    Laurent polynomial in ``a`` with coefficients in ``Q(s)``, ``s = q^(1/2)``.

    Args:
        coeffs: Map from a-exponent to a sympy expression in ``s``.
    """

    def __init__(self, coeffs: Optional[Mapping[int, sympy.Expr]] = None):
        self.coeffs: Dict[int, sympy.Expr] = {}
        for e, c in sorted((coeffs or {}).items()):
            c = sympy.cancel(sympy.sympify(c))
            if c != 0:
                self.coeffs[int(e)] = c

    @classmethod
    def from_expr(cls, expr: sympy.Expr) -> "TwoVarPoly":
        """
        Split an expression in ``a`` and ``s`` by powers of ``a``.

        Raises:
            ParseError: if the expression is not Laurent in ``a``.
        """
        expr = sympy.together(sympy.sympify(expr))
        num, den = sympy.fraction(expr)
        den_terms = sympy.Poly(den, A).terms()
        if len(den_terms) != 1:
            raise ParseError(f"denominator {den} is not a monomial in a")
        ((shift,), den_coeff), = den_terms
        coeffs: Dict[int, sympy.Expr] = {}
        for (e,), c in sympy.Poly(sympy.expand(num), A).terms():
            coeffs[e - shift] = coeffs.get(e - shift, 0) + c / den_coeff
        return cls(coeffs)

    def to_expr(self) -> sympy.Expr:
        return sum((c * A ** e for e, c in self.coeffs.items()), sympy.Integer(0))

    def __eq__(self, other):
        if not isinstance(other, TwoVarPoly):
            return NotImplemented
        if set(self.coeffs) != set(other.coeffs):
            return False
        return all(
            sympy.cancel(self.coeffs[e] - other.coeffs[e]) == 0 for e in self.coeffs
        )

    def __hash__(self):
        return hash(tuple(self.coeffs))

    def __bool__(self):
        return bool(self.coeffs)

    def __add__(self, other: "TwoVarPoly") -> "TwoVarPoly":
        coeffs = dict(self.coeffs)
        for e, c in other.coeffs.items():
            coeffs[e] = coeffs.get(e, 0) + c
        return TwoVarPoly(coeffs)

    def __mul__(self, other):
        if not isinstance(other, TwoVarPoly):
            return TwoVarPoly({e: c * other for e, c in self.coeffs.items()})
        coeffs: Dict[int, sympy.Expr] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                coeffs[e1 + e2] = coeffs.get(e1 + e2, 0) + c1 * c2
        return TwoVarPoly(coeffs)

    __rmul__ = __mul__

    def __str__(self):
        return serialize(self)

    def __repr__(self):
        return f"TwoVarPoly('{self}')"


def parse_poly(text: str) -> TwoVarPoly:
    """
    Parse an expression in ``a``, ``q`` and ``q^(1/2)`` with ``+ - * /``, ``^`` for
    integer powers and parentheses.

    Raises:
        ParseError: on malformed text, unknown symbols, division by zero, or a
            denominator that is not a monomial in ``a``.
    """
    source = text.strip()
    if not source:
        raise ParseError("empty polynomial")
    try:
        expr = sympy.sympify(
            source.replace("^", "**"),
            locals={"a": A, "q": S ** 2, "s": S},
            rational=True,
        )
    except (sympy.SympifyError, SyntaxError, TypeError, TokenError) as err:
        raise ParseError(f"malformed polynomial '{source}': {err}")
    if not isinstance(expr, sympy.Expr) or expr.has(sympy.zoo, sympy.nan, sympy.oo):
        raise ParseError(f"polynomial '{source}' divides by zero")
    unknown = expr.free_symbols - {A, S}
    if unknown:
        raise ParseError(f"unknown symbols {sorted(map(str, unknown))} in '{source}'")
    try:
        return TwoVarPoly.from_expr(expr)
    except sympy.PolynomialError as err:
        raise ParseError(f"'{source}' is not a Laurent polynomial in a: {err}")


def serialize(P: TwoVarPoly) -> str:
    """Text form of ``P`` that :func:`parse_poly` reads back."""
    if not P:
        return "0"
    text = sympy.sstr(P.to_expr(), order="lex")
    text = re.sub(r"\bs\b", "(q^(1/2))", text)
    return text.replace("**", "^")


class HomflyData(NamedTuple):
    """A polynomial file: the polynomial and its header fields."""

    poly: TwoVarPoly
    knot: str
    n: int
    framing: str
    note: str = ""


def load_poly(
    fname: str | pathlib.Path, data_dir: Optional[str | pathlib.Path] = None
) -> HomflyData:
    """
    Load a ``.poly`` file: ``# key: value`` header lines naming the knot, the color
    ``n`` and the framing, then the polynomial, possibly over several lines.
    """
    fpath = utils.get_fpath(data_dir, fname)
    if not fpath.exists():
        raise ParseError(f"no such polynomial file: {fpath}")
    header: Dict[str, str] = {}
    body = []
    with fpath.open(mode="rt", encoding="utf-8") as f:
        for line in f:
            match = _RE_HEADER.match(line)
            if match:
                header[match.group(1).lower()] = match.group(2)
            elif line.strip() and not line.lstrip().startswith("#"):
                body.append(line.strip())
    missing = {"knot", "n", "framing"} - set(header)
    if missing:
        raise ParseError(f"{fpath} lacks header fields {sorted(missing)}")
    LOGGER.debug("loaded %s (%s, n=%s)", fpath, header["knot"], header["n"])
    return HomflyData(
        poly=parse_poly(" ".join(body)),
        knot=header["knot"],
        n=int(header["n"]),
        framing=header["framing"],
        note=header.get("note", ""),
    )


def deg_a(P: TwoVarPoly) -> Optional[int]:
    """Highest power of ``a`` in ``P``; None for the zero polynomial."""
    return max(P.coeffs) if P.coeffs else None


def specialize_a_inv_zero(P: TwoVarPoly) -> sympy.Expr:
    """
    The ``a^0`` coefficient of ``P``, i.e. ``P`` at ``a^-1 = 0``.

    Raises:
        HomflyError: if ``P`` has positive powers of ``a``, which breaks the bound
            ``deg_a P <= -n |r|`` that Legendrian framing guarantees.
    """
    top = deg_a(P)
    if top is not None and top > 0:
        raise HomflyError(
            f"a-degree {top} > 0: a^-1 = 0 is undefined (Legendrian framing required)"
        )
    return P.coeffs.get(0, sympy.Integer(0))


def evaluate(expr: sympy.Expr, q: int) -> SqrtQ:
    """Exact value of a rational function of ``s`` at ``s = sqrt(q)``."""
    num, den = sympy.fraction(sympy.cancel(sympy.sympify(expr)))

    def poly_value(poly: sympy.Expr) -> SqrtQ:
        total = SqrtQ(0, 0, q)
        for (k,), c in sympy.Poly(poly, S).terms():
            total = total + SqrtQ.q_half_power(q, k) * Fraction(int(c.p), int(c.q))
        return total

    return poly_value(num) / poly_value(den)


def framing_factor(n: int, dw: int) -> TwoVarPoly:
    """``(a^n q^(n(n-1)/2))^dw``."""
    return TwoVarPoly({n * dw: S ** (n * (n - 1) * dw)})


def reframe(P: TwoVarPoly, n: int, dw: int) -> TwoVarPoly:
    """Change the framing of an n-colored polynomial by ``dw``."""
    return P * framing_factor(n, dw)


def unframe(P: TwoVarPoly, n: int, w: int) -> TwoVarPoly:
    """The framing-0 polynomial of an n-colored polynomial with framing ``w``."""
    return reframe(P, n, -w)


def unknot_colored(n: int) -> TwoVarPoly:
    """
    The framing-0 n-colored unknot,
    ``prod_{i=1..n} (a q^((i-1)/2) - a^-1 q^(-(i-1)/2)) / (q^(i/2) - q^(-i/2))``.
    """
    expr = sympy.Integer(1)
    for i in range(1, n + 1):
        expr *= (A * S ** (i - 1) - S ** (1 - i) / A) / (S ** i - S ** (-i))
    return TwoVarPoly.from_expr(expr)


def compare_with_rep(
    P: TwoVarPoly,
    dga: DgaPresentation,
    n: int,
    qs: Sequence[int],
    threads: Optional[int] = None,
) -> pd.Series:
    """
    Compare ``P`` at ``a^-1 = 0``, evaluated at each ``q``, with the total
    n-dimensional 2-graded representation number of ``dga``.

    Returns:
        Report with a boolean "equal" row, the failing q values and the value pairs.
    """
    special = specialize_a_inv_zero(P)
    values = {}
    mismatches = []
    for q in qs:
        lhs = evaluate(special, q)
        rhs = total_rep_number(dga, n, 2, q, threads=threads)
        values[q] = (lhs, rhs)
        if lhs != rhs:
            mismatches.append(q)
            LOGGER.warning("HOMFLY-PT and representation numbers differ at q=%d", q)
    return pd.Series(
        index=["equal", "mismatches", "values"],
        data=[not mismatches, mismatches, values],
        name=dga.name,
    )


def check_degree_bounds(
    P: TwoVarPoly,
    meta: KnotMeta,
    n: int,
    dga: Optional[DgaPresentation] = None,
    witness_qs: Sequence[int] = (2,),
) -> pd.Series:
    """
    Check ``deg_a P <= -n |r|`` for ``P`` in Legendrian framing, and, given ``tb``,
    the bound ``tb + |r| <= -(1/n) deg_a P^`` for the framing-0 polynomial ``P^``
    together with its sharpness ``tb = -(1/n) deg_a P^``.

    With ``dga`` given, sharpness is compared with the existence of an
    n-dimensional 2-graded representation, searched at ``witness_qs`` only.
    """
    r = abs(meta.rotation)
    top = deg_a(P)
    report = {
        "deg_a": top,
        "deg_a_reduced": None if top is None else top - deg_a(unknot_colored(n)),
        "bound_ok": top is None or top <= -n * r,
        "tb": meta.tb,
        "deg_a_unframed": None,
        "tb_bound_ok": None,
        "sharp": None,
        "witness_found": None,
        "witness_qs_checked": [],
        "coincides": None,
    }
    if meta.tb is not None and top is not None:
        unframed = deg_a(unframe(P, n, meta.tb))
        bound = Fraction(-unframed, n)
        report["deg_a_unframed"] = unframed
        report["tb_bound_ok"] = meta.tb + r <= bound
        report["sharp"] = meta.tb == bound
    if dga is not None:
        found = False
        for q in witness_qs:
            report["witness_qs_checked"].append(q)
            problem = RepProblem(dga, GradedVS.concentrated(n, gf.field_make(q)), m=2)
            if count_reps(problem) > 0:
                found = True
                break
        report["witness_found"] = found
        if report["sharp"] is not None:
            report["coincides"] = report["sharp"] == found
    report["valid"] = bool(report["bound_ok"]) and report["tb_bound_ok"] is not False
    return pd.Series(report, name=dga.name if dga is not None else "homfly")
