"""
Satellites of Legendrian knots with positive permutation braid patterns.

The DGA of ``S(K, beta)`` has an ``n x n`` lattice ``A_k`` of generators for each
Reeb chord ``a_k`` of ``K``, the crossings ``p_j`` of the braid, the dip generators
``x_{i,j}``, ``y_{i,j}`` and one basepoint ``t_i`` per strand. Its differential is
assembled from the homomorphism ``Phi: a_k -> A_k Sigma, t -> P^xy`` into matrices.
"""
from __future__ import annotations

import itertools
import logging
from math import comb
from typing import Dict, Mapping, Optional, Sequence, Tuple

from replab import braid as braid_
from replab.braid import BraidWord, PathMatrix
from replab.errors import BraidError, DgaError, ProblemError
from replab.gf import FieldSpec, Matrix
from replab.ncdga import (
    DgaPresentation,
    Generator,
    NcMatrix,
    NcPoly,
    apply_derivation,
    check_dga,
    degree_distribution,
    is_zero_mod,
    sigma_m,
)
from replab.pathsets import PathSubsetSpec, recover_ring_map
from replab.repcount import GradedVS, UTDifferential, normalization_exponent

LOGGER = logging.getLogger(__name__)


def lattice_name(chord: str, i: int, j: int) -> str:
    return f"{chord}_{i}_{j}"


def _single_basepoint(knot: DgaPresentation) -> Generator:
    if knot.num_basepoints != 1:
        raise DgaError(
            f"satellite companion '{knot.name}' must carry exactly one basepoint, "
            f"not {knot.num_basepoints}"
        )
    return knot.basepoints[0]


def _check_pattern(b: BraidWord, mu: Optional[Sequence[int]]) -> Tuple[int, ...]:
    if not braid_.is_reduced(b):
        raise BraidError(f"pattern '{b}' is not a reduced positive permutation braid")
    mu = tuple(mu) if mu is not None else (0,) * b.n
    if len(mu) != b.n:
        raise BraidError(f"need {b.n} Maslov values, got {len(mu)}")
    return mu


def lattice_matrix(chord: str, n: int) -> NcMatrix:
    return NcMatrix(
        [[NcPoly.gen(lattice_name(chord, i, j)) for j in range(1, n + 1)]
         for i in range(1, n + 1)]
    )


def _phi_images(knot: DgaPresentation, b: BraidWord, mu: Sequence[int]):
    t = _single_basepoint(knot)
    sigma = braid_.sigma_matrix(mu)
    pxy = braid_.path_matrix_xy(b, mu)
    images = {(a.name, 1): lattice_matrix(a.name, b.n) * sigma for a in knot.chords}
    images[(t.name, 1)] = pxy
    images[(t.name, -1)] = braid_.path_matrix_inverse(pxy)
    return images


def _apply_hom(poly: NcPoly, images, n: int) -> NcMatrix:
    result = NcMatrix.zeros(n)
    for word, coeff in poly:
        term = NcMatrix.identity(n) * coeff
        for letter in word:
            try:
                term = term * images[letter]
            except KeyError:
                raise DgaError(f"unknown generator '{letter[0]}' in {poly}")
        result = result + term
    return result


def phi(
    knot: DgaPresentation, b: BraidWord, mu: Optional[Sequence[int]], word: NcPoly
) -> NcMatrix:
    """
    ``Phi(word)``: the algebra map sending ``a_k`` to ``A_k Sigma``, ``t`` to
    ``P^xy`` and ``t^-1`` to its inverse path matrix ``Q^xy``.
    """
    mu = _check_pattern(b, mu)
    return _apply_hom(word, _phi_images(knot, b, mu), b.n)


def _dip_derivation(mu: Sequence[int]) -> Dict[str, NcPoly]:
    """``d Y = -Sigma Y Sigma Y``, entrywise."""
    n = len(mu)
    sigma = braid_.sigma_matrix(mu)
    Y = braid_.y_matrix(n)
    dY = -(sigma * Y * sigma * Y)
    return {
        braid_.y_name(i, j): dY[i - 1, j - 1]
        for i, j in itertools.combinations(range(1, n + 1), 2)
    }


def solve_braid_differential(b: BraidWord, mu: Sequence[int]) -> Dict[str, NcPoly]:
    """
    Differentials of the crossing and dip ``x`` generators of ``b``, solved from
    ``Sigma d(P^xy) = P^xy (Y Sigma) - (Y Sigma) P^xy`` with ``d t_i = 0``.

    Writing ``P^xy = Delta W`` with ``W = P^xz (I + X Sigma)``, the identity reads
    ``d W = N``. Columns are solved left to right: the 1 of ``P^xz`` in column
    ``k`` makes row ``pi(k)`` of ``d W`` linear in ``d x_{k,c}``, and each crossing
    label appears in a single entry, which determines its ``d p``.

    Raises:
        BraidError: on a non-reduced braid, or if the solved values fail any entry
            of the identity.
    """
    mu = _check_pattern(b, mu)
    n = b.n
    degrees = braid_.braid_degrees(b, mu)
    perm = braid_.permutation_of(b)
    sigma = [-1 if m % 2 else 1 for m in mu]
    pxz = braid_.path_matrix_xz(b, mu)
    pxy = braid_.path_matrix_xy(b, mu)
    Y_sigma = braid_.y_matrix(n) * braid_.sigma_matrix(mu)
    M = braid_.sigma_matrix(mu) * (pxy * Y_sigma - Y_sigma * pxy)
    N = braid_.delta_matrix(mu, inverse=True) * M
    diff: Dict[str, NcPoly] = _dip_derivation(mu)
    labels = braid_.kalman_labels(pxz)
    X = braid_.x_matrix(n)

    def entry_sign(poly: NcPoly) -> int:
        deg = poly.homogeneous_degree(degrees)
        return -1 if deg is not None and deg % 2 else 1

    def partial_sum(r: int, c: int, upto: int) -> NcPoly:
        """Terms of ``(d W)_{r,c}`` from ``d P^xz`` and ``d x_{k,c}``, ``k < upto``."""
        acc = NcPoly()
        for k in range(c):
            entry = pxz[r, k]
            if not entry:
                continue
            acc = acc + apply_derivation(entry, diff, degrees) * X[k, c] * sigma[c]
            if k < upto:
                dx = diff[braid_.x_name(k + 1, c + 1)]
                acc = acc + entry * dx * (entry_sign(entry) * sigma[c])
        return acc

    for c in range(n):
        for k in range(c):
            r = perm[k] - 1
            rest = N[r, c] - partial_sum(r, c, k)
            diff[braid_.x_name(k + 1, c + 1)] = rest * sigma[c]
        for (r, col), (name, sign) in sorted(labels.items()):
            if col != c:
                continue
            diff[name] = (N[r, c] - partial_sum(r, c, c)) * sign
    for name, poly in diff.items():
        deg = poly.homogeneous_degree(degrees)
        if poly and deg != degrees[name] - 1:
            raise BraidError(
                f"solved d{name} = {poly} is not of degree {degrees[name] - 1}"
            )
    dW = NcMatrix(
        [
            [apply_derivation(pxy[r, c], diff, degrees) for c in range(n)]
            for r in range(n)
        ]
    )
    if dW != M:
        bad = [(r, c) for r in range(n) for c in range(n) if dW[r, c] != M[r, c]]
        raise BraidError(
            f"braid differential of '{b}' is inconsistent at entries {bad}"
        )
    LOGGER.debug("solved braid differential of '%s' (mu=%s)", b, mu)
    return {
        name: poly for name, poly in diff.items() if not name.startswith("y_")
    }


class SatellitePresentation:
    """
    The DGA of a satellite together with where it came from.

    Attributes:
        dga: The assembled presentation.
        knot: Companion knot DGA.
        braid
        mu: Maslov values of the pattern strands.
        n: Number of strands.
        chords: Names of the companion's Reeb chords, in order.
        basepoint: Name of the companion's basepoint.
    """

    def __init__(
        self,
        dga: DgaPresentation,
        knot: DgaPresentation,
        b: BraidWord,
        mu: Sequence[int],
    ):
        self.dga = dga
        self.knot = knot
        self.braid = b
        self.mu = tuple(mu)
        self.n = b.n
        self.chords = [a.name for a in knot.chords]
        self.basepoint = _single_basepoint(knot).name

    def __repr__(self):
        return f"SatellitePresentation('{self.dga.name}')"

    def lattice(self, chord: str) -> NcMatrix:
        return lattice_matrix(chord, self.n)

    @property
    def path_matrix(self) -> PathMatrix:
        return braid_.path_matrix_xy(self.braid, self.mu)

    @property
    def sigma(self) -> NcMatrix:
        return braid_.sigma_matrix(self.mu)

    def family_names(self, family: str):
        """
        Generator names of ``family``, one of "lattice", "crossing", "x", "y" and
        "basepoint".
        """
        pairs = list(itertools.combinations(range(1, self.n + 1), 2))
        if family == "lattice":
            return [
                lattice_name(a, i, j)
                for a in self.chords
                for i, j in itertools.product(range(1, self.n + 1), repeat=2)
            ]
        elif family == "crossing":
            return [braid_.p_name(j) for j in range(1, len(self.braid) + 1)]
        elif family == "x":
            return [braid_.x_name(i, j) for i, j in pairs]
        elif family == "y":
            return [braid_.y_name(i, j) for i, j in pairs]
        elif family == "basepoint":
            return [braid_.t_name(i) for i in range(1, self.n + 1)]
        else:
            raise ValueError(f"unknown generator family '{family}'")


def build_satellite(
    knot: DgaPresentation,
    b: BraidWord,
    mu: Optional[Sequence[int]] = None,
    name: Optional[str] = None,
) -> SatellitePresentation:
    """
    Assemble the DGA of ``S(K, beta)``:
    ``d A_k = Sigma Phi(d a_k) Sigma - Sigma Y Sigma A_k``
    ``+ (-1)^|a_k| Sigma A_k Sigma Y``,
    ``d Y = -Sigma Y Sigma Y``, ``d t_i = 0`` and the solved braid part. Components
    are the cycles of the braid's permutation.

    Raises:
        DgaError: if the companion has more than one basepoint or the assembled
            differential fails :func:`check_dga`.
        BraidError: on a non-reduced pattern.
    """
    mu = _check_pattern(b, mu)
    n = b.n
    t = _single_basepoint(knot)
    sigma = braid_.sigma_matrix(mu)
    Y = braid_.y_matrix(n)
    images = _phi_images(knot, b, mu)
    generators = []
    diff: Dict[str, NcPoly] = {}
    families: Dict[str, str] = {}
    for a in knot.chords:
        A = lattice_matrix(a.name, n)
        sign = -1 if a.degree % 2 else 1
        dA = (
            sigma * _apply_hom(knot.d(a.name), images, n) * sigma
            - sigma * Y * sigma * A
            + (sigma * A * sigma * Y) * sign
        )
        for i, j in itertools.product(range(1, n + 1), repeat=2):
            gname = lattice_name(a.name, i, j)
            generators.append(Generator(gname, a.degree + mu[i - 1] - mu[j - 1]))
            diff[gname] = dA[i - 1, j - 1]
            families[gname] = a.name
    pattern_degrees = braid_.braid_degrees(b, mu, t_degree=t.degree)
    diff.update(solve_braid_differential(b, mu))
    diff.update(_dip_derivation(mu))
    for j in range(1, len(b) + 1):
        gname = braid_.p_name(j)
        generators.append(Generator(gname, pattern_degrees[gname]))
    for prefix in (braid_.x_name, braid_.y_name):
        for i, j in itertools.combinations(range(1, n + 1), 2):
            gname = prefix(i, j)
            generators.append(Generator(gname, pattern_degrees[gname]))
    for i in range(1, n + 1):
        generators.append(Generator(braid_.t_name(i), t.degree, True))
    components = [
        [braid_.t_name(i) for i in cycle]
        for cycle in braid_.cycles(braid_.permutation_of(b))
    ]
    label = name or f"S({knot.name}, {b or 'id'})"
    dga = DgaPresentation(
        generators,
        diff,
        rotation=n * knot.rotation,
        components=components,
        name=label,
        families=families,
    )
    report = check_dga(dga)
    if not report["valid"]:
        gname, check, residual = report["failures"][0]
        raise DgaError(
            f"satellite {label} fails the {check} check on {gname}: {residual}"
        )
    LOGGER.info(
        "built %s: %d chords, %d components", label, len(dga.chords), len(components)
    )
    return SatellitePresentation(dga, knot, b, mu)


def _check_augmentation(
    sat: SatellitePresentation, eps: Mapping[str, int], field, m: int
):
    for g in sat.dga.generators:
        value = eps.get(g.name, 0)
        if g.invertible and value == 0:
            raise ProblemError(f"augmentation sends basepoint {g.name} to 0")
        if value and not is_zero_mod(g.degree, m):
            raise ProblemError(
                f"augmentation is nonzero on {g.name} of degree {g.degree}"
            )
    values = {g.name: eps.get(g.name, 0) for g in sat.dga.generators}
    for g in sat.dga.chords:
        if sat.dga.d(g.name).evaluate(values, field):
            raise ProblemError(f"augmentation does not kill d{g.name}")
    return values


def aug_to_rep(
    sat: SatellitePresentation, eps: Mapping[str, int], field: FieldSpec, m: int
) -> Tuple[UTDifferential, Dict[str, Matrix]]:
    """
    The representation ``(d, f)`` of the companion attached to an augmentation of
    the satellite: ``d = eps(Y Sigma)`` and ``f = eps o Phi``.

    Returns:
        The differential on ``V`` (basis degrees ``mu``) and ``f`` on the companion's
        generators, including its basepoint.

    Raises:
        ProblemError: if ``eps`` is not an m-graded augmentation.
    """
    values = _check_augmentation(sat, eps, field, m)
    n = sat.n
    space = GradedVS(sat.mu, field)
    sigma = [field.from_int(-1 if x % 2 else 1) for x in sat.mu]

    def evaluate(mat: NcMatrix) -> Matrix:
        return tuple(
            tuple(mat[i, j].evaluate(values, field) for j in range(n)) for i in range(n)
        )

    mul = field.tables[1]
    d = [[0] * n for _ in range(n)]
    for i, j in itertools.combinations(range(n), 2):
        d[i][j] = mul[values[braid_.y_name(i + 1, j + 1)]][sigma[j]]
    f = {
        a: tuple(
            tuple(mul[x][sigma[j]] for j, x in enumerate(row))
            for row in evaluate(sat.lattice(a))
        )
        for a in sat.chords
    }
    f[sat.basepoint] = evaluate(sat.path_matrix)
    return UTDifferential(d, space, m), f


def rep_to_aug(
    sat: SatellitePresentation,
    d: UTDifferential | Sequence[Sequence[int]],
    f: Mapping[str, Matrix],
    field: FieldSpec,
    m: int,
) -> Dict[str, int]:
    """
    Inverse of :func:`aug_to_rep`: read ``y`` off ``d Sigma``, the lattice off
    ``f(a_k) Sigma``, and the crossing, ``x`` and basepoint values off ``f(t)`` by
    reconstructing the ring map of the path matrix.

    Raises:
        ProblemError: if ``f(t)`` is not in the m-graded path subset.
    """
    n = sat.n
    mul = field.tables[1]
    dmat = d.matrix if isinstance(d, UTDifferential) else d
    sigma = [field.from_int(-1 if x % 2 else 1) for x in sat.mu]
    spec = PathSubsetSpec(sat.braid, sat.mu, m, field)
    ring_map = recover_ring_map(f[sat.basepoint], spec)
    if ring_map is None:
        raise ProblemError(
            f"f({sat.basepoint}) is not in the path subset of '{sat.braid}'"
        )
    eps: Dict[str, int] = dict(ring_map)
    for i, j in itertools.combinations(range(n), 2):
        eps[braid_.y_name(i + 1, j + 1)] = mul[dmat[i][j]][sigma[j]]
    for a in sat.chords:
        mat = f[a]
        for i, j in itertools.product(range(n), repeat=2):
            eps[lattice_name(a, i + 1, j + 1)] = mul[mat[i][j]][sigma[j]]
    return eps


def sigma_decomposition(sat: SatellitePresentation, m: int) -> Tuple[int, int, int]:
    """
    Split ``sigma_m`` of the satellite into the contributions of the lattice, dip
    and crossing generators.

    The lattice part equals the normalization exponent of ``-End(V_beta)`` against
    the companion, the dip part is ``2 sum_k binom(n(k), 2)`` and the crossing part
    is ``lambda_m`` of the braid.
    """
    degrees = sat.dga.degrees

    def family_sigma(family: str) -> int:
        dist: Dict[int, int] = {}
        for gname in sat.family_names(family):
            dist[degrees[gname]] = dist.get(degrees[gname], 0) + 1
        return sigma_m(dist, m)

    x_a = family_sigma("lattice")
    x_xy = family_sigma("x") + family_sigma("y")
    x_p = family_sigma("crossing")
    total = sigma_m(degree_distribution(sat.dga), m)
    assert x_a + x_xy + x_p == total, (x_a, x_xy, x_p, total)
    assert x_a == normalization_exponent(sat.mu, degree_distribution(sat.knot), m)
    classes: Dict[int, int] = {}
    for x in sat.mu:
        key = x if m == 0 else x % m
        classes[key] = classes.get(key, 0) + 1
    assert x_xy == 2 * sum(comb(size, 2) for size in classes.values())
    assert x_p == braid_.lambda_m(sat.braid, sat.mu, m)
    return x_a, x_xy, x_p
