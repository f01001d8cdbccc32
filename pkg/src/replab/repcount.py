"""
m-graded representations of Legendrian DGAs into matrix DGAs over finite fields,
and the normalized representation and augmentation numbers built from their counts.
"""
from __future__ import annotations

import itertools
import logging
import time
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import pandas as pd

from replab import gf, utils
from replab.errors import ProblemError
from replab.gf import FieldSpec, Matrix
from replab.ncdga import (
    DgaPresentation,
    Generator,
    chi_k,
    degree_distribution,
    is_zero_mod,
    nu_rm,
    sigma_m,
)
from replab.pathsets import PathSubsetSpec, gl_order
from replab.search import (
    CountingEngine,
    MatrixSetTarget,
    PathSubsetTarget,
    PolySystem,
    UnitsTarget,
)
from replab.sqrtq import SqrtQ

__all__ = [
    "GradedVS",
    "UTDifferential",
    "RepProblem",
    "UnitsTarget",
    "MatrixSetTarget",
    "PathSubsetTarget",
    "chi_k",
    "sigma_m",
    "enumerate_differentials",
    "count_reps",
    "count_by_target",
    "iter_reps",
    "block_dimension",
    "normalization_exponent",
    "limit_product",
    "kernel_units",
    "normalization",
    "rep_number",
    "reduced_rep_number",
    "aug_number",
    "total_rep_number",
    "rep_report",
]

LOGGER = logging.getLogger(__name__)


class GradedVS:
    """
    Graded vector space ``Span{e_1 .. e_n}`` over a finite field.

    Args:
        degrees: Degree of each basis vector.
        field
    """

    def __init__(self, degrees: Sequence[int], field: FieldSpec):
        if not degrees:
            raise ProblemError("graded vector space needs dimension >= 1")
        self.degrees = tuple(int(d) for d in degrees)
        self.field = field

    @classmethod
    def concentrated(cls, n: int, field: FieldSpec, degree: int = 0) -> "GradedVS":
        """``F_q^n`` with every basis vector in the same degree."""
        return cls((degree,) * n, field)

    def __repr__(self):
        return f"GradedVS({self.degrees}, q={self.field.q})"

    def __eq__(self, other):
        if not isinstance(other, GradedVS):
            return NotImplemented
        return (self.degrees, self.field) == (other.degrees, other.field)

    def __hash__(self):
        return hash((self.degrees, self.field))

    @property
    def n(self) -> int:
        return len(self.degrees)

    def graded_dimension(self, k: int, m: int) -> int:
        """Number of basis vectors of degree ``k`` mod ``m``."""
        return sum(1 for d in self.degrees if is_zero_mod(d - k, m))

    def block_dimension(self, k: int, m: int) -> int:
        """Dimension of the degree ``k`` part of ``-End(V)``, graded mod ``m``."""
        return block_dimension(self.degrees, k, m)

    def residue_classes(self, m: int) -> List[int]:
        """Sizes of the classes of basis vectors with equal degree mod ``m``."""
        classes: Dict[int, int] = {}
        for d in self.degrees:
            key = d if m == 0 else d % m
            classes[key] = classes.get(key, 0) + 1
        return [classes[k] for k in sorted(classes)]


class UTDifferential:
    """
    Strictly upper triangular differential on a graded vector space, of degree +1
    mod ``m`` and squaring to zero.

    Raises:
        ProblemError: if any of the three conditions fails.
    """

    def __init__(self, matrix: Sequence[Sequence[int]], space: GradedVS, m: int):
        n = space.n
        mat = tuple(tuple(int(x) for x in row) for row in matrix)
        if len(mat) != n or any(len(row) != n for row in mat):
            raise ProblemError(f"differential must be {n}x{n}")
        field = space.field
        for i, j in itertools.product(range(n), repeat=2):
            x = mat[i][j]
            if not 0 <= x < field.q:
                raise ProblemError(f"entry {x} is not an element of F_{field.q}")
            if x and i >= j:
                raise ProblemError("differential must be strictly upper triangular")
            if x and not is_zero_mod(space.degrees[i] - space.degrees[j] - 1, m):
                raise ProblemError(
                    f"entry ({i + 1},{j + 1}) of the differential breaks "
                    f"degree +1 mod {m}"
                )
        if any(any(row) for row in gf.mat_mul(mat, mat, field)):
            raise ProblemError("differential does not square to zero")
        self.matrix: Matrix = mat
        self.space = space
        self.m = m

    @classmethod
    def zero(cls, space: GradedVS, m: int) -> "UTDifferential":
        return cls(gf.mat_zeros(space.n), space, m)

    def __repr__(self):
        return f"UTDifferential({self.matrix})"

    def __eq__(self, other):
        if not isinstance(other, UTDifferential):
            return NotImplemented
        return self.matrix == other.matrix and self.space == other.space

    def __hash__(self):
        return hash((self.matrix, self.space))

    @property
    def is_zero(self) -> bool:
        return not any(any(row) for row in self.matrix)


def _coerce_target(target):
    if target is None or target == "units":
        return UnitsTarget()
    if isinstance(target, (UnitsTarget, MatrixSetTarget, PathSubsetTarget)):
        return target
    if isinstance(target, PathSubsetSpec):
        return PathSubsetTarget(target)
    if isinstance(target, (set, frozenset, list, tuple)):
        return MatrixSetTarget(target)
    raise TypeError(f"cannot use {type(target)} as a representation target")


class RepProblem:
    """
    Count of m-graded representations of ``dga`` on ``(V, d)`` with basepoint
    products in the given targets.

    Args:
        dga
        space: The graded vector space V.
        d: Differential of V; zero by default.
        m: Grading modulus.
        targets: One per component: None or "units" for all invertible matrices,
            a set of matrices, a :class:`PathSubsetSpec`, or a target object.

    Raises:
        ProblemError: unless ``m | 2r``, ``r = 0`` for even ``m`` and the field has
            characteristic 2 for odd ``m``.
    """

    def __init__(
        self,
        dga: DgaPresentation,
        space: GradedVS,
        d: Optional[UTDifferential | Sequence[Sequence[int]]] = None,
        m: int = 0,
        targets: Optional[Sequence] = None,
    ):
        if m < 0:
            raise ProblemError(f"grading modulus must be >= 0, not {m}")
        r = dga.rotation
        if (m == 0 and r != 0) or (m > 0 and (2 * r) % m):
            raise ProblemError(f"m = {m} does not divide 2r = {2 * r}")
        if m % 2 == 0 and r != 0:
            raise ProblemError(f"even m = {m} requires rotation number 0, not {r}")
        if m % 2 == 1 and space.field.p != 2:
            raise ProblemError(f"odd m = {m} requires characteristic 2")
        if d is None:
            d = UTDifferential.zero(space, m)
        elif not isinstance(d, UTDifferential):
            d = UTDifferential(d, space, m)
        elif d.space != space or d.m != m:
            raise ProblemError(
                "differential was built for a different space or modulus"
            )
        if targets is None:
            targets = [None] * len(dga.components)
        if len(targets) != len(dga.components):
            raise ProblemError(
                f"{dga.name} has {len(dga.components)} components, "
                f"got {len(targets)} targets"
            )
        self.dga = dga
        self.space = space
        self.field = space.field
        self.d = d
        self.m = m
        self.targets = [_coerce_target(t) for t in targets]

    def __repr__(self):
        return (
            f"RepProblem({self.dga.name}, {self.space!r}, m={self.m}, "
            f"targets={self.targets})"
        )

    def system(self) -> PolySystem:
        degrees, d = self.space.degrees, self.d.matrix
        return PolySystem(self.dga, self.field, degrees, d, self.m, self.targets)

    def engine(self, **kwargs) -> CountingEngine:
        return CountingEngine(self.system(), **kwargs)


def enumerate_differentials(space: GradedVS, m: int) -> List[UTDifferential]:
    """Every strictly upper triangular degree +1 mod ``m`` differential on ``space``."""
    n = space.n
    field = space.field
    slots = [
        (i, j)
        for i, j in itertools.combinations(range(n), 2)
        if is_zero_mod(space.degrees[i] - space.degrees[j] - 1, m)
    ]
    out = []
    for values in itertools.product(field.elements(), repeat=len(slots)):
        mat = [[0] * n for _ in range(n)]
        for (i, j), x in zip(slots, values):
            mat[i][j] = x
        if any(any(row) for row in gf.mat_mul(mat, mat, field)):
            continue
        out.append(UTDifferential(mat, space, m))
    LOGGER.debug("%d differentials on %r mod %d", len(out), space, m)
    return out


def count_reps(
    problem: RepProblem, threads: Optional[int] = None, naive: bool = False
) -> int:
    """
    Number of m-graded representations solving ``problem``.

    Args:
        problem
        threads: Worker processes; ``REPLAB_THREADS`` or 1 by default.
        naive: Enumerate every generator before checking any equation.
    """
    engine = problem.engine(naive=naive)
    return engine.count(threads=utils.get_threads(threads))


def count_by_target(problem: RepProblem, threads: Optional[int] = None) -> pd.Series:
    """
    Representation counts split by the basepoint product of each component.

    Returns:
        Counts indexed by the product matrix (by the tuple of products when there
        is more than one component). Matrices of an explicit target set that no
        representation reaches are listed with count 0.
    """
    engine = problem.engine(split=True)
    counts = engine.count_split(threads=utils.get_threads(threads))
    single = len(problem.targets) == 1
    data = {(key[0] if single else key): c for key, c in counts.items()}
    if single and isinstance(problem.targets[0], MatrixSetTarget):
        for mat in problem.targets[0].matrices:
            data.setdefault(mat, 0)
    keys = sorted(data)
    return pd.Series(
        data=[data[k] for k in keys],
        index=pd.Index(keys, tupleize_cols=False, name="target"),
        name="count",
        dtype="int64",
    )


def iter_reps(problem: RepProblem) -> Iterator[Dict[str, Matrix]]:
    """Yield each representation as a map from generator name to its matrix."""
    engine = problem.engine(materialize=True)
    for vals in engine.iter_solutions():
        yield engine.matrices(vals)


def block_dimension(degrees: Sequence[int], k: int, m: int) -> int:
    """Dimension of the degree ``k`` part of ``-End(V)`` for basis ``degrees``."""
    return sum(1 for di in degrees for dj in degrees if is_zero_mod(dj - di - k, m))


def normalization_exponent(degrees: Sequence[int], dist: Dict[int, int], m: int) -> int:
    """
    The stabilized sum ``L`` of ``dim B^m_k * chi^k`` over ``|k| <= N``, where
    ``B = -End(V)``; the limit product is ``q^(-L/2)``. For odd ``m`` the closed
    form in ``sigma_m`` and ``nu^r_m`` is checked against it.
    """
    period = max(m, 1)
    spread = max(degrees) - min(degrees)
    window = max((abs(d) for d in dist), default=0) + spread + 2 * period + 1

    def partial(N: int) -> int:
        total = 0
        for k in range(-N, N + 1):
            dim = block_dimension(degrees, k, m)
            assert dim == block_dimension(degrees, -k, m)
            if dim:
                total += dim * chi_k(dist, k)
        return total

    L = partial(window)
    assert L == partial(window + 2 * period), "normalization did not stabilize"
    if m % 2 == 1:
        closed = block_dimension(degrees, 0, m) * sigma_m(dist, m) + 2 * sum(
            block_dimension(degrees, r, m) * nu_rm(dist, r, m) for r in range(1, m)
        )
        assert closed == L, (L, closed)
    return L


def limit_product(space: GradedVS, dist: Dict[int, int], m: int) -> SqrtQ:
    """The stabilized product of ``|B^m_k|^(-chi^k / 2)``, with ``B = -End(V)``."""
    exponent = normalization_exponent(space.degrees, dist, m)
    return SqrtQ.q_half_power(space.field.q, -exponent)


def _kernel_dga() -> DgaPresentation:
    return DgaPresentation([Generator("t", 0, True)], {}, name="kernel")


def kernel_units(
    space: GradedVS, d: UTDifferential, m: int, threads: Optional[int] = None
) -> int:
    """
    ``|(B^m_0)^* ∩ ker delta|`` for ``B = -End(V)``: a product of general linear
    group orders when ``d = 0``, otherwise counted as the representations of one
    closed basepoint generator.
    """
    q = space.field.q
    if d.is_zero:
        result = 1
        for size in space.residue_classes(m):
            result *= gl_order(size, q)
        return result
    system = PolySystem(
        _kernel_dga(), space.field, space.degrees, d.matrix, m, [UnitsTarget()]
    )
    return CountingEngine(system).count(threads=utils.get_threads(threads))


def normalization(
    problem: RepProblem, threads: Optional[int] = None
) -> Tuple[SqrtQ, int]:
    """``(limit_product, kernel_units)`` for ``problem``."""
    dist = degree_distribution(problem.dga)
    return (
        limit_product(problem.space, dist, problem.m),
        kernel_units(problem.space, problem.d, problem.m, threads=threads),
    )


def _rep_number(problem: RepProblem, count: int, limit: SqrtQ, kernel: int) -> SqrtQ:
    ell = problem.dga.num_basepoints
    return limit / (kernel ** ell) * count


def rep_number(problem: RepProblem, threads: Optional[int] = None) -> SqrtQ:
    """
    The m-graded representation number: the limit product times the count, over
    the kernel units to the power ``l``.
    """
    count = count_reps(problem, threads=threads)
    limit, kernel = normalization(problem, threads=threads)
    return _rep_number(problem, count, limit, kernel)


def _reduce(problem: RepProblem, value: SqrtQ, kernel: int) -> SqrtQ:
    dim0 = problem.space.block_dimension(0, problem.m)
    return SqrtQ.q_half_power(problem.field.q, -dim0) * kernel * value


def reduced_rep_number(problem: RepProblem, threads: Optional[int] = None) -> SqrtQ:
    """``|B^m_0|^(-1/2) |(B^m_0)^* ∩ ker delta|`` times the representation number."""
    count = count_reps(problem, threads=threads)
    limit, kernel = normalization(problem, threads=threads)
    return _reduce(problem, _rep_number(problem, count, limit, kernel), kernel)


def aug_number(
    dga: DgaPresentation, m: int, q: int, threads: Optional[int] = None
) -> SqrtQ:
    """The m-graded augmentation number over F_q."""
    field = gf.field_make(q)
    problem = RepProblem(dga, GradedVS.concentrated(1, field), m=m)
    return rep_number(problem, threads=threads)


def total_rep_number(
    dga: DgaPresentation, n: int, m: int, q: int, threads: Optional[int] = None
) -> SqrtQ:
    """The representation number on ``F_q^n`` in degree 0 with zero differential."""
    field = gf.field_make(q)
    problem = RepProblem(dga, GradedVS.concentrated(n, field), m=m)
    return rep_number(problem, threads=threads)


def rep_report(problem: RepProblem, threads: Optional[int] = None) -> pd.Series:
    """Count, representation number, reduced number and ``sigma_m`` in one record."""
    start = time.perf_counter()
    count = count_reps(problem, threads=threads)
    limit, kernel = normalization(problem, threads=threads)
    value = _rep_number(problem, count, limit, kernel)
    reduced = _reduce(problem, value, kernel)
    runtime_ms = int(round(1000 * (time.perf_counter() - start)))
    return pd.Series(
        {
            "count": count,
            "rep_number": value,
            "reduced": reduced,
            "sigma_m": sigma_m(degree_distribution(problem.dga), problem.m),
            "kernel_units": kernel,
            "runtime_ms": runtime_ms,
        },
        name=problem.dga.name,
    )
