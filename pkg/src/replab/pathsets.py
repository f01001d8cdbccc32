"""
Path subsets of GL(n, F_q) cut out by positive permutation braids, membership by
reconstructing the ring map, and the Bruhat partition of GL(n, F_q).
"""
from __future__ import annotations

import concurrent.futures
import itertools
import logging
import math
import time
from typing import Dict, FrozenSet, Iterator, List, Optional, Sequence, Tuple

import pandas as pd

from replab import braid as braid_
from replab import gf
from replab.braid import BraidWord
from replab.errors import BraidError, ProblemError
from replab.gf import FieldSpec, Matrix
from replab.ncdga import NcMatrix, is_zero_mod

LOGGER = logging.getLogger(__name__)

MAX_ENUMERATION = {"n": 4, "q": 5}


def gl_order(n: int, q: int) -> int:
    """``|GL(n, F_q)| = prod_{i<n} (q^n - q^i)``."""
    return math.prod(q ** n - q ** i for i in range(n))


def iter_gl(n: int, field: FieldSpec) -> Iterator[Matrix]:
    """
    Iterate over GL(n, F_q) row by row, keeping each new row outside the span of
    the previous ones.
    """
    add, mul, _, _ = field.tables
    vectors = list(itertools.product(field.elements(), repeat=n))

    def extend(rows: List[Tuple[int, ...]], span: set):
        if len(rows) == n:
            yield tuple(rows)
            return
        for v in vectors:
            if v in span:
                continue
            new_span = {
                tuple(add[s][mul[c][x]] for s, x in zip(w, v))
                for w in span
                for c in field.elements()
            }
            yield from extend(rows + [v], new_span)

    yield from extend([], {(0,) * n})


def _compile_entry(poly, field: FieldSpec):
    return [
        (field.from_int(coeff), tuple(word))
        for word, coeff in poly
    ]


def _eval_compiled(terms, values: Dict[str, int], field: FieldSpec) -> int:
    add, mul, _, inv = field.tables
    total = 0
    for coeff, word in terms:
        x = coeff
        for name, exp in word:
            v = values[name]
            x = mul[x][v if exp > 0 else inv[v]]
        total = add[total][x]
    return total


class PathSubsetSpec:
    """
    The m-graded path subset of a reduced positive permutation braid over a field.

    Args:
        braid: Reduced positive permutation braid.
        mu: Maslov values at the basepoints.
        m: Grading modulus.
        field

    Attributes:
        braid
        mu
        m
        field
        permutation
        degrees: Degrees of the basepoint, crossing and dip generators.
        free_names: Crossing and dip generators allowed to be nonzero.
    """

    def __init__(self, braid: BraidWord, mu: Sequence[int], m: int, field: FieldSpec):
        if not braid_.is_reduced(braid):
            raise BraidError(f"braid '{braid}' is not a reduced permutation braid")
        self.braid = braid
        self.mu = tuple(mu)
        self.m = m
        self.field = field
        self.n = braid.n
        self.permutation = braid_.permutation_of(braid)
        self.degrees = braid_.braid_degrees(braid, self.mu)
        self.t_names = [braid_.t_name(i) for i in range(1, self.n + 1)]
        self.p_names = [braid_.p_name(j) for j in range(1, len(braid) + 1)]
        self.x_names = [
            braid_.x_name(i, j)
            for i, j in itertools.combinations(range(1, self.n + 1), 2)
        ]
        self.free_names = [
            name for name in self.p_names + self.x_names
            if is_zero_mod(self.degrees[name], m)
        ]
        pxz = braid_.path_matrix_xz(braid, self.mu)
        self.kalman_labels = braid_.kalman_labels(pxz)
        self._pxy = [
            [_compile_entry(a, field) for a in row]
            for row in braid_.path_matrix_xy(braid, self.mu).rows
        ]

    def __repr__(self):
        return (
            f"PathSubsetSpec('{self.braid}', mu={self.mu}, m={self.m}, "
            f"q={self.field.q})"
        )

    def __reduce__(self):
        return (self.__class__, (self.braid, self.mu, self.m, self.field))

    def __eq__(self, other):
        if not isinstance(other, PathSubsetSpec):
            return NotImplemented
        return (self.braid, self.mu, self.m, self.field) == (
            other.braid, other.mu, other.m, other.field
        )

    def __hash__(self):
        return hash((self.braid, self.mu, self.m, self.field))

    def evaluate(self, values: Dict[str, int]) -> Matrix:
        """``alpha(P^xy)`` for a ring map given by generator values."""
        return tuple(
            tuple(_eval_compiled(terms, values, self.field) for terms in row)
            for row in self._pxy
        )

    def size(self) -> int:
        """Cardinality by injectivity: a unit per ``t_i``, any value per free label."""
        q = self.field.q
        return (q - 1) ** self.n * q ** len(self.free_names)

    def iter_assignments(self, t1_values: Optional[Sequence[int]] = None):
        field = self.field
        t_ranges = [list(field.units()) for _ in self.t_names]
        if t1_values is not None and t_ranges:
            t_ranges[0] = list(t1_values)
        fixed = {name: 0 for name in self.p_names + self.x_names}
        for ts in itertools.product(*t_ranges):
            frees = itertools.product(field.elements(), repeat=len(self.free_names))
            for free in frees:
                values = dict(fixed)
                values.update(zip(self.t_names, ts))
                values.update(zip(self.free_names, free))
                yield values


def _enumerate_chunk(spec: PathSubsetSpec, t1_values: Sequence[int]) -> List[Matrix]:
    return [spec.evaluate(values) for values in spec.iter_assignments(t1_values)]


def enumerate_path_subset(spec: PathSubsetSpec, threads: int = 1) -> FrozenSet[Matrix]:
    """
    All matrices ``alpha(P^xy)`` over the admissible ring maps ``alpha``.

    Raises:
        ProblemError: beyond ``n = 4`` or ``q = 5``.
        BraidError: if two ring maps give the same matrix.
    """
    if spec.n > MAX_ENUMERATION["n"] or spec.field.q > MAX_ENUMERATION["q"]:
        raise ProblemError(
            f"path subsets are only enumerated for n <= {MAX_ENUMERATION['n']} "
            f"and q <= {MAX_ENUMERATION['q']}"
        )
    start = time.perf_counter()
    units = list(spec.field.units())
    if threads > 1:
        chunks = [units[w::threads] for w in range(threads)]
        with concurrent.futures.ProcessPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(_enumerate_chunk, [spec] * len(chunks), chunks))
    else:
        parts = [_enumerate_chunk(spec, units)]
    matrices = [mat for part in parts for mat in part]
    result = frozenset(matrices)
    if len(result) != len(matrices):
        raise BraidError(f"evaluation of '{spec.braid}' is not injective")
    LOGGER.info(
        "enumerated %d matrices of the path subset of '%s' in %.3fs",
        len(result), spec.braid, time.perf_counter() - start,
    )
    return result


def bruhat_reduce(A: Sequence[Sequence[int]], field: FieldSpec):
    """
    Find ``D`` invertible diagonal and ``U`` unipotent upper triangular with
    ``D A U = S``, where ``S`` has Kalman shape for a permutation ``pi``.

    In each column the lowest nonzero entry is scaled to 1 and the entries right of
    it are cleared by column operations.

    Returns:
        ``(pi, D, U, S)``

    Raises:
        ProblemError: if ``A`` is singular.
    """
    add, mul, neg, inv = field.tables
    n = len(A)
    M = [list(row) for row in A]
    D = [1] * n
    U = [[int(i == j) for j in range(n)] for i in range(n)]
    perm = []
    for c in range(n):
        i_c = next((i for i in range(n - 1, -1, -1) if M[i][c]), None)
        if i_c is None:
            raise ProblemError("matrix is singular")
        scale = inv[M[i_c][c]]
        D[i_c] = mul[D[i_c]][scale]
        M[i_c] = [mul[scale][x] for x in M[i_c]]
        for c2 in range(c + 1, n):
            f = M[i_c][c2]
            if f:
                nf = neg[f]
                for r in range(n):
                    M[r][c2] = add[M[r][c2]][mul[nf][M[r][c]]]
                    U[r][c2] = add[U[r][c2]][mul[nf][U[r][c]]]
        perm.append(i_c + 1)
    D_mat = tuple(tuple(D[i] if i == j else 0 for j in range(n)) for i in range(n))
    return (
        tuple(perm),
        D_mat,
        tuple(tuple(r) for r in U),
        tuple(tuple(r) for r in M),
    )


def recover_ring_map(
    A: Sequence[Sequence[int]], spec: PathSubsetSpec
) -> Optional[Dict[str, int]]:
    """
    The unique ring map ``alpha`` with ``alpha(P^xy) = A`` that respects the
    m-grading, or None if ``A`` is not in the path subset.

    ``G = A (I + X Sigma)^-1 = Delta P^xz`` is rebuilt column by column: the 1 of
    ``P^xz`` in column ``k`` sits at row ``pi(k)`` with zeros to its right, which
    determines ``x_{k,c}`` from row ``pi(k)`` of ``A``.
    """
    field = spec.field
    add, mul, neg, inv = field.tables
    n = spec.n
    rows = [p - 1 for p in spec.permutation]
    signs = [field.from_int(-1 if m % 2 else 1) for m in spec.mu]
    G = [[0] * n for _ in range(n)]
    X = [[0] * n for _ in range(n)]
    delta = [0] * n
    for c in range(n):
        for k in range(c):
            r = rows[k]
            acc = mul[signs[c]][A[r][c]]
            for k2 in range(k):
                acc = add[acc][neg[mul[G[r][k2]][X[k2][c]]]]
            X[k][c] = mul[acc][inv[delta[r]]]
        for r in range(n):
            acc = A[r][c]
            for k in range(c):
                acc = add[acc][neg[mul[mul[G[r][k]][X[k][c]]][signs[c]]]]
            G[r][c] = acc
        delta[rows[c]] = G[rows[c]][c]
        if delta[rows[c]] == 0:
            return None
    values: Dict[str, int] = {}
    for i, name in enumerate(spec.t_names):
        values[name] = delta[i] if spec.mu[i] % 2 == 0 else inv[delta[i]]
    for i, j in itertools.combinations(range(n), 2):
        values[braid_.x_name(i + 1, j + 1)] = X[i][j]
    for (r, c), (name, sign) in spec.kalman_labels.items():
        entry = mul[G[r][c]][inv[delta[r]]]
        values[name] = mul[field.from_int(sign)][entry]
    for name in spec.p_names + spec.x_names:
        if values.get(name, 0) and name not in spec.free_names:
            return None
    if spec.evaluate(values) != tuple(tuple(r) for r in A):
        return None
    return values


def is_member(A: Sequence[Sequence[int]], spec: PathSubsetSpec) -> bool:
    return recover_ring_map(A, spec) is not None


def permutation_cells(
    n: int, field: FieldSpec, mu: Optional[Sequence[int]] = None, m: int = 0
) -> Dict[Tuple[int, ...], PathSubsetSpec]:
    """One :class:`PathSubsetSpec` per permutation of ``1 .. n``."""
    mu = tuple(mu) if mu is not None else (0,) * n
    return {
        perm: PathSubsetSpec(braid_.reduced_word(perm), mu, m, field)
        for perm in itertools.permutations(range(1, n + 1))
    }


def verify_bruhat_partition(n: int, q: int, threads: int = 1) -> pd.Series:
    """
    Check that the path subsets of all positive permutation braids on ``n`` strands
    are pairwise disjoint and cover GL(n, F_q), and that their sizes add up to
    ``|GL(n, F_q)|``.
    """
    field = gf.field_make(q)
    cells = {
        perm: enumerate_path_subset(spec, threads=threads)
        for perm, spec in permutation_cells(n, field).items()
    }
    sizes = {perm: len(cell) for perm, cell in cells.items()}
    union = frozenset().union(*cells.values())
    total = sum(sizes.values())
    disjoint = total == len(union)
    covering = union == frozenset(iter_gl(n, field))
    order = gl_order(n, q)
    return pd.Series(
        index=["partition", "disjoint", "covering", "total", "gl_order", "cell_sizes"],
        data=[
            disjoint and covering and total == order,
            disjoint,
            covering,
            total,
            order,
            sizes,
        ],
        name=f"GL({n},{q})",
    )
