"""
Closed-form and brute-force counts that do not go through the counting engine,
used to cross-check it.
"""
from __future__ import annotations

import itertools
import logging
from typing import Dict, Iterator, Optional

from replab import gf
from replab.errors import ProblemError
from replab.gf import FieldSpec, Matrix
from replab.ncdga import is_zero_mod
from replab.repcount import GradedVS, UTDifferential

LOGGER = logging.getLogger(__name__)


def _iter_matrices(n: int, field: FieldSpec) -> Iterator[Matrix]:
    for entries in itertools.product(field.elements(), repeat=n * n):
        yield tuple(tuple(entries[i * n:(i + 1) * n]) for i in range(n))


def count_eigenvalue_free_pairs(field: FieldSpec, n: int) -> int:
    """
    Number of pairs ``(A, B)`` of n x n matrices over ``field`` with
    ``det(I + AB) != 0``, by direct enumeration.
    """
    ident = gf.mat_identity(n)
    matrices = list(_iter_matrices(n, field))
    total = 0
    for A in matrices:
        for B in matrices:
            ab = gf.mat_add(ident, gf.mat_mul(A, B, field), field)
            if gf.is_invertible(ab, field):
                total += 1
    LOGGER.debug("eigenvalue-free pairs over F_%d, n=%d: %d", field.q, n, total)
    return total


def m52_pair_count_formula(q: int) -> int:
    """
    Closed form for the number of 2 x 2 pairs ``(A, B)`` over ``F_q`` with
    ``I + AB`` invertible, summed over the rank of ``B``.
    """
    x2 = (q ** 2 - 1) * (q ** 2 - q) - ((q + 1) * (q ** 2 - q - 1) + 1)
    x1 = (q ** 2 - q - 1) * (q + 1)
    x0 = 1
    y2 = (q ** 2 - 1) * (q ** 2 - q)
    y1 = 2 * (q ** 2 - 1) * (q ** 2 - q) + (q ** 2 - 1) * q
    y0 = q ** 4 + (q ** 2 - 1) * (q + 1) * q ** 2 + (q ** 2 - 1) * (q ** 2 - q)
    total = x2 * y2 + x1 * y1 + x0 * y0
    assert total == q ** 2 - q ** 3 + 2 * q ** 5 - q ** 6 - q ** 7 + q ** 8, q
    return total


def m52_rep_from_pair(
    field: FieldSpec, A: Matrix, B: Matrix
) -> Optional[Dict[str, Matrix]]:
    """
    The 2-graded representation of the m(5_2) DGA with ``f(a) = A``, ``f(b) = B``
    on ``F_q^n`` concentrated in one degree, or None when ``I + AB`` is singular.
    """
    n = len(A)
    ident = gf.mat_identity(n)
    ab = gf.mat_add(ident, gf.mat_mul(A, B, field), field)
    ba = gf.mat_add(ident, gf.mat_mul(B, A, field), field)
    ab_inv = gf.mat_inverse(ab, field)
    if ab_inv is None:
        return None
    minus_one = field.neg(1)
    c1 = gf.mat_scale(ab_inv, minus_one, field)
    zero = gf.mat_zeros(n)
    return {
        "a": tuple(map(tuple, A)),
        "b": tuple(map(tuple, B)),
        "c1": c1,
        "c2": ab,
        "c3": c1,
        "e1": zero,
        "e2": zero,
        "e3": zero,
        "e4": zero,
        "t": gf.mat_mul(c1, ba, field),
    }


def unknot_rep_count(space: GradedVS, d: UTDifferential, m: int) -> int:
    """
    Number of representations of the unknot DGA ``db = t + 1`` on ``(V, d)`` with
    ``f(t)`` invertible: the ``x`` in the degree-1 part of ``-End(V)`` for which
    ``f(t) = -1 + dx + xd`` is invertible.
    """
    if d.space != space or d.m != m:
        raise ProblemError("differential belongs to a different space or grading")
    field = space.field
    n = space.n
    cells = [
        (i, j)
        for i, j in itertools.product(range(n), repeat=2)
        if is_zero_mod(space.degrees[j] - space.degrees[i] - 1, m)
    ]
    minus_ident = gf.mat_scale(gf.mat_identity(n), field.neg(1), field)
    total = 0
    for values in itertools.product(field.elements(), repeat=len(cells)):
        x = [[0] * n for _ in range(n)]
        for (i, j), v in zip(cells, values):
            x[i][j] = v
        dx = gf.mat_mul(d.matrix, x, field)
        xd = gf.mat_mul(x, d.matrix, field)
        ft = gf.mat_add(minus_ident, gf.mat_add(dx, xd, field), field)
        if gf.is_invertible(ft, field):
            total += 1
    return total
