"""
Finite fields F_q with lookup-table arithmetic.

Elements are plain integers ``0 .. q-1``. For a prime field that integer is the
residue; for an extension ``F_p[x]/(m(x))`` it is the base-p value of the
coefficient vector, lowest degree first, so ``x`` is the element ``p``.
"""
from __future__ import annotations

import functools
import itertools
import logging
from typing import Iterator, List, Optional, Sequence, Tuple

import numpy as np

from replab.errors import FieldError

LOGGER = logging.getLogger(__name__)

MAX_ORDER = 256

Poly = Tuple[int, ...]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, int(n ** 0.5) + 1))


def prime_power(q: int) -> Tuple[int, int]:
    """
    Split ``q`` as ``p ** k`` with ``p`` prime.

    Raises:
        FieldError: if ``q`` is not a prime power.
    """
    if q < 2:
        raise FieldError(f"field order must be a prime power, not {q}")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    k, rest = 0, q
    while rest % p == 0:
        rest //= p
        k += 1
    if rest != 1 or not _is_prime(p):
        raise FieldError(f"field order must be a prime power, not {q}")
    return p, k


def _poly_trim(a: Sequence[int]) -> Poly:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return tuple(a)


def _poly_mod(a: Sequence[int], m: Sequence[int], p: int) -> Poly:
    """Remainder of ``a`` modulo monic ``m`` over F_p (coefficients low to high)."""
    a = [c % p for c in a]
    dm = len(m) - 1
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i]
        if c:
            for j in range(dm + 1):
                a[i - dm + j] = (a[i - dm + j] - c * m[j]) % p
    return _poly_trim(a[:dm])


def _monic_polys(p: int, degree: int) -> Iterator[Poly]:
    for low in itertools.product(range(p), repeat=degree):
        yield tuple(low) + (1,)


def is_irreducible(m: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1 .. deg(m) // 2."""
    k = len(m) - 1
    for degree in range(1, k // 2 + 1):
        for divisor in _monic_polys(p, degree):
            if not _poly_mod(m, divisor, p):
                return False
    return True


@functools.lru_cache(maxsize=None)
def least_irreducible(p: int, k: int) -> Poly:
    """
    The lexicographically least monic irreducible polynomial of degree ``k`` over
    F_p, ordering candidates by the base-p value of their lower coefficients.
    """
    for value in range(p ** k):
        low = [(value // p ** i) % p for i in range(k)]
        m = tuple(low) + (1,)
        if is_irreducible(m, p):
            return m
    raise FieldError(f"no irreducible polynomial of degree {k} over F_{p}")


class FieldSpec:
    """
    The finite field of order ``q = p ** k``, with precomputed addition,
    multiplication, negation and inversion tables.

    Args:
        p: Prime characteristic.
        k: Extension degree.

    Attributes:
        p
        k
        q
        modulus: Coefficients (low to high) of the defining polynomial; ``None``
            for prime fields.
    """

    def __init__(self, p: int, k: int = 1):
        if not _is_prime(p) or k < 1:
            raise FieldError(f"invalid field parameters p={p}, k={k}")
        q = p ** k
        if q > MAX_ORDER:
            raise FieldError(f"fields of order > {MAX_ORDER} are not supported")
        self.p = p
        self.k = k
        self.q = q
        self.modulus = least_irreducible(p, k) if k > 1 else None
        self._build_tables()

    def __repr__(self):
        return f"FieldSpec(q={self.q})"

    def __eq__(self, other):
        return (
            isinstance(other, FieldSpec)
            and (self.p, self.k, self.modulus) == (other.p, other.k, other.modulus)
        )

    def __hash__(self):
        return hash((self.p, self.k, self.modulus))

    def __reduce__(self):
        return (self.__class__, (self.p, self.k))

    def _digits(self, value: int) -> List[int]:
        return [(value // self.p ** i) % self.p for i in range(self.k)]

    def _value(self, digits: Sequence[int]) -> int:
        return sum(c * self.p ** i for i, c in enumerate(digits))

    def _build_tables(self):
        p, q = self.p, self.q
        digits = [self._digits(v) for v in range(q)]
        add = np.zeros((q, q), dtype=np.int64)
        mul = np.zeros((q, q), dtype=np.int64)
        for a in range(q):
            for b in range(a, q):
                s = self._value([(x + y) % p for x, y in zip(digits[a], digits[b])])
                if self.k == 1:
                    m = (a * b) % p
                else:
                    prod = [0] * (2 * self.k - 1)
                    for i, x in enumerate(digits[a]):
                        if x:
                            for j, y in enumerate(digits[b]):
                                prod[i + j] += x * y
                    m = self._value(
                        list(_poly_mod(prod, self.modulus, p))
                        + [0] * self.k
                    )
                add[a, b] = add[b, a] = s
                mul[a, b] = mul[b, a] = m
        neg = np.argmin(add, axis=1)
        inv = np.zeros(q, dtype=np.int64)
        for a in range(1, q):
            inv[a] = int(np.flatnonzero(mul[a] == 1)[0])
        for table in (add, mul, neg, inv):
            table.setflags(write=False)
        self.add_table = add
        self.mul_table = mul
        self.neg_table = neg
        self.inv_table = inv
        LOGGER.debug("built arithmetic tables for F_%d", q)

    @functools.cached_property
    def tables(self) -> Tuple[List[List[int]], List[List[int]], List[int], List[int]]:
        """Plain-list copies of (add, mul, neg, inv) for tight inner loops."""
        return (
            self.add_table.tolist(),
            self.mul_table.tolist(),
            self.neg_table.tolist(),
            self.inv_table.tolist(),
        )

    def elements(self) -> range:
        return range(self.q)

    def units(self) -> range:
        return range(1, self.q)

    def from_int(self, n: int) -> int:
        """Image of the integer ``n`` under Z -> F_q."""
        return n % self.p

    def add(self, a: int, b: int) -> int:
        return int(self.add_table[a, b])

    def sub(self, a: int, b: int) -> int:
        return int(self.add_table[a, self.neg_table[b]])

    def mul(self, a: int, b: int) -> int:
        return int(self.mul_table[a, b])

    def neg(self, a: int) -> int:
        return int(self.neg_table[a])

    def inv(self, a: int) -> int:
        if a == 0:
            raise FieldError("inverse of zero")
        return int(self.inv_table[a])

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        result = 1
        for _ in range(e):
            result = self.mul(result, a)
        return result

    def element(self, value: int) -> "FieldElement":
        return FieldElement(self, value)

    def multiplicative_order(self, a: int) -> int:
        if a == 0:
            raise FieldError("zero has no multiplicative order")
        order, x = 1, a
        while x != 1:
            x = self.mul(x, a)
            order += 1
        return order


@functools.lru_cache(maxsize=None)
def field_make(q: int) -> FieldSpec:
    """
    Build (and cache) the field of order ``q``.

    Raises:
        FieldError: if ``q`` is not a prime power, or is too large.
    """
    p, k = prime_power(q)
    return FieldSpec(p, k)


class FieldElement:
    """
    Value-like wrapper around an integer element of a :class:`FieldSpec`, for
    interactive use; the counting engine works on bare integers.
    """

    __slots__ = ("field", "value")

    def __init__(self, field: FieldSpec, value: int):
        if not 0 <= value < field.q:
            raise FieldError(f"{value} is not an element of F_{field.q}")
        self.field = field
        self.value = value

    def __repr__(self):
        return f"FieldElement({self.value}, q={self.field.q})"

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        return NotImplemented

    def __hash__(self):
        return hash((self.field.q, self.value))

    def _check(self, other: "FieldElement") -> None:
        if not isinstance(other, FieldElement):
            raise TypeError()
        if other.field != self.field:
            raise FieldError(
                f"mixed-field operands F_{self.field.q}, F_{other.field.q}"
            )

    def __add__(self, other):
        self._check(other)
        return FieldElement(self.field, self.field.add(self.value, other.value))

    def __sub__(self, other):
        self._check(other)
        return FieldElement(self.field, self.field.sub(self.value, other.value))

    def __mul__(self, other):
        self._check(other)
        return FieldElement(self.field, self.field.mul(self.value, other.value))

    def __truediv__(self, other):
        self._check(other)
        return FieldElement(self.field, self.field.div(self.value, other.value))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow(self.value, e))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv(self.value))


def field_arith(a: FieldElement, b: FieldElement | None, op: str) -> FieldElement:
    """
    Apply ``op`` (one of "add", "mul", "inv", "neg") to field elements; unary ops
    ignore ``b``.
    """
    if op == "add":
        return a + b
    elif op == "mul":
        return a * b
    elif op == "inv":
        return a.inverse()
    elif op == "neg":
        return -a
    else:
        raise ValueError(f"unknown field operation '{op}'")


Matrix = Tuple[Tuple[int, ...], ...]


def mat_identity(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def mat_zeros(n: int, ncols: Optional[int] = None) -> Matrix:
    return tuple((0,) * (n if ncols is None else ncols) for _ in range(n))


def mat_mul(
    A: Sequence[Sequence[int]], B: Sequence[Sequence[int]], field: FieldSpec
) -> Matrix:
    add, mul, _, _ = field.tables
    out = []
    for row in A:
        new = []
        for j in range(len(B[0])):
            acc = 0
            for k, a in enumerate(row):
                if a:
                    acc = add[acc][mul[a][B[k][j]]]
            new.append(acc)
        out.append(tuple(new))
    return tuple(out)


def mat_add(
    A: Sequence[Sequence[int]], B: Sequence[Sequence[int]], field: FieldSpec
) -> Matrix:
    add = field.tables[0]
    return tuple(tuple(add[a][b] for a, b in zip(r1, r2)) for r1, r2 in zip(A, B))


def mat_scale(A: Sequence[Sequence[int]], c: int, field: FieldSpec) -> Matrix:
    mul = field.tables[1]
    return tuple(tuple(mul[c][a] for a in row) for row in A)


def row_reduce(
    rows: Sequence[Sequence[int]], field: FieldSpec, ncols: Optional[int] = None
) -> Tuple[List[List[int]], List[int]]:
    """
    Reduced row echelon form over ``field`` of the first ``ncols`` columns of
    ``rows`` (all columns by default; extra columns are carried along).

    Returns:
        The nonzero reduced rows and their pivot columns.
    """
    add, mul, neg, inv = field.tables
    work = [list(r) for r in rows]
    width = len(work[0]) if work else 0
    ncols = width if ncols is None else ncols
    pivots: List[int] = []
    rank = 0
    for col in range(ncols):
        pivot = next((i for i in range(rank, len(work)) if work[i][col]), None)
        if pivot is None:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        scale = inv[work[rank][col]]
        prow = [mul[scale][x] for x in work[rank]]
        work[rank] = prow
        for i in range(len(work)):
            if i != rank and work[i][col]:
                f = neg[work[i][col]]
                work[i] = [add[x][mul[f][y]] for x, y in zip(work[i], prow)]
        pivots.append(col)
        rank += 1
    return work[:rank] + [r for r in work[rank:] if any(r)], pivots


def mat_rank(A: Sequence[Sequence[int]], field: FieldSpec) -> int:
    return len(row_reduce(A, field)[1]) if A else 0


def is_invertible(A: Sequence[Sequence[int]], field: FieldSpec) -> bool:
    return len(A) == len(A[0]) and mat_rank(A, field) == len(A)


def solve_affine(
    coeffs: Sequence[Sequence[int]], rhs: Sequence[int], field: FieldSpec
) -> Optional[Tuple[List[int], List[List[int]]]]:
    """
    Solve ``coeffs @ x = rhs`` over ``field``.

    Returns:
        ``(particular, basis)``, a particular solution and a basis of the solution
        space of the homogeneous system, or None if the system is inconsistent.
    """
    nvars = len(coeffs[0]) if coeffs else 0
    augmented = [list(r) + [b] for r, b in zip(coeffs, rhs)]
    if not augmented:
        return [0] * nvars, [[int(i == j) for j in range(nvars)] for i in range(nvars)]
    reduced, pivots = row_reduce(augmented, field, ncols=nvars)
    if any(not any(r[:nvars]) and r[nvars] for r in reduced):
        return None
    neg = field.tables[2]
    particular = [0] * nvars
    for r, col in zip(reduced, pivots):
        particular[col] = r[nvars]
    free = [j for j in range(nvars) if j not in set(pivots)]
    basis = []
    for f in free:
        vec = [0] * nvars
        vec[f] = 1
        for r, col in zip(reduced, pivots):
            vec[col] = neg[r[f]]
        basis.append(vec)
    return particular, basis


def mat_inverse(A: Sequence[Sequence[int]], field: FieldSpec) -> Optional[Matrix]:
    """Inverse of the square matrix ``A`` over ``field``, or None if it is singular."""
    n = len(A)
    augmented = [list(row) + list(e) for row, e in zip(A, mat_identity(n))]
    reduced, pivots = row_reduce(augmented, field, ncols=n)
    if len(pivots) < n:
        return None
    return tuple(tuple(row[n:]) for row in reduced[:n])
