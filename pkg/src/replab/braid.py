"""
Positive braid words, permutation braids, Maslov bookkeeping and symbolic path
matrices.

Strands and basepoints are numbered ``1 .. n``; permutations are tuples in word
notation, ``perm[i - 1] = pi(i)``. Braid words compose left to right.
"""
from __future__ import annotations

import collections
import itertools
import logging
import re
from typing import Dict, List, Optional, Sequence, Tuple

from replab.errors import BraidError, ParseError
from replab.ncdga import NcMatrix, NcPoly, sigma_m

LOGGER = logging.getLogger(__name__)

Permutation = Tuple[int, ...]
Maslov = Tuple[int, ...]

_RE_LETTER = re.compile(r"^(?:s|σ|sigma)?_?(\d+)$")


class BraidWord:
    """
    Positive braid word ``s_{k_1} ... s_{k_s}`` on ``n`` strands.

    Args:
        n: Number of strands.
        letters: Generator indices, each in ``1 .. n - 1``.
    """

    __slots__ = ("n", "letters")

    def __init__(self, n: int, letters: Sequence[int] = ()):
        if n < 1:
            raise BraidError(f"braid needs at least one strand, not {n}")
        letters = tuple(int(k) for k in letters)
        bad = [k for k in letters if not 1 <= k <= n - 1]
        if bad:
            raise BraidError(f"generator indices {bad} out of range for {n} strands")
        self.n = n
        self.letters = letters

    @classmethod
    def parse(cls, text: str, n: Optional[int] = None) -> "BraidWord":
        """
        Parse words like "s1 s2 s1 s3"; an empty string is the identity braid. The
        strand count defaults to one more than the largest generator index.
        """
        letters = []
        for token in re.split(r"[\s,*]+", text.strip()):
            if not token:
                continue
            match = _RE_LETTER.match(token)
            if match is None:
                raise ParseError(f"bad braid letter '{token}' in '{text}'")
            letters.append(int(match.group(1)))
        if n is None:
            n = max(letters, default=1) + 1 if letters else 1
        return cls(n, letters)

    @classmethod
    def identity(cls, n: int) -> "BraidWord":
        return cls(n, ())

    def __len__(self):
        return len(self.letters)

    def __eq__(self, other):
        if not isinstance(other, BraidWord):
            return NotImplemented
        return (self.n, self.letters) == (other.n, other.letters)

    def __hash__(self):
        return hash((self.n, self.letters))

    def __add__(self, other: "BraidWord") -> "BraidWord":
        if self.n != other.n:
            raise BraidError("cannot concatenate braids on different strand counts")
        return BraidWord(self.n, self.letters + other.letters)

    def __str__(self):
        return " ".join(f"s{k}" for k in self.letters)

    def __repr__(self):
        return f"BraidWord({self.n}, '{self}')"


def parse_mu(text: str) -> Maslov:
    """Parse a Maslov assignment like "0,1,0"."""
    try:
        return tuple(int(x) for x in re.split(r"[\s,]+", text.strip()) if x)
    except ValueError:
        raise ParseError(f"bad Maslov assignment '{text}'")


def _check_mu(b: BraidWord, mu: Sequence[int]) -> Maslov:
    mu = tuple(mu)
    if len(mu) != b.n:
        raise BraidError(f"need {b.n} Maslov values, got {len(mu)}")
    return mu


def permutation_of(b: BraidWord) -> Permutation:
    """
    ``pi(i) = j`` when the strand in position ``i`` on the right of ``b`` sits in
    position ``j`` on the left.
    """
    strand_at = list(range(1, b.n + 1))
    for k in b.letters:
        strand_at[k - 1], strand_at[k] = strand_at[k], strand_at[k - 1]
    return tuple(strand_at)


def inverse_permutation(perm: Sequence[int]) -> Permutation:
    inv = [0] * len(perm)
    for i, j in enumerate(perm, start=1):
        inv[j - 1] = i
    return tuple(inv)


def cycles(perm: Sequence[int]) -> List[Tuple[int, ...]]:
    """
    Cycles of ``perm``, each starting at its smallest element and continuing
    ``j -> perm^-1(j)``; ordered by first element.
    """
    inv = inverse_permutation(perm)
    seen = set()
    out = []
    for start in range(1, len(perm) + 1):
        if start in seen:
            continue
        cycle = [start]
        seen.add(start)
        j = inv[start - 1]
        while j != start:
            cycle.append(j)
            seen.add(j)
            j = inv[j - 1]
        out.append(tuple(cycle))
    return out


def cycle_notation(perm: Sequence[int]) -> str:
    """Cycle notation ``(1 3 4)`` following ``i -> perm(i)``; "id" for the identity."""
    seen = set()
    out = []
    for start in range(1, len(perm) + 1):
        if start in seen or perm[start - 1] == start:
            continue
        cycle = [start]
        seen.add(start)
        j = perm[start - 1]
        while j != start:
            cycle.append(j)
            seen.add(j)
            j = perm[j - 1]
        out.append("(" + " ".join(map(str, cycle)) + ")")
    return "".join(out) or "id"


def permutation_length(perm: Sequence[int]) -> int:
    """Number of inversions of ``perm``."""
    return sum(
        1 for i, j in itertools.combinations(range(len(perm)), 2) if perm[i] > perm[j]
    )


def is_reduced(b: BraidWord) -> bool:
    """True iff no pair of strands crosses twice in ``b``."""
    strand_at = list(range(b.n))
    crossed = set()
    for k in b.letters:
        pair = frozenset((strand_at[k - 1], strand_at[k]))
        if pair in crossed:
            return False
        crossed.add(pair)
        strand_at[k - 1], strand_at[k] = strand_at[k], strand_at[k - 1]
    return True


def reduced_word(perm: Sequence[int]) -> BraidWord:
    """
    The staircase reduced word of ``perm``: for ``i = 1, 2, ..., n`` the strand
    that must end in position ``i`` is carried leftwards into place. Every strand
    makes all of its rightward moves before its leftward ones, so the xz path
    matrix of this word has Kalman form.
    """
    perm = tuple(perm)
    n = len(perm)
    if sorted(perm) != list(range(1, n + 1)):
        raise BraidError(f"{perm} is not a permutation")
    arrangement = list(range(1, n + 1))
    letters = []
    for i in range(1, n + 1):
        j = arrangement.index(perm[i - 1]) + 1
        for k in range(j - 1, i - 1, -1):
            letters.append(k)
            arrangement[k - 1], arrangement[k] = arrangement[k], arrangement[k - 1]
    return BraidWord(max(n, 1), letters)


def reduced_words(perm: Sequence[int]) -> List[BraidWord]:
    """All reduced positive words of ``perm``, in lexicographic order."""
    perm = tuple(perm)
    n = len(perm)
    length = permutation_length(perm)
    out = []

    def extend(letters: List[int]):
        if len(letters) == length:
            b = BraidWord(n, letters)
            if permutation_of(b) == perm:
                out.append(b)
            return
        for k in range(1, n):
            if is_reduced(BraidWord(n, letters + [k])):
                extend(letters + [k])

    extend([])
    return out


def crossing_degrees(b: BraidWord, mu: Sequence[int]) -> List[int]:
    """Degree of each crossing label, overstrand Maslov value minus understrand."""
    mu_at = list(_check_mu(b, mu))
    degrees = []
    for k in b.letters:
        degrees.append(mu_at[k - 1] - mu_at[k])
        mu_at[k - 1], mu_at[k] = mu_at[k], mu_at[k - 1]
    return degrees


def crossing_signs(b: BraidWord, mu: Sequence[int]) -> List[int]:
    """Sign ``(-1)^mu'`` on each crossing label, ``mu'`` the lower strand's value."""
    mu_at = list(_check_mu(b, mu))
    signs = []
    for k in b.letters:
        signs.append(-1 if mu_at[k] % 2 else 1)
        mu_at[k - 1], mu_at[k] = mu_at[k], mu_at[k - 1]
    return signs


def p_name(j: int) -> str:
    return f"p{j}"


def x_name(i: int, j: int) -> str:
    return f"x_{i}_{j}"


def y_name(i: int, j: int) -> str:
    return f"y_{i}_{j}"


def t_name(i: int) -> str:
    return f"t{i}"


def braid_degrees(b: BraidWord, mu: Sequence[int], t_degree: int = 0) -> Dict[str, int]:
    """Degrees of the crossing, dip and basepoint generators attached to ``b``."""
    mu = _check_mu(b, mu)
    degrees = {t_name(i): t_degree for i in range(1, b.n + 1)}
    for j, deg in enumerate(crossing_degrees(b, mu), start=1):
        degrees[p_name(j)] = deg
    for i, j in itertools.combinations(range(1, b.n + 1), 2):
        degrees[x_name(i, j)] = mu[i - 1] - mu[j - 1]
        degrees[y_name(i, j)] = mu[i - 1] - mu[j - 1] - 1
    return degrees


def sigma_matrix(mu: Sequence[int]) -> NcMatrix:
    return NcMatrix.diag([-1 if m % 2 else 1 for m in mu])


def delta_matrix(mu: Sequence[int], inverse: bool = False) -> NcMatrix:
    """``diag(t_i^((-1)^mu_i))``, or its inverse."""
    entries = []
    for i, m in enumerate(mu, start=1):
        exp = -1 if m % 2 else 1
        entries.append(NcPoly.gen(t_name(i), -exp if inverse else exp))
    return NcMatrix.diag(entries)


def x_matrix(n: int) -> NcMatrix:
    return NcMatrix(
        [[NcPoly.gen(x_name(i, j)) if i < j else 0 for j in range(1, n + 1)]
         for i in range(1, n + 1)]
    )


def y_matrix(n: int) -> NcMatrix:
    return NcMatrix(
        [[NcPoly.gen(y_name(i, j)) if i < j else 0 for j in range(1, n + 1)]
         for i in range(1, n + 1)]
    )


class PathMatrix(NcMatrix):
    """
    Path matrix of a braid with its Maslov assignment.

    Attributes:
        braid
        mu
        flavor: One of "xz", "xy", "inverse-xz", "inverse-xy".
    """

    __slots__ = ("braid", "mu", "flavor")

    def __init__(self, rows, braid: BraidWord, mu: Sequence[int], flavor: str):
        super().__init__(rows)
        self.braid = braid
        self.mu = tuple(mu)
        self.flavor = flavor

    def __repr__(self):
        return f"PathMatrix({self.flavor}, '{self.braid}', mu={self.mu})"


def _crossing_block(n: int, k: int, entry: NcPoly, inverse: bool) -> NcMatrix:
    rows = [[int(i == j) for j in range(n)] for i in range(n)]
    if inverse:
        rows[k - 1][k - 1], rows[k - 1][k] = 0, 1
        rows[k][k - 1], rows[k][k] = 1, -entry
    else:
        rows[k - 1][k - 1], rows[k - 1][k] = entry, 1
        rows[k][k - 1], rows[k][k] = 1, 0
    return NcMatrix(rows)


def path_matrix_xz(b: BraidWord, mu: Sequence[int]) -> PathMatrix:
    """
    Product of the single-crossing matrices, whose 2x2 block at the crossing is
    ``((-1)^mu' p_j, 1; 1, 0)``.
    """
    mu = _check_mu(b, mu)
    result = NcMatrix.identity(b.n)
    for j, (k, s) in enumerate(zip(b.letters, crossing_signs(b, mu)), start=1):
        result = result * _crossing_block(b.n, k, NcPoly.gen(p_name(j)) * s, False)
    return PathMatrix(result.rows, b, mu, "xz")


def path_matrix_xy(b: BraidWord, mu: Sequence[int]) -> PathMatrix:
    """``P^xy = Delta P^xz (I + X Sigma)``."""
    mu = _check_mu(b, mu)
    unipotent = NcMatrix.identity(b.n) + x_matrix(b.n) * sigma_matrix(mu)
    result = delta_matrix(mu) * path_matrix_xz(b, mu) * unipotent
    return PathMatrix(result.rows, b, mu, "xy")


def unipotent_inverse(b: BraidWord, mu: Sequence[int]) -> NcMatrix:
    """``(I + X Sigma)^-1`` as the finite geometric series in ``-X Sigma``."""
    n = b.n
    step = -(x_matrix(n) * sigma_matrix(mu))
    result = NcMatrix.identity(n)
    power = NcMatrix.identity(n)
    for _ in range(n - 1):
        power = power * step
        result = result + power
    return result


def path_matrix_inverse(P: PathMatrix) -> PathMatrix:
    """
    Two-sided inverse of an xz or xy path matrix, built from the inverse crossing
    blocks ``(0, 1; 1, -(+-p_j))`` in reverse order.
    """
    b, mu = P.braid, P.mu
    if P.flavor not in ("xz", "xy"):
        raise BraidError(f"cannot invert a path matrix of flavor '{P.flavor}'")
    result = NcMatrix.identity(b.n)
    pairs = list(enumerate(zip(b.letters, crossing_signs(b, mu)), start=1))
    for j, (k, s) in reversed(pairs):
        result = result * _crossing_block(b.n, k, NcPoly.gen(p_name(j)) * s, True)
    if P.flavor == "xy":
        result = unipotent_inverse(b, mu) * result * delta_matrix(mu, inverse=True)
    return PathMatrix(result.rows, b, mu, f"inverse-{P.flavor}")


def lambda_m(b: BraidWord, mu: Sequence[int], m: int) -> int:
    """``sigma_m`` of the degree distribution of the crossings of ``b``."""
    dist = collections.Counter(crossing_degrees(b, mu))
    return sigma_m(dist, m)


def kalman_form_check(P: NcMatrix, perm: Sequence[int]) -> bool:
    """
    True iff ``P`` has a 1 at ``(pi(i), i)`` for each column, a single signed
    crossing label ``+-p_k`` or 0 at each position above the 1 of its column and
    left of the 1 of its row, zeros elsewhere, and every label at most once.
    """
    n = len(perm)
    if P.shape != (n, n):
        return False
    inv = inverse_permutation(perm)
    labels = []
    for r in range(1, n + 1):
        for c in range(1, n + 1):
            entry = P[r - 1, c - 1]
            if r == perm[c - 1]:
                if entry != NcPoly.one():
                    return False
            elif r < perm[c - 1] and c < inv[r - 1]:
                if not entry:
                    continue
                if len(entry) != 1:
                    return False
                (word, coeff), = entry.terms
                if abs(coeff) != 1 or len(word) != 1 or word[0][1] != 1:
                    return False
                labels.append(word[0][0])
            elif entry:
                return False
    if isinstance(P, PathMatrix) and len(labels) != len(P.braid):
        return False
    return len(labels) == len(set(labels))


def kalman_labels(P: NcMatrix) -> Dict[Tuple[int, int], Tuple[str, int]]:
    """Positions (0-indexed) of the signed single-letter crossing labels of ``P``."""
    labels = {}
    for r, row in enumerate(P.rows):
        for c, entry in enumerate(row):
            if len(entry) == 1:
                (word, coeff), = entry.terms
                if len(word) == 1:
                    labels[(r, c)] = (word[0][0], coeff)
    return labels
