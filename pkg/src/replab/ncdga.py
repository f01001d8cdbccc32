"""
Noncommutative Z-graded DGAs over the integers.

Polynomials are integer combinations of words in the DGA generators, where a word
is a tuple of ``(name, exponent)`` letters and exponent ``-1`` is only allowed on
invertible (basepoint) generators. Coefficients stay in Z; reduction into a finite
field happens when a polynomial is evaluated.
"""
from __future__ import annotations

import collections
import itertools
import logging
from typing import (
    Any,
    Dict,
    Iterable,
    Iterator,
    List,
    Mapping,
    NamedTuple,
    Optional,
    Sequence,
    Tuple,
)

import pandas as pd

from replab.errors import DgaError

LOGGER = logging.getLogger(__name__)

Letter = Tuple[str, int]
Word = Tuple[Letter, ...]


def _reduce_word(word: Iterable[Letter]) -> Word:
    stack: List[Letter] = []
    for name, exp in word:
        if stack and stack[-1][0] == name and stack[-1][1] == -exp:
            stack.pop()
        else:
            stack.append((name, exp))
    return tuple(stack)


def _word_key(word: Word):
    return (len(word), word)


class NcPoly:
    """
    Integer-coefficient noncommutative Laurent polynomial, always kept in canonical
    form: unit relations cancelled, like terms merged and zero terms dropped.
    Instances are immutable and hashable.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(
        self, terms: Optional[Mapping[Word, int] | Iterable[Tuple[Word, int]]] = None
    ):
        merged: Dict[Word, int] = collections.defaultdict(int)
        if terms:
            items = terms.items() if isinstance(terms, Mapping) else terms
            for word, coeff in items:
                if coeff:
                    merged[_reduce_word(word)] += coeff
        self._terms = tuple(
            sorted(
                ((w, c) for w, c in merged.items() if c),
                key=lambda wc: _word_key(wc[0]),
            )
        )
        self._hash = None

    @classmethod
    def zero(cls) -> "NcPoly":
        return cls()

    @classmethod
    def one(cls) -> "NcPoly":
        return cls({(): 1})

    @classmethod
    def const(cls, c: int) -> "NcPoly":
        return cls({(): c})

    @classmethod
    def gen(cls, name: str, exp: int = 1) -> "NcPoly":
        if exp not in (1, -1):
            raise ValueError(f"exponent must be 1 or -1, not {exp}")
        return cls({((name, exp),): 1})

    @classmethod
    def word(cls, *letters: str | Letter, coeff: int = 1) -> "NcPoly":
        """Build ``coeff * w`` from names (exponent 1) or ``(name, exp)`` pairs."""
        word = tuple((x, 1) if isinstance(x, str) else tuple(x) for x in letters)
        return cls({word: coeff})

    @property
    def terms(self) -> Tuple[Tuple[Word, int], ...]:
        return self._terms

    def __iter__(self) -> Iterator[Tuple[Word, int]]:
        return iter(self._terms)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, int):
            other = NcPoly.const(other)
        if not isinstance(other, NcPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._terms)
        return self._hash

    def __add__(self, other):
        if isinstance(other, int):
            other = NcPoly.const(other)
        if not isinstance(other, NcPoly):
            return NotImplemented
        return NcPoly(self._terms + other._terms)

    __radd__ = __add__

    def __neg__(self):
        return NcPoly((w, -c) for w, c in self._terms)

    def __sub__(self, other):
        if isinstance(other, int):
            other = NcPoly.const(other)
        if not isinstance(other, NcPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return NcPoly((w, c * other) for w, c in self._terms)
        if not isinstance(other, NcPoly):
            return NotImplemented
        return NcPoly(
            (w1 + w2, c1 * c2) for w1, c1 in self._terms for w2, c2 in other._terms
        )

    def __rmul__(self, other):
        if isinstance(other, int):
            return self * other
        return NotImplemented

    def letters(self) -> set:
        """Names of all generators occurring in the polynomial."""
        return {name for word, _ in self._terms for name, _ in word}

    def constant_term(self) -> int:
        return dict(self._terms).get((), 0)

    def word_degrees(self, degrees: Mapping[str, int]) -> set:
        """Set of degrees of the words in the polynomial."""
        return {word_degree(word, degrees) for word, _ in self._terms}

    def homogeneous_degree(self, degrees: Mapping[str, int]) -> Optional[int]:
        """The common degree of all words, or None if zero or inhomogeneous."""
        degs = self.word_degrees(degrees)
        return degs.pop() if len(degs) == 1 else None

    def substitute(self, images: Mapping[Letter, "NcPoly"]) -> "NcPoly":
        """
        Replace letters by polynomials; letters not in ``images`` are kept.
        Keys are ``(name, exponent)`` so inverses can be mapped independently.
        """
        result = NcPoly()
        for word, coeff in self._terms:
            term = NcPoly.const(coeff)
            for letter in word:
                term = term * images.get(letter, NcPoly({(letter,): 1}))
            result = result + term
        return result

    def evaluate(self, values: Mapping[str, int], field) -> int:
        """
        Evaluate in the commutative field ``field`` (a :class:`replab.gf.FieldSpec`)
        with generator values given by ``values``; inverse letters use field inverses.
        Returns None if a zero value would have to be inverted.
        """
        add, mul, _, inv = field.tables
        total = 0
        for word, coeff in self._terms:
            x = field.from_int(coeff)
            for name, exp in word:
                v = values[name]
                if exp < 0:
                    if v == 0:
                        return None
                    v = inv[v]
                x = mul[x][v]
            total = add[total][x]
        return total

    def __str__(self):
        if not self._terms:
            return "0"
        out = []
        for i, (word, coeff) in enumerate(self._terms):
            body = "*".join(
                name if exp == 1 else f"{name}^{exp}" for name, exp in word
            )
            mag = abs(coeff)
            if not body:
                text = str(mag)
            elif mag == 1:
                text = body
            else:
                text = f"{mag}*{body}"
            if i == 0:
                out.append(text if coeff > 0 else f"-{text}")
            else:
                out.append(("+ " if coeff > 0 else "- ") + text)
        return " ".join(out)

    def __repr__(self):
        return f"NcPoly('{self}')"


def poly_canonical(p: NcPoly | Iterable[Tuple[Word, int]]) -> NcPoly:
    """Canonical form of ``p``; idempotent on :class:`NcPoly` instances."""
    if isinstance(p, NcPoly):
        return NcPoly(p.terms)
    return NcPoly(p)


def word_degree(word: Word, degrees: Mapping[str, int]) -> int:
    try:
        return sum(degrees[name] * exp for name, exp in word)
    except KeyError as e:
        raise DgaError(f"unknown generator {e.args[0]!r}")


class NcMatrix:
    """
    Square or rectangular matrix with :class:`NcPoly` entries, 0-indexed.
    """

    __slots__ = ("rows",)

    def __init__(self, rows: Sequence[Sequence[NcPoly | int]]):
        self.rows = tuple(
            tuple(x if isinstance(x, NcPoly) else NcPoly.const(x) for x in row)
            for row in rows
        )

    @classmethod
    def zeros(cls, n: int, ncols: Optional[int] = None) -> "NcMatrix":
        return cls([[0] * (n if ncols is None else ncols) for _ in range(n)])

    @classmethod
    def identity(cls, n: int) -> "NcMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def diag(cls, entries: Sequence[NcPoly | int]) -> "NcMatrix":
        n = len(entries)
        return cls([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @property
    def shape(self) -> Tuple[int, int]:
        return (len(self.rows), len(self.rows[0]) if self.rows else 0)

    @property
    def n(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij: Tuple[int, int]) -> NcPoly:
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        if not isinstance(other, NcMatrix):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __add__(self, other: "NcMatrix") -> "NcMatrix":
        return NcMatrix(
            [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)]
        )

    def __sub__(self, other: "NcMatrix") -> "NcMatrix":
        return NcMatrix(
            [[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)]
        )

    def __neg__(self):
        return NcMatrix([[-a for a in row] for row in self.rows])

    def __mul__(self, other):
        if isinstance(other, (int, NcPoly)):
            return NcMatrix([[a * other for a in row] for row in self.rows])
        if not isinstance(other, NcMatrix):
            return NotImplemented
        nrows, inner = self.shape
        ncols = other.shape[1]
        out = []
        for i in range(nrows):
            row = []
            for j in range(ncols):
                acc = []
                for k in range(inner):
                    a, b = self.rows[i][k], other.rows[k][j]
                    if a and b:
                        acc.extend(
                            (w1 + w2, c1 * c2)
                            for w1, c1 in a.terms
                            for w2, c2 in b.terms
                        )
                row.append(NcPoly(acc))
            out.append(row)
        return NcMatrix(out)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self * other
        if isinstance(other, NcPoly):
            return NcMatrix([[other * a for a in row] for row in self.rows])
        return NotImplemented

    def map(self, func) -> "NcMatrix":
        return NcMatrix([[func(a) for a in row] for row in self.rows])

    def is_zero(self) -> bool:
        return not any(a for row in self.rows for a in row)

    def __str__(self):
        return "\n".join(
            "[" + ", ".join(str(a) for a in row) + "]" for row in self.rows
        )

    def __repr__(self):
        return f"NcMatrix({[[str(a) for a in row] for row in self.rows]})"


class Generator(NamedTuple):
    name: str
    degree: int
    invertible: bool = False


class Component(NamedTuple):
    """Basepoints of one knot component, in order, starting from the initial one."""

    basepoints: Tuple[str, ...]

    @property
    def initial(self) -> str:
        return self.basepoints[0]


class DgaPresentation:
    """
    A semi-free DGA: ordered generators with degrees, the differential on each of
    them, the rotation number, and basepoint components.

    Args:
        generators: Ordered generators; invertible ones are the basepoints.
        diff: Differential of the non-invertible generators. Missing entries are 0.
        rotation: Rotation number r(K).
        components: Partition of the basepoints into components; defaults to a
            single component holding every basepoint in presentation order.
        name: Label for display.
        families: Optional map from generator name to a family label, used to
            group generators when planning a counting search.

    Raises:
        DgaError: on unknown generators, nonzero differential of a basepoint, an
            odd-degree basepoint, or a bad component partition.
    """

    def __init__(
        self,
        generators: Sequence[Generator],
        diff: Mapping[str, NcPoly],
        *,
        rotation: int = 0,
        components: Optional[Sequence[Sequence[str]]] = None,
        name: str = "",
        families: Optional[Mapping[str, str]] = None,
    ):
        self.generators = tuple(Generator(*g) for g in generators)
        self.name = name
        self.rotation = rotation
        self._index = {g.name: i for i, g in enumerate(self.generators)}
        if len(self._index) != len(self.generators):
            raise DgaError("duplicate generator names")
        self.degrees = {g.name: g.degree for g in self.generators}
        for g in self.generators:
            if g.invertible and g.degree % 2:
                raise DgaError(
                    f"basepoint generator '{g.name}' has odd degree {g.degree}"
                )
        self.diff: Dict[str, NcPoly] = {}
        for gname, poly in diff.items():
            if gname not in self._index:
                raise DgaError(f"differential given for unknown generator '{gname}'")
            unknown = poly.letters() - set(self._index)
            if unknown:
                raise DgaError(
                    f"unknown generator(s) {sorted(unknown)} in d{gname}"
                )
            for word, _ in poly:
                for letter, exp in word:
                    if exp < 0 and not self.generator(letter).invertible:
                        raise DgaError(
                            f"inverse of non-invertible '{letter}' in d{gname}"
                        )
            if poly and self.generator(gname).invertible:
                raise DgaError(
                    f"basepoint generator '{gname}' must have zero differential"
                )
            if poly:
                self.diff[gname] = poly
        if components is None:
            bps = tuple(g.name for g in self.generators if g.invertible)
            components = [bps] if bps else []
        self.components = tuple(Component(tuple(c)) for c in components)
        seen = [b for c in self.components for b in c.basepoints]
        if any(not c.basepoints for c in self.components):
            raise DgaError("every component needs at least one basepoint")
        if sorted(seen) != sorted(g.name for g in self.generators if g.invertible):
            raise DgaError("components must partition the basepoint generators")
        self.families = dict(families or {})

    def __repr__(self):
        return f"DgaPresentation('{self.name}')"

    def __eq__(self, other):
        if not isinstance(other, DgaPresentation):
            return NotImplemented
        return (
            self.name == other.name
            and self.generators == other.generators
            and self.diff == other.diff
            and self.rotation == other.rotation
            and self.components == other.components
        )

    def generator(self, name: str) -> Generator:
        try:
            return self.generators[self._index[name]]
        except KeyError:
            raise DgaError(f"unknown generator '{name}'")

    def index(self, name: str) -> int:
        return self._index[name]

    @property
    def chords(self) -> Tuple[Generator, ...]:
        """The non-invertible generators."""
        return tuple(g for g in self.generators if not g.invertible)

    @property
    def basepoints(self) -> Tuple[Generator, ...]:
        return tuple(g for g in self.generators if g.invertible)

    @property
    def num_basepoints(self) -> int:
        return len(self.basepoints)

    def d(self, name: str) -> NcPoly:
        self.generator(name)
        return self.diff.get(name, NcPoly())

    def family(self, name: str) -> str:
        return self.families.get(name, name)

    def replace(self, **kwargs) -> "DgaPresentation":
        fields = {
            "generators": self.generators,
            "diff": self.diff,
            "rotation": self.rotation,
            "components": [c.basepoints for c in self.components],
            "name": self.name,
            "families": self.families,
        }
        fields.update(kwargs)
        generators = fields.pop("generators")
        diff = fields.pop("diff")
        return DgaPresentation(generators, diff, **fields)


def apply_diff(dga: DgaPresentation, p: NcPoly) -> NcPoly:
    """
    Apply the differential of ``dga`` to ``p``, extended as the degree -1 derivation
    ``d(xy) = d(x) y + (-1)^|x| x d(y)``, with ``d(t^-1) = 0`` for basepoints.

    Raises:
        DgaError: if ``p`` contains a generator unknown to ``dga``.
    """
    return apply_derivation(p, dga.diff, dga.degrees)


def apply_derivation(
    p: NcPoly, diff: Mapping[str, NcPoly], degrees: Mapping[str, int]
) -> NcPoly:
    """The degree -1 derivation with values ``diff`` on generators, applied to ``p``."""
    out: List[Tuple[Word, int]] = []
    for word, coeff in p:
        prefix_degree = 0
        for i, (name, exp) in enumerate(word):
            if name not in degrees:
                raise DgaError(f"unknown generator '{name}'")
            if exp > 0:
                dx = diff.get(name)
                if dx:
                    sign = -1 if prefix_degree % 2 else 1
                    head, tail = word[:i], word[i + 1:]
                    out.extend((head + w + tail, sign * coeff * c) for w, c in dx)
            prefix_degree += degrees[name] * exp
    return NcPoly(out)


def apply_diff_matrix(dga: DgaPresentation, mat: NcMatrix) -> NcMatrix:
    return mat.map(lambda a: apply_diff(dga, a))


def check_dga(dga: DgaPresentation) -> pd.Series:
    """
    Check that the differential of ``dga`` has degree -1 and squares to zero on
    every generator.

    Returns:
        Report with a boolean "valid" row, the two individual verdicts, and a list
        of ``(generator, check, residual)`` failures.
    """
    failures = []
    grading_ok = True
    squares_ok = True
    for g in dga.generators:
        dg = dga.d(g.name)
        bad = sorted(d for d in dg.word_degrees(dga.degrees) if d != g.degree - 1)
        if bad:
            grading_ok = False
            failures.append((g.name, "degree", str(dg)))
        ddg = apply_diff(dga, dg)
        if ddg:
            squares_ok = False
            failures.append((g.name, "d^2", str(ddg)))
    if failures:
        LOGGER.debug("check_dga(%s): %d failures", dga.name, len(failures))
    return pd.Series(
        index=["valid", "grading_ok", "squares_to_zero", "failures"],
        data=[grading_ok and squares_ok, grading_ok, squares_ok, failures],
        name=dga.name,
    )


def _fresh_name(base: str, taken: Iterable[str]) -> str:
    taken = set(taken)
    for i in itertools.count(1):
        name = f"{base}{i}"
        if name not in taken:
            return name


def split_basepoint(dga: DgaPresentation, t: str, count: int) -> DgaPresentation:
    """
    Replace basepoint ``t`` by ``count`` consecutive basepoints ``t_1 .. t_count``;
    ``t_1`` carries the degree of ``t`` and the others have degree 0. Occurrences
    of ``t`` become the product ``t_1 ... t_n`` and ``t^-1`` becomes
    ``t_n^-1 ... t_1^-1``.
    """
    gen = dga.generator(t)
    if not gen.invertible:
        raise DgaError(f"'{t}' is not a basepoint generator")
    if count < 1:
        raise DgaError(f"split count must be >= 1, not {count}")
    if count == 1:
        return dga
    names = [f"{t}_{j}" for j in range(1, count + 1)]
    clash = set(names) & set(dga.degrees)
    if clash:
        raise DgaError(f"split names {sorted(clash)} already in use")
    generators = []
    for g in dga.generators:
        if g.name == t:
            generators.extend(
                Generator(name, gen.degree if j == 0 else 0, True)
                for j, name in enumerate(names)
            )
        else:
            generators.append(g)
    forward = NcPoly.word(*names)
    backward = NcPoly.word(*((name, -1) for name in reversed(names)))
    images = {(t, 1): forward, (t, -1): backward}
    diff = {g: p.substitute(images) for g, p in dga.diff.items()}
    components = []
    for c in dga.components:
        bps = []
        for b in c.basepoints:
            bps.extend(names if b == t else [b])
        components.append(bps)
    families = {}
    for g, fam in dga.families.items():
        for name in names if g == t else [g]:
            families[name] = fam
    return dga.replace(
        generators=generators, diff=diff, components=components, families=families
    )


def stabilize(dga: DgaPresentation, degree: int) -> DgaPresentation:
    """
    Add a cancelling pair: fresh generators ``a`` of degree ``degree`` and ``b`` of
    degree ``degree - 1`` with ``d(a) = b``.
    """
    taken = set(dga.degrees)
    a = _fresh_name("sa", taken)
    b = "sb" + a[2:]
    if b in taken:
        b = _fresh_name("sb", taken)
    generators = list(dga.generators) + [
        Generator(a, degree),
        Generator(b, degree - 1),
    ]
    diff = dict(dga.diff)
    diff[a] = NcPoly.gen(b)
    return dga.replace(generators=generators, diff=diff)


def degree_distribution(dga: DgaPresentation) -> Dict[int, int]:
    """Number of non-invertible generators in each degree, sorted by degree."""
    counts = collections.Counter(g.degree for g in dga.chords)
    return dict(sorted(counts.items()))


def is_zero_mod(k: int, m: int) -> bool:
    """``k = 0 mod m``, where modulus 0 means equality."""
    return k == 0 if m == 0 else k % m == 0


def chi_k(dist: Mapping[int, int], k: int) -> int:
    """
    Shifted Euler characteristic centered at ``k``: chords of degree ``k + l`` count
    with sign ``(-1)^l`` for ``l >= 0`` and ``(-1)^(l+1)`` for ``l < 0``.
    """
    total = 0
    for deg, r in dist.items():
        l = deg - k
        total += (-1) ** (l % 2) * r if l >= 0 else (-1) ** ((l + 1) % 2) * r
    return total


def _sigma_partial(dist: Mapping[int, int], m: int, N: int) -> int:
    if m == 0:
        return chi_k(dist, 0)
    return sum(chi_k(dist, k) for k in range(-N, N + 1) if k % m == 0)


def _sigma_closed(dist: Mapping[int, int], m: int) -> int:
    if m == 0:
        return chi_k(dist, 0)
    elif m % 2 == 0:
        ks = {deg // m for deg in dist}
        total = 0
        for k in ks:
            s_k = sum((-1) ** l * dist.get(m * k + l, 0) for l in range(m))
            total += (2 * k + 1) * s_k
        return total
    else:
        return sum((-1) ** (deg % m) * r for deg, r in dist.items())


def sigma_m(dist: Mapping[int, int], m: int) -> int:
    """
    The limit of the partial sums of ``chi_k`` over ``k = 0 mod m``, computed both as
    a stabilized partial sum and by the closed form; the two must agree.
    """
    if m < 0:
        raise ValueError(f"m must be >= 0, not {m}")
    reach = max((abs(d) for d in dist), default=0) + 2 * max(m, 1) + 1
    partial = _sigma_partial(dist, m, reach)
    assert partial == _sigma_partial(dist, m, reach + 2 * max(m, 1))
    closed = _sigma_closed(dist, m)
    assert partial == closed, (dict(dist), m, partial, closed)
    return closed


def nu_rm(dist: Mapping[int, int], r: int, m: int) -> int:
    """Alternating count of chords with degree ``r + l mod 2m`` over ``0 <= l < m``."""
    return sum(
        (-1) ** l * r_d
        for l in range(m)
        for deg, r_d in dist.items()
        if (deg - r - l) % (2 * m) == 0
    )


def format_distribution(dist: Mapping[int, int]) -> str:
    return "{" + ", ".join(f"{k}: {v}" for k, v in sorted(dist.items())) + "}"


def summary(dga: DgaPresentation) -> Dict[str, Any]:
    """Name, rotation number, basepoint count and degree distribution of ``dga``."""
    return {
        "name": dga.name,
        "rotation": dga.rotation,
        "num_generators": len(dga.chords),
        "num_basepoints": dga.num_basepoints,
        "degree_distribution": degree_distribution(dga),
    }
