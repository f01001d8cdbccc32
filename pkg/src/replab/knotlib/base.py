from __future__ import annotations

import logging
import pathlib
import re
from typing import Any, Dict, List, NamedTuple, Optional, Tuple

from replab import utils
from replab.errors import DgaError, ParseError
from replab.homfly import KnotMeta
from replab.ncdga import DgaPresentation, Generator, NcPoly, check_dga

LOGGER = logging.getLogger(__name__)

_RE_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_]\w*)(?:\^(-?1))?|([+\-*]))")


class KnotRecord(NamedTuple):
    """A DGA presentation with its classical invariants and provenance."""

    dga: DgaPresentation
    meta: KnotMeta
    citation: str = ""

    @property
    def name(self) -> str:
        return self.dga.name


class Knot:
    """
    Base class for built-in knots.

    Args:
        name
        meta
        fname: Name of the shipped ``.dga`` file.

    Attributes:
        name
        meta
        fname
    """

    def __init__(self, name: str, meta: Dict[str, Any], fname: str):
        self.name = name
        self.meta = meta
        self.fname = fname

    def __repr__(self):
        return f"Knot('{self.name}')"

    @property
    def info(self) -> Dict[str, Any]:
        """Name, metadata, and data file for the knot."""
        return {"name": self.name, **self.meta, "fname": self.fname}

    def build(self) -> KnotRecord:
        """Construct the presentation in code."""
        raise NotImplementedError

    def load(self, data_dir: Optional[str | pathlib.Path] = None) -> KnotRecord:
        """Load the presentation from its ``.dga`` file."""
        return load_dga(self.fname, data_dir=data_dir)


def parse_poly_terms(text: str, where: str = "") -> NcPoly:
    """
    Parse a signed sum of terms such as ``2*a1*t^-1*a3 - b``. Names are not checked
    here; ``0`` or an empty string is the zero polynomial.
    """
    terms: List[Tuple[Tuple[Tuple[str, int], ...], int]] = []
    sign, coeff, word = 1, 1, []
    expect_factor = True
    pos = 0
    source = text.strip()
    while pos < len(source):
        match = _RE_TOKEN.match(source, pos)
        if not match:
            raise ParseError(f"unexpected text '{source[pos:]}' {where}".strip())
        pos = match.end()
        number, name, exp, op = match.groups()
        if op in ("+", "-"):
            if not expect_factor:
                terms.append((tuple(word), sign * coeff))
                sign, coeff, word = 1, 1, []
            elif word or coeff != 1:
                raise ParseError(f"dangling operator '{op}' {where}".strip())
            sign = sign * (-1 if op == "-" else 1)
            expect_factor = True
        elif op == "*":
            if expect_factor:
                raise ParseError(f"dangling '*' {where}".strip())
            expect_factor = True
        else:
            if not expect_factor:
                token = match.group().strip()
                raise ParseError(f"missing operator before '{token}' {where}".strip())
            if number is not None:
                coeff *= int(number)
            else:
                word.append((name, int(exp) if exp else 1))
            expect_factor = False
    if expect_factor:
        if terms or word or sign != 1:
            raise ParseError(f"incomplete expression '{source}' {where}".strip())
        return NcPoly()
    terms.append((tuple(word), sign * coeff))
    return NcPoly(terms)


def parse_dga(text: str, name: Optional[str] = None) -> KnotRecord:
    """
    Parse the ``.dga`` text format: one directive per line, ``#`` comments. A
    ``knot`` line names the presentation; without one, ``name`` is used.

    .. code-block:: text

        knot trefoil
        rot 0
        tb 1
        gen a1 0
        inv t 0
        component t initial t
        d a4 = t^-1 + a1 + a3 + a1*a2*a3
        cite <free text>

    Raises:
        ParseError: on malformed lines, a second differential for one generator,
            or a missing name.
        DgaError: on unknown generators, odd-degree basepoints, or a differential
            that does not have degree -1 or square to zero.
    """
    knot_name = ""
    rotation, tb = 0, None
    citation = []
    generators: List[Generator] = []
    components: List[List[str]] = []
    diff_text: Dict[str, Tuple[str, int]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        keyword, _, rest = line.partition(" ")
        rest = rest.strip()
        where = f"(line {lineno})"
        try:
            if keyword == "knot":
                knot_name = rest
            elif keyword == "rot":
                rotation = int(rest)
            elif keyword == "tb":
                tb = int(rest)
            elif keyword == "cite":
                citation.append(rest)
            elif keyword in ("gen", "inv"):
                gname, degree = rest.split()
                generators.append(Generator(gname, int(degree), keyword == "inv"))
            elif keyword == "component":
                names, _, initial = rest.partition(" initial ")
                bps = names.split()
                initial = initial.strip()
                if initial not in bps:
                    raise ParseError(
                        f"initial basepoint '{initial}' not in component {where}"
                    )
                start = bps.index(initial)
                components.append(bps[start:] + bps[:start])
            elif keyword == "d":
                gname, eq, poly = rest.partition("=")
                if not eq:
                    raise ParseError(f"missing '=' in differential {where}")
                gname = gname.strip()
                if gname in diff_text:
                    raise ParseError(f"second differential for '{gname}' {where}")
                diff_text[gname] = (poly, lineno)
            else:
                raise ParseError(f"unknown directive '{keyword}' {where}")
        except ValueError as err:
            if isinstance(err, ParseError):
                raise
            raise ParseError(f"malformed line '{raw.strip()}' {where}: {err}")
    name = knot_name or name
    if not name:
        raise ParseError("missing 'knot' line")
    diff = {
        gname: parse_poly_terms(poly, where=f"(line {lineno})")
        for gname, (poly, lineno) in diff_text.items()
    }
    dga = DgaPresentation(
        generators,
        diff,
        rotation=rotation,
        components=components or None,
        name=name,
    )
    report = check_dga(dga)
    if not report["valid"]:
        raise DgaError(f"invalid presentation '{name}': {report['failures']}")
    return KnotRecord(dga, KnotMeta(tb=tb, rotation=rotation), " ".join(citation))


def serialize(record: KnotRecord) -> str:
    """Text form of ``record`` that :func:`parse_dga` reads back."""
    dga = record.dga
    lines = [f"knot {dga.name}", f"rot {dga.rotation}"]
    if record.meta.tb is not None:
        lines.append(f"tb {record.meta.tb}")
    if record.citation:
        lines.append(f"cite {record.citation}")
    for g in dga.generators:
        lines.append(f"{'inv' if g.invertible else 'gen'} {g.name} {g.degree}")
    for c in dga.components:
        lines.append(f"component {' '.join(c.basepoints)} initial {c.initial}")
    for g in dga.chords:
        lines.append(f"d {g.name} = {dga.d(g.name)}")
    return "\n".join(lines) + "\n"


def load_dga(
    fname: str | pathlib.Path, data_dir: Optional[str | pathlib.Path] = None
) -> KnotRecord:
    """Load a ``.dga`` file, resolved against ``data_dir`` or the shipped data."""
    fpath = utils.get_fpath(data_dir, fname)
    if not fpath.exists():
        raise ParseError(f"no such DGA file: {fpath}")
    record = parse_dga(fpath.read_text(encoding="utf-8"), name=fpath.stem)
    LOGGER.debug("loaded %s from %s", record.name, fpath)
    return record
