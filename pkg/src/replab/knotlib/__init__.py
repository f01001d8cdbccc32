"""
Built-in Legendrian knot DGAs and the ``.dga`` text format.
"""
from typing import Dict, List

from .base import Knot, KnotRecord, load_dga, parse_dga, parse_poly_terms, serialize
from .m52 import M52
from .trefoil import Trefoil
from .unknot import Unknot

from replab.errors import ParseError

_KNOTS: Dict[str, Knot] = {k.name: k for k in (Unknot(), Trefoil(), M52())}


def names() -> List[str]:
    """Names of the built-in knots."""
    return list(_KNOTS)


def get_knot(name: str) -> Knot:
    try:
        return _KNOTS[name]
    except KeyError:
        raise ParseError(f"unknown knot '{name}'; built-ins are {names()}")


def builtin(name: str) -> KnotRecord:
    """The built-in knot ``name`` as a :class:`KnotRecord`."""
    return get_knot(name).build()
