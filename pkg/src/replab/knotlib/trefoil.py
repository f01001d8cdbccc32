from __future__ import annotations

from replab.homfly import KnotMeta
from replab.knotlib import base
from replab.ncdga import DgaPresentation, Generator, NcPoly

_KNOT_INFO = {
    "name": "trefoil",
    "meta": {
        "description": (
            "Legendrian right-handed trefoil with tb = 1 and r = 0, from its "
            "xy-projection: chords a1, a2, a3 of degree 0, a4, a5 of degree 1, and "
            "one basepoint t."
        ),
        "tb": 1,
        "rotation": 0,
        "citation": (
            "Right-handed trefoil, da4 = t^-1 + a1 + a3 + a1a2a3, "
            "da5 = 1 - a1 - a3 - a3a2a1."
        ),
    },
    "fname": "trefoil.dga",
}


class Trefoil(base.Knot):

    def __init__(self):
        super().__init__(_KNOT_INFO["name"], _KNOT_INFO["meta"], _KNOT_INFO["fname"])

    def build(self) -> base.KnotRecord:
        a1, a2, a3 = (NcPoly.gen(f"a{i}") for i in (1, 2, 3))
        generators = [Generator(f"a{i}", 0) for i in (1, 2, 3)]
        generators += [Generator("a4", 1), Generator("a5", 1), Generator("t", 0, True)]
        diff = {
            "a4": NcPoly.gen("t", -1) + a1 + a3 + a1 * a2 * a3,
            "a5": 1 - a1 - a3 - a3 * a2 * a1,
        }
        dga = DgaPresentation(
            generators, diff, rotation=self.meta["rotation"], name=self.name
        )
        meta = KnotMeta(tb=self.meta["tb"], rotation=dga.rotation)
        return base.KnotRecord(dga, meta, self.meta["citation"])
