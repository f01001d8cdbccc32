from __future__ import annotations

from replab.homfly import KnotMeta
from replab.knotlib import base
from replab.ncdga import DgaPresentation, Generator, NcPoly

_KNOT_INFO = {
    "name": "unknot",
    "meta": {
        "description": (
            "Standard Legendrian unknot with tb = -1 and r = 0: a single Reeb chord b "
            "of degree 1 and one basepoint t."
        ),
        "tb": -1,
        "rotation": 0,
        "citation": "Single-chord unknot, db = t + 1.",
    },
    "fname": "unknot.dga",
}


class Unknot(base.Knot):

    def __init__(self):
        super().__init__(_KNOT_INFO["name"], _KNOT_INFO["meta"], _KNOT_INFO["fname"])

    def build(self) -> base.KnotRecord:
        dga = DgaPresentation(
            [Generator("b", 1), Generator("t", 0, True)],
            {"b": NcPoly.gen("t") + 1},
            rotation=self.meta["rotation"],
            name=self.name,
        )
        meta = KnotMeta(tb=self.meta["tb"], rotation=dga.rotation)
        return base.KnotRecord(dga, meta, self.meta["citation"])
