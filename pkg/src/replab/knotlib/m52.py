from __future__ import annotations

from replab.homfly import KnotMeta
from replab.knotlib import base
from replab.ncdga import DgaPresentation, Generator, NcPoly

_KNOT_INFO = {
    "name": "m52",
    "meta": {
        "description": (
            "Legendrian mirror of the 5_2 knot with tb = 1 and r = 0: chords b (degree "
            "-2), c1, c2, c3 (degree 0), e1 .. e4 (degree 1), a (degree 2), and one "
            "basepoint t."
        ),
        "tb": 1,
        "rotation": 0,
        "citation": (
            "m(5_2), de1 = t - c3(1 + ba), de2 = 1 + (1 + ab)c1, de3 = 1 + c1c2, "
            "de4 = 1 + c2c3."
        ),
    },
    "fname": "m52.dga",
}


class M52(base.Knot):

    def __init__(self):
        super().__init__(_KNOT_INFO["name"], _KNOT_INFO["meta"], _KNOT_INFO["fname"])

    def build(self) -> base.KnotRecord:
        a, b, t = NcPoly.gen("a"), NcPoly.gen("b"), NcPoly.gen("t")
        c1, c2, c3 = (NcPoly.gen(f"c{i}") for i in (1, 2, 3))
        generators = [Generator("b", -2)]
        generators += [Generator(f"c{i}", 0) for i in (1, 2, 3)]
        generators += [Generator(f"e{i}", 1) for i in (1, 2, 3, 4)]
        generators += [Generator("a", 2), Generator("t", 0, True)]
        # stored expanded: de1 = t - c3 - c3*b*a
        diff = {
            "e1": t - c3 - c3 * b * a,
            "e2": 1 + c1 + a * b * c1,
            "e3": 1 + c1 * c2,
            "e4": 1 + c2 * c3,
        }
        dga = DgaPresentation(
            generators, diff, rotation=self.meta["rotation"], name=self.name
        )
        meta = KnotMeta(tb=self.meta["tb"], rotation=dga.rotation)
        return base.KnotRecord(dga, meta, self.meta["citation"])
