import pytest

from replab import gf, knotlib
from replab.braid import BraidWord
from replab.homfly import KnotMeta
from replab.knotlib import KnotRecord
from replab.ncdga import DgaPresentation, Generator, NcPoly
from replab.satellite import build_satellite


@pytest.fixture(scope="session")
def f2():
    return gf.field_make(2)


@pytest.fixture(scope="session")
def f3():
    return gf.field_make(3)


@pytest.fixture(scope="session")
def f4():
    return gf.field_make(4)


@pytest.fixture(scope="session")
def unknot():
    return knotlib.builtin("unknot").dga


@pytest.fixture(scope="session")
def trefoil():
    return knotlib.builtin("trefoil").dga


@pytest.fixture(scope="session")
def m52():
    return knotlib.builtin("m52").dga


@pytest.fixture(scope="session")
def a2():
    """The one-crossing braid on two strands."""
    return BraidWord(2, [1])


@pytest.fixture(scope="session")
def trefoil_sat(trefoil, a2):
    return build_satellite(trefoil, a2, (0, 0))


def make_random_record(rng, index=0):
    """
    A valid presentation built from cycles and cancelling pairs: each ``a_j`` has
    ``d a_j = +-b_j + c w`` with ``w`` a word in generators whose differential is 0.
    """
    cycles = [Generator(f"z{i}", rng.randint(-2, 3)) for i in range(rng.randint(1, 3))]
    basepoints = [
        Generator(f"t{i}", rng.choice((0, 0, 2)), True)
        for i in range(rng.randint(1, 3))
    ]
    degrees = {g.name: g.degree for g in cycles + basepoints}
    letters = [(g.name, 1) for g in cycles]
    letters += [(t.name, e) for t in basepoints for e in (1, -1)]
    generators = cycles + basepoints
    diff = {}
    for j in range(rng.randint(1, 4)):
        word = [rng.choice(letters) for _ in range(rng.randint(1, 3))]
        tail = NcPoly.word(*word, coeff=rng.choice((1, -1, 2, -3)))
        degree = min(tail.word_degrees(degrees))
        b = Generator(f"b{j}", degree)
        a = Generator(f"a{j}", degree + 1)
        generators += [a, b]
        degrees.update({a.name: a.degree, b.name: b.degree})
        diff[a.name] = rng.choice((1, -1)) * NcPoly.gen(b.name) + tail
        letters.append((b.name, 1))
    names = [t.name for t in basepoints]
    rng.shuffle(names)
    cut = rng.randint(1, len(names))
    components = [c for c in (names[:cut], names[cut:]) if c]
    dga = DgaPresentation(
        generators,
        diff,
        rotation=rng.choice((0, 1, -1)),
        components=components,
        name=f"random{index}",
    )
    meta = KnotMeta(tb=rng.choice((None, -1, 3)), rotation=dga.rotation)
    return KnotRecord(dga, meta, rng.choice(("", "generated")))


@pytest.fixture
def random_record():
    return make_random_record
