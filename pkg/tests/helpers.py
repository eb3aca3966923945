"""Shared generators for the test suite."""

from __future__ import annotations

import json
import random
from pathlib import Path
from typing import List, Optional

from circpers import geom
from circpers.barcode import Barcode
from circpers.exactnum import Field, Matrix, Poly
from circpers.linrep import Representation, direct_sum
from circpers.quiver import Quiver

DATA = Path(__file__).resolve().parent.parent / "data"

Q = Field.rationals()
F2 = Field.prime(2)
F3 = Field.prime(3)
F5 = Field.prime(5)

KRONECKER = Quiver.kronecker()
A12 = Quiver.cycle([(2, 1), (3, 2), (3, 1)])
A22 = Quiver.cycle([(2, 1), (2, 3), (4, 3), (4, 1)])
A22_PATH = Quiver.cycle([(1, 2), (2, 3), (3, 4), (1, 4)])
A32 = Quiver.cycle([(1, 2), (3, 2), (3, 4), (4, 5), (1, 5)])
CYCLES = [KRONECKER, A12, A22, A22_PATH, A32]
A4 = Quiver.equioriented(4)


def load(name: str) -> dict:
    return json.loads((DATA / name).read_text(encoding="utf-8"))


def random_invertible(fld: Field, n: int, rng: random.Random) -> Matrix:
    while True:
        m = Matrix(fld, n, n, [[fld.random(rng) for _ in range(n)] for _ in range(n)])
        if m.is_invertible():
            return m


def scramble(m: Representation, rng: random.Random) -> Representation:
    """Same module in random bases."""
    return m.change_basis([random_invertible(m.field, d, rng) for d in m.dims])


def random_rep(q: Quiver, fld: Field, rng: random.Random, cap: int = 6, max_dim: int = 3) -> Representation:
    while True:
        d = [rng.randint(0, max_dim) for _ in q.vertices]
        if 0 < sum(d) <= cap:
            break
    maps = [[[fld.random(rng) for _ in range(d[s - 1])] for _ in range(d[t - 1])] for s, t in q.arrows]
    return Representation.from_lists(q, fld, d, maps)


def random_string(q: Quiver, rng: random.Random, max_wraps: int = 2) -> geom.GeomObject:
    n = q.n_vertices
    i = rng.randrange(n)
    j = rng.randint(i, i + max_wraps * n)
    return geom.cover(q).from_interval(i, j)


def random_band(fld: Field, rng: random.Random, max_l: int = 3) -> geom.BandObj:
    lam = rng.choice(fld.nonzero_elements()) if fld.p else fld(rng.choice([1, -1, 2, "1/2"]))
    return geom.BandObj(Poly.linear(fld, lam), rng.randint(1, max_l))


def random_indecomposable(q: Quiver, fld: Field, rng: random.Random) -> geom.GeomObject:
    if rng.random() < 0.2:
        return random_band(fld, rng)
    return random_string(q, rng)


def tube_objects(q: Quiver, max_len: int) -> List[geom.TubeArc]:
    out = []
    for tube, r in ((geom.Tube.RANK_P, q.p), (geom.Tube.RANK_Q, q.q)):
        for b in range(r):
            for ell in range(1, max_len + 1):
                out.append(geom.make_tube(q, tube, b + ell, b))
    return out


def random_regular_in_tube(q: Quiver, fld: Field, tube: geom.Tube, rng: random.Random,
                           max_parts: int = 3, max_len: int = 3) -> tuple:
    r = q.p if tube is geom.Tube.RANK_P else q.q
    parts = []
    for _ in range(rng.randint(1, max_parts)):
        b = rng.randrange(r)
        parts.append(geom.make_tube(q, tube, b + rng.randint(1, max_len), b))
    m = direct_sum([geom.string_module(q, fld, g) for g in parts], q, fld)
    return m, parts


def random_object(q: Quiver, rng: random.Random) -> geom.GeomObject:
    kind = rng.random()
    if kind < 0.3:
        return geom.make_bridge(q, rng.choice(list(geom.Tag)), rng.randrange(q.p), rng.randint(-4, 2))
    if kind < 0.75:
        tube = rng.choice(list(geom.Tube))
        r = q.p if tube is geom.Tube.RANK_P else q.q
        b = rng.randrange(r)
        return geom.make_tube(q, tube, b + rng.randint(1, 5), b)
    return geom.BandObj(Poly.linear(F3, rng.choice([1, 2])), rng.randint(1, 4))


def random_barcode(q: Quiver, rng: random.Random, max_units: int = 4, bridges: Optional[list] = None) -> Barcode:
    units = [random_object(q, rng) for _ in range(rng.randint(0, max_units))]
    if bridges is not None:
        units = [g for g in units if not isinstance(g, geom.BridgeArc)] + bridges
    return Barcode(q, [(g, 1) for g in units])
