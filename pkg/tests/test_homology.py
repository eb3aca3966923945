import json
import random

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from circpers import geom
from circpers.errors import InputError
from circpers.exactnum import Poly
from circpers.homology import (SimplicialComplex, SimplicialMap, ZigzagDiagram, boundary_matrix, homology_basis,
                               induced_map, levelset_representation)
from circpers.linrep import decompose

from helpers import DATA, F2, F3, Q

CIRCLE = SimplicialComplex.from_maximal([(0, 1), (1, 2), (0, 2)])
SPHERE = SimplicialComplex.from_maximal([(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)])


def betti(k_cx, fld):
    return [homology_basis(k_cx, k, fld)[0] for k in range(k_cx.max_dim + 1)]


@pytest.mark.parametrize("fld", [Q, F2, F3])
def test_betti_numbers(fld):
    assert betti(CIRCLE, fld) == [1, 1]
    two = SimplicialComplex.from_maximal([(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
    assert betti(two, fld) == [2, 2]
    assert betti(SPHERE, fld) == [1, 0, 1]


def test_boundary_squares_to_zero():
    for fld in (Q, F3):
        d1, d2 = boundary_matrix(SPHERE, 1, fld), boundary_matrix(SPHERE, 2, fld)
        assert (d1 @ d2).is_zero()


@given(st.integers(0, 100_000))
@settings(max_examples=60, deadline=None)
def test_h0_counts_components(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 8)
    edges = {tuple(sorted(rng.sample(range(n), 2))) for _ in range(rng.randint(0, n)) if n > 1}
    k_cx = SimplicialComplex.from_maximal([(v,) for v in range(n)] + list(edges))
    g = nx.Graph()
    g.add_nodes_from(range(n))
    g.add_edges_from(edges)
    assert homology_basis(k_cx, 0, Q)[0] == nx.number_connected_components(g)
    # graphs: b1 = E - V + components
    assert homology_basis(k_cx, 1, F2)[0] == len(edges) - n + nx.number_connected_components(g)


def test_missing_face_rejected():
    with pytest.raises(InputError):
        SimplicialComplex(frozenset({(0, 1)}))


def test_induced_map_of_rotation_and_reflection():
    rot = SimplicialMap(CIRCLE, CIRCLE, {0: 1, 1: 2, 2: 0})
    refl = SimplicialMap(CIRCLE, CIRCLE, {0: 0, 1: 2, 2: 1})
    assert induced_map(rot, 1, Q).flatten() == [1]
    assert induced_map(refl, 1, Q).flatten() == [-1]
    assert induced_map(refl, 0, Q).flatten() == [1]


def test_inclusion_of_circle_into_disc_kills_h1():
    disc = SimplicialComplex.from_maximal([(0, 1, 2)])
    f = SimplicialMap(CIRCLE, disc, {0: 0, 1: 1, 2: 2})
    assert induced_map(f, 1, Q).nrows == 0


def test_collapsing_map_rejected():
    with pytest.raises(InputError):
        SimplicialMap(CIRCLE, CIRCLE, {0: 0, 1: 0, 2: 1})


def test_diagram_record_round_trip():
    doc = json.loads((DATA / "fig8_left_levelset.json").read_text())
    d = ZigzagDiagram.from_record(doc["diagram"])
    assert ZigzagDiagram.from_record(d.to_record()) == d
    with pytest.raises(InputError):
        ZigzagDiagram.from_record({"singular": []})


def _winding(swap):
    pts = SimplicialComplex.from_maximal([(0,), (1,)])
    b = {0: 1, 1: 0} if swap else {0: 0, 1: 1}
    return ZigzagDiagram((pts,), (pts,), ({0: 0, 1: 1},), (b,))


def test_winding_level_sets_give_bands():
    left = decompose(levelset_representation(_winding(False), 0, Q))
    right = decompose(levelset_representation(_winding(True), 0, Q))
    x_minus, x_plus = Poly.linear(Q, 1), Poly.linear(Q, -1)
    assert [(s.label, s.multiplicity) for s in left.summands] == [(geom.BandObj(x_minus, 1), 2)]
    assert sorted(str(s.label) for s in right.summands) == sorted(
        str(geom.BandObj(p, 1)) for p in (x_minus, x_plus))


def test_levelset_quiver_has_sink_singular_fibers():
    q = _winding(False).quiver()
    assert (q.p, q.q) == (1, 1)
    assert all(t % 2 == 0 for _, t in q.arrows)


def _random_complex(rng, n):
    tris = [tuple(sorted(rng.sample(range(n), 3))) for _ in range(rng.randint(0, 3))]
    edges = [tuple(sorted(rng.sample(range(n), 2))) for _ in range(rng.randint(0, n))]
    return SimplicialComplex.from_maximal([(v,) for v in range(n)] + edges + tris)


@given(st.integers(0, 100_000))
@settings(max_examples=60, deadline=None)
def test_euler_characteristic(seed):
    rng = random.Random(seed)
    k_cx = _random_complex(rng, rng.randint(3, 7))
    fld = rng.choice([Q, F2, F3])
    dims = range(k_cx.max_dim + 1)
    assert sum((-1) ** k * homology_basis(k_cx, k, fld)[0] for k in dims) == \
        sum((-1) ** k * len(k_cx.of_dim(k)) for k in dims)


@given(st.integers(0, 100_000))
@settings(max_examples=60, deadline=None)
def test_induced_maps_compose_along_nested_inclusions(seed):
    rng = random.Random(seed)
    big = _random_complex(rng, rng.randint(3, 7))
    # drop a few maximal simplices twice to get small <= mid <= big

    def shrink(k_cx):
        keep = [s for s in k_cx.maximal() if len(s) == 1 or rng.random() < 0.7]
        return SimplicialComplex.from_maximal(keep + [(v,) for v in k_cx.vertices()])
    mid = shrink(big)
    small = shrink(mid)
    fld = rng.choice([Q, F3])
    f = SimplicialMap(small, mid, {v: v for v in small.vertices()})
    g = SimplicialMap(mid, big, {v: v for v in mid.vertices()})
    h = SimplicialMap(small, big, {v: v for v in small.vertices()})
    for k in range(2):
        assert induced_map(g, k, fld) @ induced_map(f, k, fld) == induced_map(h, k, fld)
