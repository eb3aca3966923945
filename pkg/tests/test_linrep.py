import random
from collections import Counter

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from circpers import geom
from circpers.errors import DimensionError, Incompatible
from circpers.exactnum import Matrix
from circpers.linrep import (ExtSpace, Morphism, Representation, ar_translate, decompose, direct_sum,
                             hom_space, injective, is_isomorphic, projective)
from circpers.quiver import euler_form

from helpers import (A12, A22, A4, CYCLES, F2, F3, KRONECKER, Q, random_band, random_indecomposable, random_rep,
                     scramble)

seeds = st.integers(0, 100_000)


def coxeter(q):
    """Phi with dim(tau M) = Phi dim(M), from <x, y> = -<y, Phi x>."""
    n = q.n_vertices
    e = sympy.Matrix(n, n, lambda i, j: euler_form(q, [int(k == i) for k in range(n)], [int(k == j) for k in range(n)]))
    return -e.inv() * e.T


def test_from_lists_checks_shapes():
    with pytest.raises(DimensionError):
        Representation.from_lists(KRONECKER, Q, [1, 2], [[[1]], [[1]]])


def test_dict_round_trip():
    rng = random.Random(3)
    m = random_rep(A22, Q, rng)
    assert Representation.from_dict(A22, Q, m.to_dict()) == m


def test_morphism_composition_checks_dims():
    p1, p2 = projective(KRONECKER, Q, 1), projective(KRONECKER, Q, 2)
    with pytest.raises(DimensionError):
        Morphism.identity(p1) @ Morphism.identity(p2)


@pytest.mark.parametrize("q", CYCLES + [A4])
def test_yoneda_dimensions(q):
    rng = random.Random(11)
    for _ in range(6):
        m = random_rep(q, F3, rng)
        for x in q.vertices:
            assert len(hom_space(projective(q, F3, x), m)) == m.dim(x)
            assert len(hom_space(m, injective(q, F3, x))) == m.dim(x)


@given(seeds)
@settings(max_examples=40, deadline=None)
def test_hom_basis_commutes_and_euler_identity(seed):
    rng = random.Random(seed)
    q = rng.choice(CYCLES)
    m, n = random_rep(q, F3, rng, cap=5), random_rep(q, F3, rng, cap=5)
    basis = hom_space(m, n)
    assert all(f.commutes() for f in basis)
    assert len(basis) - ExtSpace(m, n).dim == euler_form(q, m.dims, n.dims)


@given(seeds)
@settings(max_examples=40, deadline=None)
def test_decompose_certificate_and_invariance(seed):
    rng = random.Random(seed)
    q = rng.choice(CYCLES)
    fld = rng.choice([F2, F3, Q])
    m = random_rep(q, fld, rng)
    d = decompose(m, seed)
    assert d.verify()
    assert sum(s.multiplicity * s.module.total_dim for s in d.summands) == m.total_dim
    d2 = decompose(scramble(m, rng), seed + 1)
    assert Counter({s.label: s.multiplicity for s in d.summands}) == Counter({s.label: s.multiplicity for s in d2.summands})


@given(seeds)
@settings(max_examples=30, deadline=None)
def test_decompose_recovers_planted_summands(seed):
    rng = random.Random(seed)
    q = rng.choice(CYCLES)
    labels = [random_indecomposable(q, F3, rng) for _ in range(rng.randint(1, 3))]
    m = scramble(direct_sum([geom.canonical_module(q, F3, g) for g in labels]), rng)
    d = decompose(m)
    assert Counter(s.label for s in d.summands for _ in range(s.multiplicity)) == Counter(labels)


@given(seeds)
@settings(max_examples=30, deadline=None)
def test_ar_translate_follows_coxeter(seed):
    rng = random.Random(seed)
    q = rng.choice(CYCLES)
    g = random_indecomposable(q, F3, rng)
    m = geom.canonical_module(q, F3, g)
    t = ar_translate(m, "Tau")
    if t.total_dim:
        assert list(coxeter(q) * sympy.Matrix(m.dims)) == list(t.dims)
    ti = ar_translate(m, "TauInverse")
    if ti.total_dim:
        assert list(coxeter(q) * sympy.Matrix(ti.dims)) == list(m.dims)


def test_tau_round_trip_on_a4_projectives():
    # P_1 = [1,5) is also injective
    assert ar_translate(projective(A4, Q, 1), "TauInverse").total_dim == 0
    for x in range(2, 5):
        p = projective(A4, Q, x)
        back = ar_translate(ar_translate(p, "TauInverse"), "Tau")
        assert is_isomorphic(back, p) is not None


def test_is_isomorphic_and_incompatible():
    m = geom.string_module(A12, F3, geom.cover(A12).from_interval(0, 4))
    iso = is_isomorphic(m, scramble(m, random.Random(1)))
    assert iso is not None and iso.is_isomorphism()
    assert is_isomorphic(m, projective(A12, F3, 1)) is None
    with pytest.raises(Incompatible):
        hom_space(m, projective(A22, F3, 1))


def test_zero_representation_decomposes_to_nothing():
    d = decompose(Representation.zero(A22, Q))
    assert d.count == 0 and d.verify()


def test_matrix_entries_stay_in_field():
    m = Representation.from_lists(KRONECKER, F3, [1, 1], [[[4]], [[5]]])
    assert m.maps[0] == Matrix(F3, 1, 1, [[1]])


@given(seeds)
@settings(max_examples=200, deadline=None)
def test_decompose_certificate_at_scale(seed):
    rng = random.Random(seed)
    q = rng.choice([A12, A22])
    fld = rng.choice([F2, F3])
    m = random_rep(q, fld, rng, cap=5 * q.n_vertices, max_dim=5)
    d = decompose(m, seed)
    assert d.verify()
    dims = [0] * q.n_vertices
    for s in d.summands:
        dims = [a + s.multiplicity * b for a, b in zip(dims, s.module.dims)]
    assert tuple(dims) == m.dims


def _random_regular(q, fld, rng):
    if rng.random() < 0.3:
        return geom.canonical_module(q, fld, random_band(fld, rng, max_l=2))
    tube = rng.choice(list(geom.Tube))
    r = q.p if tube is geom.Tube.RANK_P else q.q
    b = rng.randrange(r)
    return geom.canonical_module(q, fld, geom.make_tube(q, tube, b + rng.randint(1, 4), b))


@given(seeds)
@settings(max_examples=40, deadline=None)
def test_translate_preserves_hom_between_regulars(seed):
    rng = random.Random(seed)
    q = rng.choice(CYCLES)
    m, n = _random_regular(q, F3, rng), _random_regular(q, F3, rng)
    tm, tn = ar_translate(m, "TauInverse"), ar_translate(n, "TauInverse")
    assert len(hom_space(tm, tn)) == len(hom_space(m, n))


@given(seeds)
@settings(max_examples=50, deadline=None)
def test_translate_round_trips(seed):
    rng = random.Random(seed)
    q = rng.choice(CYCLES)
    while True:
        g = random_indecomposable(q, F3, rng)
        m = scramble(geom.canonical_module(q, F3, g), rng)
        down, up = ar_translate(m, "Tau"), ar_translate(m, "TauInverse")
        if down.total_dim and up.total_dim:
            break
    assert is_isomorphic(ar_translate(up, "Tau"), m) is not None
    assert is_isomorphic(ar_translate(down, "TauInverse"), m) is not None
