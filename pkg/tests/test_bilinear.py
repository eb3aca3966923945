import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from circpers.bilinear import BilinearSystem
from circpers.errors import ResourceBound


def random_system(rng, n_vars, n_eqs):
    eqs = []
    for _ in range(n_eqs):
        mons = [(rng.randrange(n_vars), rng.randrange(n_vars)) for _ in range(rng.randint(1, 4))]
        eqs.append((mons, rng.randint(0, 1)))
    return eqs


def exhaustive(n_vars, eqs):
    sys_ = BilinearSystem(n_vars, eqs)
    for bits in itertools.product((0, 1), repeat=n_vars):
        if sys_.check(bits):
            return True
    return False


@given(st.integers(0, 100_000), st.integers(1, 9), st.integers(1, 12))
@settings(max_examples=150, deadline=None)
def test_search_is_complete_and_sound(seed, n_vars, n_eqs):
    rng = random.Random(seed)
    eqs = random_system(rng, n_vars, n_eqs)
    sys_ = BilinearSystem(n_vars, eqs)
    sol = sys_.solve()
    assert (sol is not None) == exhaustive(n_vars, eqs)
    if sol is not None:
        assert sys_.check(sol)


def test_repeated_monomials_cancel():
    s = BilinearSystem(2, [([(0, 1), (1, 0)], 1)])
    assert s.solve() is None


def test_forced_product():
    s = BilinearSystem(3, [([(0, 1)], 1), ([(1, 2)], 0)])
    x = s.solve()
    assert x[0] == x[1] == 1 and x[2] == 0


def test_node_cap():
    # two quadratic terms cannot be resolved by propagation alone
    s = BilinearSystem(4, [([(0, 1), (2, 3)], 1)])
    with pytest.raises(ResourceBound):
        s.solve(node_cap=1)
    assert s.check(s.solve())
