"""Acceptance suite: one PASS/FAIL line per criterion.

Run with ``pytest tests/test_acceptance.py`` (lines appear in the terminal summary)
or directly with ``python tests/test_acceptance.py``.
"""

import itertools
import random
import sys
import time
from collections import Counter
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent))

from circpers import geom  # noqa: E402
from circpers.barcode import (barcode, bottleneck, brute_force_interleaved, delta_matched,  # noqa: E402
                              finiteness_report)
from circpers.cli import load_document  # noqa: E402
from circpers.errors import LeavesHeart  # noqa: E402
from circpers.exactnum import Matrix, Poly  # noqa: E402
from circpers.geom import TRIVIAL, BandObj, BridgeArc, IntervalA, Tag, Tube  # noqa: E402
from circpers.linrep import (Representation, ar_translate, combine, decompose, direct_sum, hom_space,  # noqa: E402
                             is_isomorphic, projective)

from helpers import (A12, A22, A32, A4, CYCLES, DATA, F2, F3, Q, random_barcode, random_indecomposable,  # noqa: E402
                     random_rep, random_regular_in_tube, scramble, tube_objects)

try:
    from conftest import ACCEPTANCE_LINES
except ImportError:  # pragma: no cover
    ACCEPTANCE_LINES = []


def report(n, ok, detail):
    line = f"{'PASS' if ok else 'FAIL'} criterion {n}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def module(name, field=None):
    return load_document(str(DATA / f"{name}.json"), field).representation


def labels(m):
    return Counter({s.label: s.multiplicity for s in decompose(m).summands})


# ---------------------------------------------------------------------------


def test_criterion_01_winding():
    t0 = time.perf_counter()
    left, right = module("winding_left"), module("winding_right")
    x_minus, x_plus = Poly.linear(Q, 1), Poly.linear(Q, -1)
    ok_left = labels(left) == Counter({BandObj(x_minus, 1): 2})
    ok_right = labels(right) == Counter({BandObj(x_minus, 1): 1, BandObj(x_plus, 1): 1})
    d = bottleneck(barcode(left), barcode(right))
    l3, r3 = module("winding_left", "F3"), module("winding_right", "F3")
    interleaved = [brute_force_interleaved(l3, r3, k) for k in (0, 1)]
    elapsed = time.perf_counter() - t0
    ok = ok_left and ok_right and d.value == 1 and interleaved == [False, True] and elapsed < 1.0
    report(1, ok, f"winding bands {ok_left and ok_right}, bottleneck {d}, "
                  f"interleaved at 0/1 {interleaved} over F3, {elapsed:.2f}s")


def test_criterion_02_figure_eight():
    t0 = time.perf_counter()
    left, right = module("fig8_left"), module("fig8_right")
    dl = sorted(s.module.dims for s in decompose(left).summands)
    dr = sorted(s.module.dims for s in decompose(right).summands)
    # vertex order s1, t1, s2, t2, s3, t3
    want_l = sorted([(0, 1, 1, 1, 1, 1), (1, 1, 1, 1, 1, 1)])
    want_r = sorted([(0, 1, 1, 1, 0, 0), (0, 0, 0, 1, 1, 0), (1, 1, 0, 0, 0, 0), (1, 1, 1, 1, 1, 1)])
    d = bottleneck(barcode(left), barcode(right))
    elapsed = time.perf_counter() - t0
    ok = dl == want_l and dr == want_r and not d.is_infinite and elapsed < 2.0
    report(2, ok, f"grids {len(dl)} + {len(dr)} summands match {dl == want_l and dr == want_r}, "
                  f"distance {d}, {elapsed:.2f}s")


def test_criterion_03_infinite_distance():
    t0 = time.perf_counter()
    split, ident = module("split_circle"), module("identity_circle")
    b1, b2 = barcode(split), barcode(ident)
    bridges = [g for g in b1.units() if isinstance(g, BridgeArc)]
    d = bottleneck(b1, b2)
    reason = finiteness_report(b1, b2)
    elapsed = time.perf_counter() - t0
    ok = (len(b1.units()) == 2 and len(bridges) == 1 and bridges[0].tag is Tag.PREINJECTIVE
          and d.is_infinite and reason == "preinjective arc counts differ: 1 vs 0" and elapsed < 1.0)
    report(3, ok, f"one preinjective bridge {len(bridges) == 1}, distance {d} ({reason}), {elapsed:.2f}s")


def _small_f2_module(q, rng):
    """Either a random representation or a scrambled sum of small indecomposables."""
    if rng.random() < 0.4:
        return random_rep(q, F2, rng, cap=6, max_dim=2)
    parts, total = [], 0
    for _ in range(rng.randint(1, 3)):
        g = random_indecomposable(q, F2, rng)
        m = geom.canonical_module(q, F2, g)
        if total + m.total_dim <= 6:
            parts.append(m)
            total += m.total_dim
    if not parts:
        return random_rep(q, F2, rng, cap=6, max_dim=2)
    return scramble(direct_sum(parts, q, F2), rng)


def _nearby(q, m, rng):
    """Perturb one summand of m by a few moves, keeping total dim <= 6."""
    ds = decompose(m)
    parts = [s.label for s in ds.summands for _ in range(s.multiplicity)]
    i = rng.randrange(len(parts))
    g = parts[i]
    if not isinstance(g, BandObj):
        h = geom.apply_moves(g, rng.randint(0, 2), rng.randint(0, 2))
        if h is not TRIVIAL and geom.in_heart(q, h):
            parts[i] = h
    mods = [geom.canonical_module(q, F2, g) for g in parts]
    n = direct_sum(mods, q, F2)
    return scramble(n, rng) if n.total_dim <= 6 else m


def test_criterion_04_isometry_spot_check():
    t0 = time.perf_counter()
    rng = random.Random(20240)
    pairs, bad, positives = 0, [], Counter()
    while pairs < 200:
        q = (A12, A22)[pairs % 2]
        m = _small_f2_module(q, rng)
        n = _nearby(q, m, rng) if rng.random() < 0.5 else _small_f2_module(q, rng)
        if m.total_dim > 6 or n.total_dim > 6:
            continue
        pairs += 1
        bm, bn = barcode(m), barcode(n)
        for delta in range(4):
            got = brute_force_interleaved(m, n, delta)
            if got != delta_matched(bm, bn, delta):
                bad.append((pairs, delta))
            positives[delta] += got
    elapsed = time.perf_counter() - t0
    ok = not bad and elapsed < 300
    report(4, ok, f"{pairs} pairs x 4 deltas, {len(bad)} discrepancies, "
                  f"interleaved counts by delta {[positives[d] for d in range(4)]}, {elapsed:.0f}s")


def test_criterion_05_metric():
    rng = random.Random(5)
    violations = 0
    triples = 500
    for _ in range(triples):
        q = rng.choice([A12, A22, A32])
        # shared bridge counts keep most distances finite
        base = [geom.make_bridge(q, Tag.PREPROJECTIVE, 0, rng.randint(-2, 2)) for _ in range(rng.randint(0, 1))]
        a, b, c = (random_barcode(q, rng, 3, bridges=[geom.make_bridge(q, g.tag, g.u, g.v + rng.randint(-1, 1))
                                                      for g in base]) for _ in range(3))
        dab, dba, dbc, dac = bottleneck(a, b), bottleneck(b, a), bottleneck(b, c), bottleneck(a, c)
        if dab != dba or dac.value > dab.value + dbc.value or ((dab.value == 0) != (a == b)):
            violations += 1
        if bottleneck(a, a).value != 0:
            violations += 1
    report(5, violations == 0, f"{triples} triples, {violations} violations")


def test_criterion_06_translate_agreement():
    rng = random.Random(6)
    bad = checked = proj_seen = 0
    for _ in range(120):
        q = rng.choice(CYCLES)
        fld = rng.choice([F2, F3, Q])
        g = random_indecomposable(q, fld, rng)
        m = scramble(geom.canonical_module(q, fld, g), rng)
        c = geom.classify(m)
        t = ar_translate(m, "TauInverse")
        exp = geom.tau_inverse_coord(c)
        if geom.in_heart(q, exp):
            bad += t.total_dim == 0 or geom.classify(t) != exp
        else:
            bad += t.total_dim != 0
        is_proj = any(is_isomorphic(m, projective(q, fld, x)) is not None for x in q.vertices)
        proj_seen += is_proj
        bad += (ar_translate(m, "Tau").total_dim == 0) != is_proj
        checked += 1
    # every projective itself, so the "exactly" direction is exercised
    for q in CYCLES:
        for x in q.vertices:
            bad += ar_translate(projective(q, F3, x), "Tau").total_dim != 0
    report(6, bad == 0, f"{checked} random indecomposables ({proj_seen} projective) plus all projectives, "
                        f"{bad} discrepancies")


def test_criterion_07_lengths_and_closed_form():
    bad = cases = 0
    for q in CYCLES:
        objs = tube_objects(q, 6) + [BandObj(Poly.linear(F3, 1), l) for l in range(1, 7)]
        for g in objs:
            ell = geom.length(g)
            for k1, k2 in itertools.product(range(7), repeat=2):
                cases += 1
                h = geom.apply_moves(g, k1, k2)
                if k1 - k2 < ell:
                    bad += h is TRIVIAL or geom.length(h) != ell - k1 + k2
                else:
                    bad += h is not TRIVIAL
                tk = geom.apply_moves(g, k1, 0)
                if tk is not TRIVIAL:
                    bad += geom.apply_moves(tk, 0, k2) != h
        small = tube_objects(q, 5) + [geom.make_bridge(q, t, u, v) for t in Tag for u in range(q.p)
                                      for v in range(-4, 3)]
        for g, h in itertools.product(small, repeat=2):
            for delta in range(5):
                cases += 1
                bad += geom.delta_equivalent(g, h, delta) != geom.delta_equivalent_bruteforce(g, h, delta)
    report(7, bad == 0, f"{cases} cases over {len(CYCLES)} quivers, {bad} discrepancies")


def test_criterion_08_counting_summands():
    rng = random.Random(8)
    bad = total = 0
    tubes = [(q, t) for q in (A12, A22, A32) for t in Tube if (q.p if t is Tube.RANK_P else q.q) > 1]
    for q, tube in tubes:
        r = q.p if tube is Tube.RANK_P else q.q
        sigma = direct_sum([geom.string_module(q, F3, geom.make_tube(q, tube, b + 1, b)) for b in range(r)], q, F3)
        for _ in range(100):
            m, parts = random_regular_in_tube(q, F3, tube, rng)
            m = scramble(m, rng)
            total += 1
            bad += len(hom_space(sigma, m)) != len(parts) or len(hom_space(m, sigma)) != len(parts)
    report(8, bad == 0, f"{total} regular modules over {len(tubes)} exceptional tubes, {bad} discrepancies")


def _knit(q, fld):
    """Dimension vectors and irreducible maps of the AR quiver, knitted from the projectives."""
    proj = {x: projective(q, fld, x).dims for x in q.vertices}
    order = sorted(q.vertices, key=lambda x: sum(proj[x]))
    nodes, preds, is_proj = [], {}, {}
    for x in order:
        e = tuple(int(v == x) for v in q.vertices)
        rad = tuple(a - b for a, b in zip(proj[x], e))
        nodes.append(proj[x])
        preds[proj[x]] = [proj[y] for y in q.vertices if proj[y] == rad] if any(rad) else []
        is_proj[proj[x]] = True
    tau_inv = {}
    i = 0
    while i < len(nodes):
        x = nodes[i]
        succ = [tau_inv[z] for z in preds[x] if z in tau_inv]
        succ += [p for p in proj.values() if x in preds[p]]
        new = tuple(sum(s[v] for s in succ) - x[v] for v in range(len(x)))
        if succ and all(c >= 0 for c in new) and any(new) and new not in preds:
            tau_inv[x] = new
            nodes.append(new)
            preds[new] = succ
        i += 1
    arrows = {(z, y) for y, ps in preds.items() for z in ps}
    return set(nodes), arrows, tau_inv


def _shift(m):
    """M(1): the module at vertex x+1 moved to vertex x."""
    q, f = m.quiver, m.field
    n = q.n_vertices
    dims = [m.dim(x + 1) if x < n else 0 for x in q.vertices]
    maps = []
    for (s, t) in q.arrows:
        src = q.arrows.index((s + 1, t + 1)) if (s + 1, t + 1) in q.arrows else None
        maps.append(m.maps[src] if src is not None else Matrix.zeros(f, dims[t - 1], dims[s - 1]))
    return Representation(q, f, tuple(dims), tuple(maps))


def test_criterion_09_a4_knitting():
    nodes, arrows, tau_inv = _knit(A4, Q)
    intervals = [IntervalA(a, b) for a in range(1, 5) for b in range(a + 1, 6)]
    dims = {g: geom.canonical_module(A4, Q, g).dims for g in intervals}
    ok_nodes = nodes == set(dims.values()) and len(nodes) == 10
    model = set()
    for g in intervals:
        for move in (geom.s_move, geom.t_move):
            try:
                h = move(g)
            except LeavesHeart:
                continue
            if h is not TRIVIAL:
                model.add((dims[g], dims[h]))
    ok_arrows = arrows == model and len(model) == 12
    ok_tau = all(tau_inv.get(dims[g]) == dims[geom.tau_inverse_coord(g)] for g in intervals if g.a > 1)
    ok_tau = ok_tau and not any(dims[g] in tau_inv for g in intervals if g.a == 1)
    bad_shift = 0
    for g in intervals:
        m = geom.canonical_module(A4, Q, g)
        t = ar_translate(m, "TauInverse")
        if g.a > 1:
            bad_shift += is_isomorphic(_shift(m), t) is None
        else:
            bad_shift += t.total_dim != 0
    ok = ok_nodes and ok_arrows and ok_tau and bad_shift == 0
    report(9, ok, f"{len(nodes)} knitted objects match intervals {ok_nodes}, {len(arrows)} mesh arrows match "
                  f"{ok_arrows}, translate {ok_tau}, M(1) = tau^-1 M failures {bad_shift}")


def _factors(phi, mid):
    """Brute force over F2: phi = h . f for some f: src -> mid, h: mid -> tgt."""
    fs = hom_space(phi.source, mid)
    hs = hom_space(mid, phi.target)
    if not fs or not hs:
        return phi.is_zero()
    for cf in itertools.product((0, 1), repeat=len(fs)):
        f = combine(fs, [F2(c) for c in cf])
        for ch in itertools.product((0, 1), repeat=len(hs)):
            if (combine(hs, [F2(c) for c in ch]) @ f).equals(phi):
                return True
    return False


def test_criterion_10_phi():
    bad = cases = 0
    for q in CYCLES:
        objs = tube_objects(q, 6) + [BandObj(Poly.linear(F2, 1), l) for l in range(1, 7)]
        for g in objs:
            ell = geom.length(g)
            for k1 in range(1, 4):
                a = geom.phi_map(q, F2, g, k1)
                for k2 in range(1, 4):
                    cases += 1
                    b = geom.phi_map(q, F2, geom.tau_power_coord(g, k1), k2)
                    bad += not (b @ a).equals(geom.phi_map(q, F2, g, k1 + k2))
            for delta in range(4):
                cases += 1
                bad += (geom.phi_map(q, F2, g, 2 * delta).rank() == 0) != (ell <= 2 * delta)
    mesh_bad = mesh_cases = 0
    for q in CYCLES:
        for g in tube_objects(q, 4):
            phi = geom.phi_map(q, F2, g, 1)
            for h in (geom.s_move(g), geom.t_move(g)):
                if h is TRIVIAL:
                    continue
                mesh_cases += 1
                mesh_bad += not _factors(phi, geom.canonical_module(q, F2, h))
    ok = bad == 0 and mesh_bad == 0
    report(10, ok, f"{cases} composition/rank cases with {bad} failures, "
                   f"{mesh_cases} mesh factorizations with {mesh_bad} failures")


if __name__ == "__main__":
    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
