"""Compare the brute-force interleaving search with barcode matching on random small modules.

    python3 scripts/isometry_benchmark.py --pairs 200 --max-delta 3 --field 2

Prints one row per quiver and delta with the number of interleaved pairs and
any disagreements; exits non-zero if a disagreement is found.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from dataclasses import asdict, dataclass, field
from typing import List

from circpers import geom
from circpers.barcode import barcode, brute_force_interleaved, delta_matched
from circpers.exactnum import Field, Matrix, Poly
from circpers.linrep import Representation, direct_sum
from circpers.quiver import Quiver

QUIVERS = {
    "A12": Quiver.cycle([(2, 1), (3, 2), (3, 1)]),
    "A22": Quiver.cycle([(2, 1), (2, 3), (4, 3), (4, 1)]),
    "kronecker": Quiver.kronecker(),
}


@dataclass
class BenchConfig:
    pairs: int = 200
    max_delta: int = 3
    prime: int = 2
    max_total_dim: int = 6
    seed: int = 0
    quivers: List[str] = field(default_factory=lambda: ["A12", "A22"])


def random_module(q: Quiver, fld: Field, rng: random.Random, cap: int) -> Representation:
    if rng.random() < 0.4:
        while True:
            d = [rng.randint(0, 2) for _ in q.vertices]
            if 0 < sum(d) <= cap:
                break
        maps = [[[fld.random(rng) for _ in range(d[s - 1])] for _ in range(d[t - 1])] for s, t in q.arrows]
        return Representation.from_lists(q, fld, d, maps)
    parts, total = [], 0
    for _ in range(rng.randint(1, 3)):
        if rng.random() < 0.2:
            g = geom.BandObj(Poly.linear(fld, rng.choice(fld.nonzero_elements())), rng.randint(1, 2))
        else:
            i = rng.randrange(q.n_vertices)
            g = geom.cover(q).from_interval(i, i + rng.randint(0, q.n_vertices))
        m = geom.canonical_module(q, fld, g)
        if total + m.total_dim <= cap:
            parts.append(m)
            total += m.total_dim
    if not parts:
        return random_module(q, fld, rng, cap)
    m = direct_sum(parts, q, fld)
    bases = []
    for d in m.dims:
        while True:
            b = Matrix(fld, d, d, [[fld.random(rng) for _ in range(d)] for _ in range(d)])
            if b.is_invertible():
                bases.append(b)
                break
    return m.change_basis(bases)


def run(cfg: BenchConfig) -> dict:
    fld = Field.prime(cfg.prime)
    rng = random.Random(cfg.seed)
    rows = []
    t0 = time.perf_counter()
    for name in cfg.quivers:
        q = QUIVERS[name]
        counts = [[0, 0] for _ in range(cfg.max_delta + 1)]
        for _ in range(cfg.pairs):
            m = random_module(q, fld, rng, cfg.max_total_dim)
            n = random_module(q, fld, rng, cfg.max_total_dim)
            bm, bn = barcode(m), barcode(n)
            for delta in range(cfg.max_delta + 1):
                got = brute_force_interleaved(m, n, delta)
                counts[delta][0] += got
                counts[delta][1] += got != delta_matched(bm, bn, delta)
        for delta, (pos, bad) in enumerate(counts):
            rows.append({"quiver": name, "delta": delta, "interleaved": pos, "disagreements": bad})
    return {"config": asdict(cfg), "rows": rows, "seconds": round(time.perf_counter() - t0, 1)}


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--pairs", type=int, default=200)
    ap.add_argument("--max-delta", type=int, default=3)
    ap.add_argument("--field", type=int, default=2, help="prime p for F_p")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--quivers", nargs="+", default=["A12", "A22"], choices=sorted(QUIVERS))
    ap.add_argument("--json", default=None, help="also write the results here")
    args = ap.parse_args()
    cfg = BenchConfig(args.pairs, args.max_delta, args.field, seed=args.seed, quivers=args.quivers)
    res = run(cfg)
    print(f"{'quiver':<10} {'delta':>5} {'interleaved':>12} {'disagree':>9}")
    for r in res["rows"]:
        print(f"{r['quiver']:<10} {r['delta']:>5} {r['interleaved']:>12} {r['disagreements']:>9}")
    print(f"{res['seconds']}s")
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            json.dump(res, fh, indent=2)
    return 1 if any(r["disagreements"] for r in res["rows"]) else 0


if __name__ == "__main__":
    sys.exit(main())
