"""Barcodes, delta-matchings, bottleneck distance and a brute-force
interleaving oracle."""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple, Union

from . import geom
from .errors import CertificateFailure, DomainError, Incompatible, ResourceBound, Unsupported
from .bilinear import BilinearSystem
from .exactnum import Field, Matrix, Poly, jordan_companion
from .geom import BandObj, BridgeArc, GeomObject, Tag
from .linrep import Morphism, Representation, decompose, direct_sum, hom_space
from .quiver import Quiver

# per-module total dimension cap for the brute-force oracle
ORACLE_DIM_CAP = 8
# largest number of coefficient vectors the oracle will enumerate
ORACLE_ENUM_CAP = 1 << 22
# random candidates tried over F_3 before exhaustive enumeration
ORACLE_SAMPLES = 4096


@dataclass(frozen=True)
class ExtDistance:
    value: Union[int, float]

    @property
    def is_infinite(self) -> bool:
        return self.value == math.inf

    def to_record(self) -> dict:
        return {"value": "infinity" if self.is_infinite else int(self.value)}

    def __str__(self) -> str:
        return "∞" if self.is_infinite else str(int(self.value))


INFINITE = ExtDistance(math.inf)


@dataclass
class Barcode:
    quiver: Quiver
    entries: List[Tuple[GeomObject, int]] = field(default_factory=list)

    def __post_init__(self) -> None:
        merged: Dict[GeomObject, int] = {}
        for g, m in self.entries:
            if m < 1:
                raise DomainError("multiplicities must be positive")
            merged[g] = merged.get(g, 0) + m
        self.entries = sorted(merged.items(), key=lambda e: geom.sort_key(e[0]))

    def units(self) -> List[GeomObject]:
        return [g for g, m in self.entries for _ in range(m)]

    def count(self, pred) -> int:
        return sum(m for g, m in self.entries if pred(g))

    def bridge_counts(self) -> Tuple[int, int]:
        pp = self.count(lambda g: isinstance(g, BridgeArc) and g.tag is Tag.PREPROJECTIVE)
        pi = self.count(lambda g: isinstance(g, BridgeArc) and g.tag is Tag.PREINJECTIVE)
        return pp, pi

    def restrict(self, key: Tuple) -> "Barcode":
        return Barcode(self.quiver, [(g, m) for g, m in self.entries if geom.family_key(g) == key])

    def families(self) -> List[Tuple]:
        return sorted({geom.family_key(g) for g, _ in self.entries})

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Barcode) and self.quiver == other.quiver and self.entries == other.entries

    def to_records(self) -> List[dict]:
        return [dict(geom.to_record(g), multiplicity=m) for g, m in self.entries]


def barcode(m: Representation, seed: int = 0) -> Barcode:
    d = decompose(m, seed)
    return Barcode(m.quiver, [(s.label, s.multiplicity) for s in d.summands])


# ---------------------------------------------------------------------------
# matching


def _max_matching(n_left: int, n_right: int, adj: Sequence[Sequence[int]]) -> List[int]:
    """Kuhn's augmenting paths; returns match_right[j] = i or -1."""
    match_r = [-1] * n_right

    def augment(i: int, seen: List[bool]) -> bool:
        for j in adj[i]:
            if seen[j]:
                continue
            seen[j] = True
            if match_r[j] < 0 or augment(match_r[j], seen):
                match_r[j] = i
                return True
        return False

    for i in range(n_left):
        augment(i, [False] * n_right)
    return match_r


def _check_pair(b1: Barcode, b2: Barcode) -> None:
    if b1.quiver != b2.quiver:
        raise Incompatible("barcodes over different quivers")


def delta_matching(b1: Barcode, b2: Barcode, delta: int) -> Optional[List[Tuple[Optional[GeomObject], Optional[GeomObject]]]]:
    """A witness delta-matching as (left, right) pairs, None for a dummy side; None if infeasible."""
    _check_pair(b1, b2)
    if delta < 0:
        raise DomainError("delta must be non-negative")
    u1, u2 = b1.units(), b2.units()
    n1, n2 = len(u1), len(u2)
    short1 = [geom.length(g) <= 2 * delta for g in u1]
    short2 = [geom.length(g) <= 2 * delta for g in u2]
    # left: u1 then one dummy per u2 unit; right: u2 then one dummy per u1 unit
    adj: List[List[int]] = []
    for i, g in enumerate(u1):
        row = [j for j, h in enumerate(u2) if geom.delta_equivalent(g, h, delta)]
        if short1[i]:
            row.append(n2 + i)
        adj.append(row)
    for j in range(n2):
        row = [j] if short2[j] else []
        row.extend(n2 + i for i in range(n1))
        adj.append(row)
    match_r = _max_matching(n1 + n2, n1 + n2, adj)
    if any(x < 0 for x in match_r):
        return None
    # augmenting paths can strand equivalent units on dummies; pair them up directly
    for i in range(n1):
        if match_r[n2 + i] != i:
            continue
        for j in adj[i]:
            if j < n2 and match_r[j] >= n1:
                match_r[n2 + i], match_r[j] = match_r[j], i
                break
    pairs: List[Tuple[Optional[GeomObject], Optional[GeomObject]]] = []
    for j in range(n2):
        i = match_r[j]
        pairs.append((u1[i] if i < n1 else None, u2[j]))
    for i in range(n1):
        if match_r[n2 + i] == i:
            pairs.append((u1[i], None))
    return pairs


def delta_matched(b1: Barcode, b2: Barcode, delta: int) -> bool:
    return delta_matching(b1, b2, delta) is not None


def finiteness_report(b1: Barcode, b2: Barcode) -> Optional[str]:
    """Reason the distance is infinite, or None when it is finite."""
    (p1, i1), (p2, i2) = b1.bridge_counts(), b2.bridge_counts()
    if p1 != p2:
        return f"preprojective arc counts differ: {p1} vs {p2}"
    if i1 != i2:
        return f"preinjective arc counts differ: {i1} vs {i2}"
    return None


def _scan_bound(b1: Barcode, b2: Barcode) -> int:
    bound = 0
    for g in b1.units() + b2.units():
        ell = geom.length(g)
        if ell != math.inf:
            bound = max(bound, (int(ell) + 1) // 2)
    for g in b1.units():
        if not isinstance(g, BridgeArc):
            continue
        for h in b2.units():
            if isinstance(h, BridgeArc) and h.tag is g.tag:
                bound = max(bound, abs(g.u - h.u), abs(g.v - h.v))
    return bound


def bottleneck(b1: Barcode, b2: Barcode) -> ExtDistance:
    _check_pair(b1, b2)
    if finiteness_report(b1, b2) is not None:
        return INFINITE
    bound = _scan_bound(b1, b2)
    for delta in range(bound + 1):
        if delta_matched(b1, b2, delta):
            return ExtDistance(delta)
    raise CertificateFailure(f"no matching found up to the bound {bound}")


def interleaving_distance(m: Representation, n: Representation, seed: int = 0) -> ExtDistance:
    """Interleaving distance of two type Ã modules, computed through the barcodes."""
    if m.quiver != n.quiver or m.field != n.field:
        raise Incompatible("modules over different quivers or fields")
    if not m.quiver.is_cycle:
        raise Unsupported("interleaving distance is provided for type Ã quivers")
    return bottleneck(barcode(m, seed), barcode(n, seed))


# ---------------------------------------------------------------------------
# brute-force interleaving oracle


def _lift(q: Quiver, base: GeomObject, k: int) -> Tuple[int, int]:
    return geom.lifted_translate(q, base, k)


def _graph_maps(q: Quiver, fld: Field, x: GeomObject, kx: int, y: GeomObject, ky: int
                ) -> List[Tuple[int, Morphism]]:
    """Basis of Hom(tau^{-kx} x, tau^{-ky} y) by push-downs of cover partial identities.

    Returned with their deck offsets so translates can be formed consistently.
    """
    src = geom.canonical_module(q, fld, geom.tau_power_coord(x, kx))
    tgt = geom.canonical_module(q, fld, geom.tau_power_coord(y, ky))
    i1, j1 = _lift(q, x, kx)
    i2, j2 = _lift(q, y, ky)
    n = q.n_vertices
    out = []
    for d in range((i1 - j2) // n - 1, (j1 - i2) // n + 2):
        lo, hi = max(i1, i2 + d * n), min(j1, j2 + d * n)
        if lo > hi:
            continue
        mor = geom.partial_identity(q, fld, src, tgt, i1, i2 + d * n, lo, hi)
        if mor.commutes():
            out.append((d, mor))
    return out


def _graph_map_at(q: Quiver, fld: Field, x: GeomObject, kx: int, y: GeomObject, ky: int, d: int) -> Morphism:
    src = geom.canonical_module(q, fld, geom.tau_power_coord(x, kx))
    tgt = geom.canonical_module(q, fld, geom.tau_power_coord(y, ky))
    i1, j1 = _lift(q, x, kx)
    i2, j2 = _lift(q, y, ky)
    n = q.n_vertices
    lo, hi = max(i1, i2 + d * n), min(j1, j2 + d * n)
    if lo > hi:
        return Morphism.zero(src, tgt)
    mor = geom.partial_identity(q, fld, src, tgt, i1, i2 + d * n, lo, hi)
    if not mor.commutes():
        raise CertificateFailure("translate of a graph map is not a morphism")
    return mor


def _assemble(parts: Sequence[Representation], targets: Sequence[Representation],
              blocks: Dict[Tuple[int, int], Morphism], src: Representation, tgt: Representation) -> Morphism:
    q, fld = src.quiver, src.field
    out = []
    for x in q.vertices:
        rows: List[List[int]] = []
        for b, t in enumerate(targets):
            block_rows = [[] for _ in range(t.dim(x))]
            for a, s in enumerate(parts):
                mor = blocks.get((a, b))
                mat = mor.blocks[x - 1] if mor is not None else Matrix.zeros(fld, t.dim(x), s.dim(x))
                for r in range(t.dim(x)):
                    block_rows[r].extend(mat.rows[r])
            rows.extend(block_rows)
        out.append(Matrix(fld, tgt.dim(x), src.dim(x), rows))
    return Morphism(src, tgt, tuple(out))


class _HomWithTranslate:
    """Basis of Hom(A, tau^{-k} B) together with the images under tau^{-k}."""

    def __init__(self, q: Quiver, fld: Field, a_objs: List[GeomObject], b_objs: List[GeomObject],
                 k: int, band: bool):
        a0 = [geom.canonical_module(q, fld, g) for g in a_objs]
        a1 = [geom.canonical_module(q, fld, geom.tau_power_coord(g, k)) for g in a_objs]
        b1 = [geom.canonical_module(q, fld, geom.tau_power_coord(g, k)) for g in b_objs]
        b2 = [geom.canonical_module(q, fld, geom.tau_power_coord(g, 2 * k)) for g in b_objs]
        self.src = direct_sum(a0, q, fld)
        self.tgt = direct_sum(b1, q, fld)
        self.src_t = direct_sum(a1, q, fld)
        self.tgt_t = direct_sum(b2, q, fld)
        self.basis: List[Morphism] = []
        self.translated: List[Morphism] = []
        if band:
            # tau fixes band objects and acts as the identity on their maps
            for mor in hom_space(self.src, self.tgt):
                self.basis.append(mor)
                self.translated.append(Morphism(self.src_t, self.tgt_t, mor.blocks))
            return
        for ai, x in enumerate(a_objs):
            for bi, y in enumerate(b_objs):
                for d, mor in _graph_maps(q, fld, x, 0, y, k):
                    self.basis.append(_assemble(a0, b1, {(ai, bi): mor}, self.src, self.tgt))
                    img = _graph_map_at(q, fld, x, k, y, 2 * k, d)
                    self.translated.append(_assemble(a1, b2, {(ai, bi): img}, self.src_t, self.tgt_t))
        if len(self.basis) != len(hom_space(self.src, self.tgt)):
            raise CertificateFailure("graph maps do not span the Hom space")


def _phi_blocks(q: Quiver, fld: Field, objs: List[GeomObject], k: int, band: bool) -> List[Morphism]:
    """Natural Phi^k on each summand, as a morphism of the summand."""
    out = []
    for g in objs:
        if band:
            src = geom.canonical_module(q, fld, g)
            jm = jordan_companion(g.minpoly, g.l)  # type: ignore[union-attr]
            blk = jm.eval_poly(g.minpoly ** k) if k else Matrix.identity(fld, jm.nrows)  # type: ignore[union-attr]
            out.append(Morphism(src, src, tuple(blk for _ in q.vertices)))
        else:
            out.append(_graph_map_at(q, fld, g, 0, g, k, 0))
    return out


def _flat(m: Morphism) -> List[int]:
    return [x for b in m.blocks for r in b.rows for x in r]


def _solve_mod(p: int, cols: List[List[int]], rhs: List[int]) -> bool:
    """Whether rhs lies in the span of cols over F_p."""
    n = len(cols)
    rows = [[c[r] % p for c in cols] + [rhs[r] % p] for r in range(len(rhs))]
    piv_row = 0
    for col in range(n):
        sel = None
        for r in range(piv_row, len(rows)):
            if rows[r][col]:
                sel = r
                break
        if sel is None:
            continue
        rows[piv_row], rows[sel] = rows[sel], rows[piv_row]
        inv = pow(rows[piv_row][col], p - 2, p)
        pr = [(x * inv) % p for x in rows[piv_row]]
        rows[piv_row] = pr
        for r in range(len(rows)):
            if r != piv_row and rows[r][col]:
                f = rows[r][col]
                rows[r] = [(x - f * y) % p for x, y in zip(rows[r], pr)]
        piv_row += 1
    return all(any(r[:n]) or not r[n] for r in rows)


def _search_f2(P: List[List[List[int]]], Qm: List[List[List[int]]], target: Tuple[Sequence[int], Sequence[int]],
               dim_f: int, dim_g: int) -> bool:
    """Decide the bilinear system exactly with the DPLL search."""
    eqs: Dict[Tuple[Tuple[int, int], ...], int] = {}
    for side, rhs in ((P, target[0]), (Qm, target[1])):
        for r, want in enumerate(rhs):
            mons = tuple((i, dim_f + j) for i in range(dim_f) for j in range(dim_g) if side[i][j][r])
            if mons in eqs and eqs[mons] != want:
                return False
            eqs[mons] = want
    system = BilinearSystem(dim_f + dim_g, [(list(m), r) for m, r in eqs.items()])
    found = system.solve(branch_vars=range(dim_f))
    if found is None:
        return False
    if not system.check(found):
        raise CertificateFailure("bilinear search returned a non-solution")
    return True


def _test_objects(q: Quiver, fld: Field, objs: Sequence[GeomObject]) -> List[Representation]:
    """Modules used for the functorial rank obstruction."""
    tests = [geom.band_module(q, fld, BandObj(Poly(fld, [fld.neg(fld.one), 1]), 1))]
    seen = set()
    for g in objs:
        if g not in seen:
            seen.add(g)
            tests.append(geom.canonical_module(q, fld, g))
    return tests


def _flat_rank(fld: Field, vecs: List[List[int]]) -> int:
    if not vecs or not vecs[0]:
        return 0
    return Matrix(fld, len(vecs), len(vecs[0]), vecs).rank()


def _obstructed(fld: Field, tests: Sequence[Representation], phi: Morphism, mid: Representation) -> bool:
    """True if phi cannot factor through ``mid`` as seen by some Hom functor.

    For every test module Z, Hom(Z, phi) and Hom(phi, Z) must have rank at most
    dim Hom(Z, mid) and dim Hom(mid, Z) respectively.
    """
    for z in tests:
        cov = [_flat(phi @ h) for h in hom_space(z, phi.source)]
        if _flat_rank(fld, cov) > len(hom_space(z, mid)):
            return True
        con = [_flat(h @ phi) for h in hom_space(phi.target, z)]
        if _flat_rank(fld, con) > len(hom_space(mid, z)):
            return True
    return False


def _family_interleaved(q: Quiver, fld: Field, m_objs: List[GeomObject], n_objs: List[GeomObject],
                        delta: int, band: bool) -> bool:
    hf = _HomWithTranslate(q, fld, m_objs, n_objs, delta, band)
    hg = _HomWithTranslate(q, fld, n_objs, m_objs, delta, band)
    phi_m = _phi_blocks(q, fld, m_objs, 2 * delta, band)
    phi_n = _phi_blocks(q, fld, n_objs, 2 * delta, band)
    if all(p.is_zero() for p in phi_m + phi_n):
        return True
    if not m_objs or not n_objs or not hf.basis or not hg.basis:
        return False
    tests = _test_objects(q, fld, list(m_objs) + list(n_objs))
    phi_m_total = _assemble([p.source for p in phi_m], [p.target for p in phi_m],
                            {(i, i): p for i, p in enumerate(phi_m)}, hf.src, hg.tgt_t)
    phi_n_total = _assemble([p.source for p in phi_n], [p.target for p in phi_n],
                            {(i, i): p for i, p in enumerate(phi_n)}, hg.src, hf.tgt_t)
    if _obstructed(fld, tests, phi_m_total, hf.tgt) or _obstructed(fld, tests, phi_n_total, hg.tgt):
        return False
    # enumerate the smaller side; the relations are symmetric in (M, f) <-> (N, g)
    if len(hg.basis) < len(hf.basis):
        hf, hg, phi_m, phi_n, m_objs, n_objs = hg, hf, phi_n, phi_m, n_objs, m_objs
    dim_f, dim_g = len(hf.basis), len(hg.basis)
    p = fld.p
    # P[i][j] = tau^{-d} g_j o f_i : M -> tau^{-2d} M ; Q[i][j] = tau^{-d} f_i o g_j : N -> tau^{-2d} N
    P = [[_flat(hg.translated[j] @ hf.basis[i]) for j in range(dim_g)] for i in range(dim_f)]
    Qm = [[_flat(hf.translated[i] @ hg.basis[j]) for j in range(dim_g)] for i in range(dim_f)]
    m_sum = direct_sum([geom.canonical_module(q, fld, g) for g in m_objs], q, fld)
    n_sum = direct_sum([geom.canonical_module(q, fld, g) for g in n_objs], q, fld)
    m_t = hg.tgt_t
    n_t = hf.tgt_t

    def phi_total(blocks: List[Morphism], scalars: Sequence[int], src, tgt) -> List[int]:
        scaled = {(i, i): b.scale(fld(s)) for i, (b, s) in enumerate(zip(blocks, scalars))}
        parts_s = [b.source for b in blocks]
        parts_t = [b.target for b in blocks]
        return _flat(_assemble(parts_s, parts_t, scaled, src, tgt))

    units = fld.nonzero_elements()
    scalar_choices = []
    for sm in itertools.product(units, repeat=len(phi_m)):
        for sn in itertools.product(units, repeat=len(phi_n)):
            scalar_choices.append((phi_total(phi_m, sm, m_sum, m_t), phi_total(phi_n, sn, n_sum, n_t)))
    scalar_choices = list({(tuple(a), tuple(b)): None for a, b in scalar_choices})

    if p == 2:
        return _search_f2(P, Qm, scalar_choices[0], dim_f, dim_g)
    def feasible(coeffs: Sequence[int]) -> bool:
        cols = []
        for j in range(dim_g):
            v = [0] * (len(P[0][j]) + len(Qm[0][j]))
            for i, c in enumerate(coeffs):
                if c:
                    w = P[i][j] + Qm[i][j]
                    v = [(x + c * y) % p for x, y in zip(v, w)]
            cols.append(v)
        # f is only fixed up to a scalar, which is absorbed by g
        return any(_solve_mod(p, cols, list(a) + list(b)) for a, b in scalar_choices)

    # sampling only ever certifies a positive answer
    rng = random.Random(0)
    for _ in range(min(ORACLE_SAMPLES, p ** dim_f)):
        if feasible([rng.randrange(p) for _ in range(dim_f)]):
            return True
    if p ** dim_f > ORACLE_ENUM_CAP:
        raise ResourceBound(f"oracle enumeration of {p}^{dim_f} maps exceeds the cap")
    for coeffs in itertools.product(range(p), repeat=dim_f):
        nz = [c for c in coeffs if c]
        if nz and nz[0] == 1 and feasible(coeffs):
            return True
    return False


def brute_force_interleaved(m: Representation, n: Representation, delta: int, seed: int = 0,
                            dim_cap: int = ORACLE_DIM_CAP) -> bool:
    """Search for a delta-interleaving by exhaustive enumeration of Hom spaces.

    Works family by family: preprojective arcs, preinjective arcs, each
    exceptional tube and each homogeneous tube are independent.
    """
    if m.quiver != n.quiver or m.field != n.field:
        raise Incompatible("modules over different quivers or fields")
    q, fld = m.quiver, m.field
    if not q.is_cycle:
        raise Unsupported("the oracle handles type Ã quivers")
    if fld.p not in (2, 3):
        raise Unsupported("the oracle enumerates over F_2 or F_3 only")
    if delta < 0:
        raise DomainError("delta must be non-negative")
    if m.total_dim > dim_cap or n.total_dim > dim_cap:
        raise ResourceBound(f"total dimension above the oracle cap {dim_cap}")
    bm, bn = barcode(m, seed), barcode(n, seed)
    return barcodes_interleaved(q, fld, bm, bn, delta)


def barcodes_interleaved(q: Quiver, fld: Field, bm: Barcode, bn: Barcode, delta: int) -> bool:
    """Oracle entry point on already classified summands."""
    for key in sorted(set(bm.families()) | set(bn.families())):
        mo, no = bm.restrict(key).units(), bn.restrict(key).units()
        shift = 2 * delta if key == ("bridge", Tag.PREINJECTIVE.value) else 0
        mo = [geom.tau_power_coord(g, -shift) for g in mo]
        no = [geom.tau_power_coord(g, -shift) for g in no]
        if not _family_interleaved(q, fld, mo, no, delta, key[0] == "band"):
            return False
    return True
