"""Coordinates of indecomposables on the geometric model.

Type Ã objects are described through the universal cover of the cycle, the
infinite line.  Cover vertex ``c`` lies over ``cycle_order[c mod n]`` and the
cover arrow between ``c`` and ``c+1`` (the *gap* ``c``) has the orientation of
gap ``c mod n``.  A gap pointing right is a marked point on the top boundary
(T, p of them per period) and a gap pointing left one on the bottom boundary
(B, q per period).  Every string module is the push-down of a cover interval
``[i, j]`` and is typed by its two end gaps ``i-1`` and ``j``:

    (T, B) preprojective     (B, T) preinjective
    (T, T) rank-p tube       (B, B) rank-q tube

T marked points are indexed increasing to the left, B marked points
increasing to the right, and both origins are fixed so that the
indecomposable projective at cover vertex 0 has coordinates (0, 0).  With
these conventions ``s`` and ``t`` each add one to a coordinate and the
deck transformation acts by ``(u, v) -> (u + p, v - q)``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, List, Optional, Tuple, Union

from .errors import DomainError, Incompatible, LeavesHeart, NotIndecomposable, Unsupported
from .exactnum import Field, Matrix, Poly, block_shift, char_poly, factor, jordan_companion, parse_poly
from .linrep import Morphism, Representation
from .quiver import Quiver

INFINITY = float("inf")


class Tag(enum.Enum):
    PREPROJECTIVE = "P"
    PREINJECTIVE = "I"


class Tube(enum.Enum):
    RANK_P = "p"
    RANK_Q = "q"


@dataclass(frozen=True)
class BridgeArc:
    tag: Tag
    u: int
    v: int
    period: Tuple[int, int] = field(default=(1, 1), repr=False)

    def __post_init__(self) -> None:
        p, q = self.period
        k = self.u // p
        object.__setattr__(self, "u", self.u - k * p)
        object.__setattr__(self, "v", self.v + k * q)


@dataclass(frozen=True)
class TubeArc:
    tube: Tube
    a: int
    b: int
    rank: int = field(default=1, repr=False)

    def __post_init__(self) -> None:
        if self.a <= self.b:
            raise DomainError("a tube arc needs a > b")
        k = self.b // self.rank
        object.__setattr__(self, "a", self.a - k * self.rank)
        object.__setattr__(self, "b", self.b - k * self.rank)


@dataclass(frozen=True)
class BandObj:
    minpoly: Poly
    l: int

    def __post_init__(self) -> None:
        if self.l < 1:
            raise DomainError("band length must be positive")
        if not self.minpoly.is_monic() or self.minpoly(self.minpoly.field.zero) == 0:
            raise DomainError("band parameter needs a monic minimal polynomial with nonzero root")


@dataclass(frozen=True)
class IntervalA:
    a: int
    b: int

    def __post_init__(self) -> None:
        if not (1 <= self.a < self.b):
            raise DomainError(f"invalid interval [{self.a},{self.b})")


class _Trivial:
    _inst: Optional["_Trivial"] = None

    def __new__(cls) -> "_Trivial":
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self) -> str:
        return "Trivial"


TRIVIAL = _Trivial()
GeomObject = Union[BridgeArc, TubeArc, BandObj, IntervalA]
MaybeObject = Union[GeomObject, _Trivial]


def make_bridge(q: Quiver, tag: Tag, u: int, v: int) -> BridgeArc:
    return BridgeArc(tag, u, v, (q.p, q.q))


def make_tube(q: Quiver, tube: Tube, a: int, b: int) -> TubeArc:
    return TubeArc(tube, a, b, q.p if tube is Tube.RANK_P else q.q)


# ---------------------------------------------------------------------------
# boundary moves


def s_move(g: GeomObject) -> MaybeObject:
    if isinstance(g, BridgeArc):
        return BridgeArc(g.tag, g.u + 1, g.v, g.period)
    if isinstance(g, TubeArc):
        return TubeArc(g.tube, g.a + 1, g.b, g.rank)
    if isinstance(g, BandObj):
        return BandObj(g.minpoly, g.l + 1)
    if isinstance(g, IntervalA):
        if g.a == 1:
            raise LeavesHeart(f"s is undefined on [{g.a},{g.b})")
        return IntervalA(g.a - 1, g.b)
    raise DomainError(f"s_move on {g!r}")


def t_move(g: GeomObject) -> MaybeObject:
    if isinstance(g, BridgeArc):
        return BridgeArc(g.tag, g.u, g.v + 1, g.period)
    if isinstance(g, TubeArc):
        return TRIVIAL if g.a == g.b + 1 else TubeArc(g.tube, g.a, g.b + 1, g.rank)
    if isinstance(g, BandObj):
        return TRIVIAL if g.l == 1 else BandObj(g.minpoly, g.l - 1)
    if isinstance(g, IntervalA):
        return TRIVIAL if g.b - 1 == g.a else IntervalA(g.a, g.b - 1)
    raise DomainError(f"t_move on {g!r}")


def apply_moves(g: MaybeObject, n_t: int, n_s: int) -> MaybeObject:
    """t^{n_t} s^{n_s} g (s applied first); Trivial absorbs further moves."""
    for _ in range(n_s):
        if g is TRIVIAL:
            return g
        g = s_move(g)  # type: ignore[arg-type]
    for _ in range(n_t):
        if g is TRIVIAL:
            return g
        g = t_move(g)  # type: ignore[arg-type]
    return g


def length(g: GeomObject) -> Union[int, float]:
    if isinstance(g, BridgeArc):
        return INFINITY
    if isinstance(g, TubeArc):
        return g.a - g.b
    if isinstance(g, BandObj):
        return g.l
    if isinstance(g, IntervalA):
        return g.b - g.a
    raise DomainError(f"length of {g!r}")


def tau_inverse_coord(g: MaybeObject) -> GeomObject:
    if g is TRIVIAL:
        raise DomainError("tau inverse of the zero object")
    if isinstance(g, BridgeArc):
        return BridgeArc(g.tag, g.u + 1, g.v + 1, g.period)
    if isinstance(g, TubeArc):
        return TubeArc(g.tube, g.a + 1, g.b + 1, g.rank)
    if isinstance(g, BandObj):
        return g
    if isinstance(g, IntervalA):
        if g.a == 1:
            raise LeavesHeart(f"[{g.a},{g.b}) is injective; its inverse translate is not a module")
        return IntervalA(g.a - 1, g.b - 1)
    raise DomainError(f"tau inverse of {g!r}")


def tau_coord(g: GeomObject, n: Optional[int] = None) -> GeomObject:
    """Inverse of :func:`tau_inverse_coord`; ``n`` bounds IntervalA on A_n."""
    if isinstance(g, BridgeArc):
        return BridgeArc(g.tag, g.u - 1, g.v - 1, g.period)
    if isinstance(g, TubeArc):
        return TubeArc(g.tube, g.a - 1, g.b - 1, g.rank)
    if isinstance(g, BandObj):
        return g
    if isinstance(g, IntervalA):
        if n is None:
            raise DomainError("tau of an interval needs the quiver size")
        if g.b == n + 1:
            raise LeavesHeart(f"[{g.a},{g.b}) is projective; its translate is not a module")
        return IntervalA(g.a + 1, g.b + 1)
    raise DomainError(f"tau of {g!r}")


def tau_power_coord(g: GeomObject, k: int, n: Optional[int] = None) -> GeomObject:
    """tau^{-k} for k >= 0 and tau^{|k|} for k < 0."""
    for _ in range(abs(k)):
        g = tau_inverse_coord(g) if k > 0 else tau_coord(g, n)
    return g


# ---------------------------------------------------------------------------
# delta-equivalence


def _same_family(g1: GeomObject, g2: GeomObject) -> bool:
    if type(g1) is not type(g2):
        return False
    if isinstance(g1, BridgeArc):
        return g1.tag is g2.tag and g1.period == g2.period  # type: ignore[union-attr]
    if isinstance(g1, TubeArc):
        return g1.tube is g2.tube and g1.rank == g2.rank  # type: ignore[union-attr]
    if isinstance(g1, BandObj):
        return g1.minpoly == g2.minpoly  # type: ignore[union-attr]
    return True


def family_key(g: GeomObject) -> Tuple:
    """Component family: objects in different families are never comparable."""
    if isinstance(g, BridgeArc):
        return ("bridge", g.tag.value)
    if isinstance(g, TubeArc):
        return ("tube", g.tube.value)
    if isinstance(g, BandObj):
        return ("band", str(g.minpoly))
    return ("interval",)


def delta_equivalent(g1: GeomObject, g2: GeomObject, delta: int, quiver: Optional[Quiver] = None) -> bool:
    """Closed form of: exists m1, m2, n1, n2 in [0, delta] with
    t^{m1} s^{m2} g1 = t^{n1} s^{n2} g2 nontrivial."""
    if delta < 0:
        raise DomainError("delta must be non-negative")
    if quiver is not None:
        _check_model(quiver, g1)
        _check_model(quiver, g2)
    if not _same_family(g1, g2):
        return False
    if isinstance(g1, BandObj):
        return abs(g1.l - g2.l) <= 2 * delta  # type: ignore[union-attr]
    if isinstance(g1, BridgeArc):
        p, q = g1.period
        du, dv = g2.u - g1.u, g2.v - g1.v  # type: ignore[union-attr]
        # m2 - n2 = du + k p and m1 - n1 = dv - k q, both in [-delta, delta]
        for k in range((-du - delta) // p - 1, (-du + delta) // p + 2):
            if abs(du + k * p) <= delta and abs(dv - k * q) <= delta:
                return True
        return False
    if isinstance(g1, TubeArc):
        r = g1.rank
        da, db = g1.a - g2.a, g1.b - g2.b  # type: ignore[union-attr]
        l1 = g1.a - g1.b
        # a1 + m2 = a2 + n2 + k r ; b1 + m1 = b2 + n1 + k r ; l1 + m2 - m1 >= 1
        for k in range((da - delta) // r - 1, (da + delta) // r + 2):
            e_a = k * r - da  # m2 - n2
            e_b = k * r - db  # m1 - n1
            if abs(e_a) > delta or abs(e_b) > delta:
                continue
            m2 = min(delta, delta + e_a)
            m1 = max(0, e_b)
            if l1 + m2 - m1 >= 1:
                return True
        return False
    if isinstance(g1, IntervalA):
        a1, b1, a2, b2 = g1.a, g1.b, g2.a, g2.b  # type: ignore[union-attr]
        if abs(a1 - a2) > delta or abs(b1 - b2) > delta:
            return False
        start = max(1, max(a1, a2) - delta)
        return min(b1, b2) > start
    raise DomainError(f"delta_equivalent on {g1!r}")


def delta_equivalent_bruteforce(g1: GeomObject, g2: GeomObject, delta: int) -> bool:
    """Literal search over all shift quadruples, for validation."""
    left: Dict[MaybeObject, bool] = {}
    for m1 in range(delta + 1):
        for m2 in range(delta + 1):
            try:
                left[apply_moves(g1, m1, m2)] = True
            except LeavesHeart:
                continue
    for n1 in range(delta + 1):
        for n2 in range(delta + 1):
            try:
                h = apply_moves(g2, n1, n2)
            except LeavesHeart:
                continue
            if h is not TRIVIAL and h in left:
                return True
    return False


def _check_model(q: Quiver, g: GeomObject) -> None:
    if q.is_cycle:
        if isinstance(g, IntervalA):
            raise Incompatible("interval coordinates belong to type A quivers")
        if isinstance(g, BridgeArc) and g.period != (q.p, q.q):
            raise Incompatible("bridge arc period does not match the quiver")
        if isinstance(g, TubeArc) and g.rank != (q.p if g.tube is Tube.RANK_P else q.q):
            raise Incompatible("tube rank does not match the quiver")
    elif not isinstance(g, IntervalA):
        raise Incompatible("type A quivers only carry interval coordinates")


def sort_key(g: GeomObject) -> Tuple:
    if isinstance(g, BridgeArc):
        return (0 if g.tag is Tag.PREPROJECTIVE else 3, g.u, g.v)
    if isinstance(g, TubeArc):
        return (1 if g.tube is Tube.RANK_P else 2, g.a - g.b, g.b, 0)
    if isinstance(g, BandObj):
        return (4, g.minpoly.sort_key(), g.l, 0)
    return (5, g.a, g.b, 0)


# ---------------------------------------------------------------------------
# cover combinatorics


class Cover:
    """Marked-point indexing on the universal cover of a cycle quiver."""

    def __init__(self, q: Quiver):
        if not q.is_cycle:
            raise Unsupported("the cover model needs a type Ã quiver")
        self.q = q
        self.n = q.n_vertices
        cw = q.gap_clockwise
        self.t_res = [g for g in range(self.n) if cw[g]]
        self.b_res = [g for g in range(self.n) if not cw[g]]
        self.p, self.qq = len(self.t_res), len(self.b_res)
        # projective at cover vertex 0
        j = 0
        while cw[j % self.n]:
            j += 1
        i = 0
        while not cw[(i - 1) % self.n]:
            i -= 1
        self.kt0 = self._t_rank(i - 1)
        self.kb0 = self._b_rank(j)

    def is_t(self, gap: int) -> bool:
        return self.q.gap_clockwise[gap % self.n]

    def _t_rank(self, gap: int) -> int:
        return self.p * (gap // self.n) + self.t_res.index(gap % self.n)

    def _b_rank(self, gap: int) -> int:
        return self.qq * (gap // self.n) + self.b_res.index(gap % self.n)

    def t_index(self, gap: int) -> int:
        return self.kt0 - self._t_rank(gap)

    def b_index(self, gap: int) -> int:
        return self._b_rank(gap) - self.kb0

    def t_gap(self, u: int) -> int:
        k = self.kt0 - u
        return self.t_res[k % self.p] + self.n * (k // self.p)

    def b_gap(self, v: int) -> int:
        k = v + self.kb0
        return self.b_res[k % self.qq] + self.n * (k // self.qq)

    def vertex(self, c: int) -> int:
        return self.q.cycle_order[c % self.n]

    # -- objects <-> intervals -------------------------------------------
    def interval(self, g: GeomObject) -> Tuple[int, int]:
        """A lifted cover interval [i, j] (inclusive) for a string object."""
        if isinstance(g, BridgeArc):
            if g.tag is Tag.PREPROJECTIVE:
                left, right = self.t_gap(g.u), self.b_gap(g.v)
            else:
                left, right = self.b_gap(g.v), self.t_gap(g.u)
        elif isinstance(g, TubeArc):
            if g.tube is Tube.RANK_P:
                left, right = self.t_gap(g.a), self.t_gap(g.b)
            else:
                left, right = self.b_gap(g.b), self.b_gap(g.a)
        else:
            raise DomainError(f"{g!r} is not a string object")
        if left >= right:
            raise LeavesHeart(f"{g!r} does not correspond to a module")
        return left + 1, right

    def from_interval(self, i: int, j: int) -> GeomObject:
        if j < i:
            raise DomainError("empty interval")
        left, right = i - 1, j
        lt, rt = self.is_t(left), self.is_t(right)
        if lt and not rt:
            return make_bridge(self.q, Tag.PREPROJECTIVE, self.t_index(left), self.b_index(right))
        if rt and not lt:
            return make_bridge(self.q, Tag.PREINJECTIVE, self.t_index(right), self.b_index(left))
        if lt and rt:
            return make_tube(self.q, Tube.RANK_P, self.t_index(left), self.t_index(right))
        return make_tube(self.q, Tube.RANK_Q, self.b_index(right), self.b_index(left))

    def basis_index(self, i: int, c: int) -> int:
        """Position of cover vertex c in the push-down basis at its vertex (interval starts at i)."""
        r = (c - i) % self.n
        return (c - (i + r)) // self.n


@lru_cache(maxsize=64)
def cover(q: Quiver) -> Cover:
    return Cover(q)


def in_heart(q: Quiver, g: GeomObject) -> bool:
    """Whether the coordinates describe a module (not a shifted object)."""
    if isinstance(g, (BridgeArc, TubeArc)):
        try:
            cover(q).interval(g)
            return True
        except LeavesHeart:
            return False
    if isinstance(g, IntervalA):
        return g.b <= q.n_vertices + 1
    return True


# ---------------------------------------------------------------------------
# canonical modules


def string_module(q: Quiver, fld: Field, g: MaybeObject) -> Representation:
    if g is TRIVIAL:
        return Representation.zero(q, fld)
    if isinstance(g, IntervalA):
        return _interval_module(q, fld, g)
    if not q.is_cycle:
        raise Incompatible("string coordinates need a type Ã quiver")
    _check_model(q, g)  # type: ignore[arg-type]
    i, j = cover(q).interval(g)  # type: ignore[arg-type]
    return _pushdown(q, fld, i, j)


def _pushdown(q: Quiver, fld: Field, i: int, j: int) -> Representation:
    cov = cover(q)
    n = q.n_vertices
    dims = [0] * n
    for c in range(i, j + 1):
        dims[cov.vertex(c) - 1] += 1
    rows: Dict[int, List[List[int]]] = {}
    for k, (s, t) in enumerate(q.arrows):
        rows[k] = [[0] * dims[s - 1] for _ in range(dims[t - 1])]
    for c in range(i, j):
        k = q.gap_arrows[c % n]
        a, b = (c, c + 1) if q.gap_clockwise[c % n] else (c + 1, c)
        rows[k][cov.basis_index(i, b)][cov.basis_index(i, a)] = 1
    maps = tuple(Matrix(fld, dims[t - 1], dims[s - 1], rows[k]) for k, (s, t) in enumerate(q.arrows))
    return Representation(q, fld, tuple(dims), maps)


def _interval_module(q: Quiver, fld: Field, g: IntervalA) -> Representation:
    if q.is_cycle:
        raise Incompatible("interval coordinates need a type A quiver")
    order = q.line_order
    if g.b > q.n_vertices + 1:
        raise DomainError(f"interval [{g.a},{g.b}) exceeds A_{q.n_vertices}")
    support = set(order[g.a - 1: g.b - 1])
    dims = tuple(1 if v in support else 0 for v in q.vertices)
    maps = []
    for s, t in q.arrows:
        one = s in support and t in support
        maps.append(Matrix(fld, dims[t - 1], dims[s - 1], [[1]] if one else []))
    return Representation(q, fld, dims, tuple(maps))


def designated_gap(q: Quiver) -> int:
    """The clockwise gap carrying the Jordan block of a band module."""
    return q.gap_clockwise.index(True)


def band_module(q: Quiver, fld: Field, band: BandObj) -> Representation:
    if not q.is_cycle:
        raise Incompatible("bands need a type Ã quiver")
    if band.minpoly.field != fld:
        raise Incompatible("band minimal polynomial is over a different field")
    d = band.minpoly.degree * band.l
    j = jordan_companion(band.minpoly, band.l)
    special = q.gap_arrows[designated_gap(q)]
    maps = tuple(j if k == special else Matrix.identity(fld, d) for k in range(len(q.arrows)))
    return Representation(q, fld, (d,) * q.n_vertices, maps)


def canonical_module(q: Quiver, fld: Field, g: MaybeObject) -> Representation:
    if isinstance(g, BandObj):
        return band_module(q, fld, g)
    return string_module(q, fld, g)


# ---------------------------------------------------------------------------
# monodromy and classification


def monodromy(m: Representation) -> Matrix:
    """Clockwise composite around the cycle from the lowest vertex; all maps must be invertible."""
    q = m.quiver
    order = q.cycle_order
    n = q.n_vertices
    acc = Matrix.identity(m.field, m.dim(order[0]))
    for g in range(n):
        a = m.maps[q.gap_arrows[g]]
        if not q.gap_clockwise[g]:
            inv = a.inverse()
            if inv is None:
                raise NotIndecomposable("monodromy needs invertible maps")
            a = inv
        acc = a @ acc
    return acc


def classify(m: Representation) -> GeomObject:
    """Coordinates of an indecomposable; raises NotIndecomposable on inconsistent data.

    Only a necessary check is done here; callers confirm indecomposability by
    building the canonical form and an explicit isomorphism.
    """
    q = m.quiver
    d = m.dims
    if m.total_dim == 0:
        raise NotIndecomposable("zero representation")
    if not q.is_cycle:
        order = q.line_order
        seq = [d[v - 1] for v in order]
        support = [i for i, x in enumerate(seq) if x]
        if any(x > 1 for x in seq) or support[-1] - support[0] + 1 != len(support):
            raise NotIndecomposable(f"dimension vector {d} is not an interval")
        return IntervalA(support[0] + 1, support[-1] + 2)
    n = q.n_vertices
    order = q.cycle_order
    seq = [d[v - 1] for v in order]
    lo, hi = min(seq), max(seq)
    cov = cover(q)
    if lo == hi:
        k = lo
        ranks = [m.maps[q.gap_arrows[g]].rank() for g in range(n)]
        if all(r == k for r in ranks):
            facs = factor(char_poly(monodromy(m)))
            if len(facs) != 1:
                raise NotIndecomposable("monodromy has several eigenvalue classes")
            poly, e = facs[0]
            return BandObj(poly, e)
        deficient = [g for g in range(n) if ranks[g] != k]
        if len(deficient) != 1 or ranks[deficient[0]] != k - 1:
            raise NotIndecomposable("rank pattern does not match a string")
        i = (deficient[0] + 1) % n
        return cov.from_interval(i, i + k * n - 1)
    if hi != lo + 1:
        raise NotIndecomposable(f"dimension vector {d} does not match a string")
    big = [g for g in range(n) if seq[g] == hi]
    starts = [g for g in big if seq[(g - 1) % n] == lo]
    if len(starts) != 1:
        raise NotIndecomposable(f"dimension vector {d} does not match a string")
    i = starts[0]
    r = len(big)
    if any(seq[(i + t) % n] != hi for t in range(r)):
        raise NotIndecomposable(f"dimension vector {d} does not match a string")
    return cov.from_interval(i, i + lo * n + r - 1)


# ---------------------------------------------------------------------------
# standard maps Phi^k


def partial_identity(q: Quiver, fld: Field, src: Representation, tgt: Representation,
                      si: int, ti: int, lo: int, hi: int) -> Morphism:
    """Push-down of the identity on cover vertices lo..hi between two lifted intervals."""
    cov = cover(q)
    rows = {x: [[0] * src.dim(x) for _ in range(tgt.dim(x))] for x in q.vertices}
    for c in range(lo, hi + 1):
        x = cov.vertex(c)
        rows[x][cov.basis_index(ti, c)][cov.basis_index(si, c)] = 1
    blocks = tuple(Matrix(fld, tgt.dim(x), src.dim(x), rows[x]) for x in q.vertices)
    return Morphism(src, tgt, blocks)


def phi_map(q: Quiver, fld: Field, g: MaybeObject, k: int) -> Morphism:
    """Standard Phi^k : g -> tau^{-k} g in canonical bases."""
    if g is TRIVIAL:
        raise DomainError("Phi of the zero object")
    if k < 0:
        raise DomainError("k must be non-negative")
    src = canonical_module(q, fld, g)
    if k == 0:
        return Morphism.identity(src)
    if isinstance(g, BandObj):
        d = g.minpoly.degree
        sh = block_shift(fld, d, g.l) ** k
        return Morphism(src, src, tuple(sh for _ in q.vertices))
    h = tau_power_coord(g, k)  # type: ignore[arg-type]
    tgt = canonical_module(q, fld, h)
    if isinstance(g, IntervalA):
        order = q.line_order
        pos = {v: i + 1 for i, v in enumerate(order)}
        lo, hi = max(g.a, h.a), min(g.b, h.b)  # type: ignore[union-attr]
        blocks = []
        for x in q.vertices:
            one = lo <= pos[x] < hi
            blocks.append(Matrix(fld, tgt.dim(x), src.dim(x), [[1]] if one else []))
        return Morphism(src, tgt, tuple(blocks))
    cov = cover(q)
    i1, j1 = cov.interval(g)  # type: ignore[arg-type]
    i2, j2 = lifted_translate(q, g, k)
    lo, hi = max(i1, i2), min(j1, j2)
    return partial_identity(q, fld, src, tgt, i1, i2, lo, hi)


def lifted_translate(q: Quiver, g: GeomObject, k: int) -> Tuple[int, int]:
    """Cover interval of tau^{-k} g lifted consistently with g's own lift."""
    cov = cover(q)
    if isinstance(g, BridgeArc):
        if g.tag is Tag.PREPROJECTIVE:
            return cov.t_gap(g.u + k) + 1, cov.b_gap(g.v + k)
        return cov.b_gap(g.v + k) + 1, cov.t_gap(g.u + k)
    if isinstance(g, TubeArc):
        if g.tube is Tube.RANK_P:
            return cov.t_gap(g.a + k) + 1, cov.t_gap(g.b + k)
        return cov.b_gap(g.b + k) + 1, cov.b_gap(g.a + k)
    raise DomainError(f"{g!r} has no lifted interval")


# ---------------------------------------------------------------------------
# serialization and labels


def to_record(g: GeomObject) -> dict:
    if isinstance(g, BridgeArc):
        return {"kind": "bridge", "tag": g.tag.value, "u": g.u, "v": g.v}
    if isinstance(g, TubeArc):
        return {"kind": "tube", "tube": g.tube.value, "a": g.a, "b": g.b}
    if isinstance(g, BandObj):
        return {"kind": "band", "minpoly": str(g.minpoly), "l": g.l}
    if isinstance(g, IntervalA):
        return {"kind": "interval", "a": g.a, "b": g.b}
    raise DomainError(f"cannot serialize {g!r}")


def from_record(q: Quiver, fld: Field, rec: dict) -> GeomObject:
    kind = rec["kind"]
    if kind == "bridge":
        return make_bridge(q, Tag(rec["tag"]), int(rec["u"]), int(rec["v"]))
    if kind == "tube":
        return make_tube(q, Tube(rec["tube"]), int(rec["a"]), int(rec["b"]))
    if kind == "band":
        return BandObj(parse_poly(fld, rec["minpoly"]), int(rec["l"]))
    if kind == "interval":
        return IntervalA(int(rec["a"]), int(rec["b"]))
    raise DomainError(f"unknown object kind {kind!r}")


def dictionary_label(g: GeomObject) -> str:
    """Barcode-dictionary name of a summand."""
    if isinstance(g, BridgeArc):
        return "closed interval" if g.tag is Tag.PREPROJECTIVE else "open interval"
    if isinstance(g, TubeArc):
        return "half-open interval"
    if isinstance(g, BandObj):
        lam = _root_text(g.minpoly)
        return f"Jordan block ({lam}, {g.l})"
    return f"interval [{g.a},{g.b})"


def _root_text(poly: Poly) -> str:
    if poly.degree == 1:
        return str(poly.field.signed(poly.field.neg(poly.coeffs[0])))
    return f"root of {poly}"


def describe(g: GeomObject) -> str:
    if isinstance(g, BridgeArc):
        return f"bridge({g.tag.value}, u={g.u}, v={g.v})"
    if isinstance(g, TubeArc):
        return f"tube({g.tube.value}, a={g.a}, b={g.b})"
    if isinstance(g, BandObj):
        return f"band({g.minpoly}, l={g.l})"
    return f"interval[{g.a},{g.b})"
