"""Simplicial homology over the active field and level-set zigzag modules."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, List, Mapping, Sequence, Tuple

from .errors import CertificateFailure, InputError
from .exactnum import Field, Matrix
from .linrep import Representation
from .quiver import Quiver

Simplex = Tuple[int, ...]


@dataclass(frozen=True)
class SimplicialComplex:
    simplices: frozenset

    @classmethod
    def from_maximal(cls, maximal: Iterable[Sequence[int]]) -> "SimplicialComplex":
        out = set()
        for s in maximal:
            s = tuple(sorted(set(s)))
            if not s:
                raise InputError("empty simplex")
            for k in range(1, len(s) + 1):
                out.update(combinations(s, k))
        return cls(frozenset(out))

    def __post_init__(self) -> None:
        for s in self.simplices:
            if tuple(sorted(s)) != s or len(set(s)) != len(s):
                raise InputError(f"simplex {s} is not a sorted vertex tuple")
            if len(s) > 1:
                for face in combinations(s, len(s) - 1):
                    if face not in self.simplices:
                        raise InputError(f"face {face} of {s} is missing")

    @property
    def max_dim(self) -> int:
        return max((len(s) - 1 for s in self.simplices), default=-1)

    def vertices(self) -> List[int]:
        return sorted(s[0] for s in self.simplices if len(s) == 1)

    def of_dim(self, k: int) -> List[Simplex]:
        return sorted(s for s in self.simplices if len(s) == k + 1)

    def maximal(self) -> List[Simplex]:
        simp = self.simplices
        return sorted((s for s in simp if not any(len(t) > len(s) and set(s) <= set(t) for t in simp)),
                      key=lambda s: (len(s), s))

    def to_record(self) -> List[List[int]]:
        return [list(s) for s in self.maximal()]


def boundary_matrix(k_cx: SimplicialComplex, k: int, fld: Field) -> Matrix:
    """Matrix of the boundary from k-chains to (k-1)-chains in sorted simplex bases."""
    rows_s = k_cx.of_dim(k - 1)
    cols_s = k_cx.of_dim(k)
    if k == 0 or not cols_s or not rows_s:
        return Matrix.zeros(fld, len(rows_s), len(cols_s))
    index = {s: i for i, s in enumerate(rows_s)}
    data = [[fld.zero] * len(cols_s) for _ in rows_s]
    for j, s in enumerate(cols_s):
        for drop in range(len(s)):
            face = s[:drop] + s[drop + 1:]
            data[index[face]][j] = fld(1 if drop % 2 == 0 else -1)
    return Matrix(fld, len(rows_s), len(cols_s), data)


def homology_basis(k_cx: SimplicialComplex, k: int, fld: Field) -> Tuple[int, Matrix]:
    """dim H_k and a matrix whose columns are cycles representing a basis."""
    n = len(k_cx.of_dim(k))
    cycles = boundary_matrix(k_cx, k, fld).nullspace() if n else []
    bounds = boundary_matrix(k_cx, k + 1, fld).column_space() if n else []
    if not cycles:
        return 0, Matrix.zeros(fld, n, 0)
    # boundaries first, then pick the cycles that extend them to a basis
    stacked = Matrix.from_columns(fld, n, list(bounds) + list(cycles))
    _, pivots = stacked.rref()
    chosen = [cycles[p - len(bounds)] for p in pivots if p >= len(bounds)]
    return len(chosen), (Matrix.from_columns(fld, n, chosen) if chosen else Matrix.zeros(fld, n, 0))


@dataclass(frozen=True)
class SimplicialMap:
    source: SimplicialComplex
    target: SimplicialComplex
    vertex_map: Mapping[int, int]

    def __post_init__(self) -> None:
        for v in self.source.vertices():
            if v not in self.vertex_map:
                raise InputError(f"vertex {v} has no image")
        for s in self.source.simplices:
            img = tuple(sorted(self.vertex_map[v] for v in s))
            if len(set(img)) != len(img):
                raise InputError(f"simplex {s} collapses; inclusions must be injective on simplices")
            if img not in self.target.simplices:
                raise InputError(f"image of {s} is not a simplex of the target")

    def chain_matrix(self, k: int, fld: Field) -> Matrix:
        src = self.source.of_dim(k)
        tgt = self.target.of_dim(k)
        index = {s: i for i, s in enumerate(tgt)}
        data = [[fld.zero] * len(src) for _ in tgt]
        for j, s in enumerate(src):
            img = [self.vertex_map[v] for v in s]
            order = sorted(range(len(img)), key=lambda i: img[i])
            data[index[tuple(img[i] for i in order)]][j] = fld(_perm_sign(order))
        return Matrix(fld, len(tgt), len(src), data)


def _perm_sign(perm: Sequence[int]) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def induced_map(f: SimplicialMap, k: int, fld: Field) -> Matrix:
    """Matrix of H_k(source) -> H_k(target) in the bases of :func:`homology_basis`."""
    _, src_basis = homology_basis(f.source, k, fld)
    dim_t, tgt_basis = homology_basis(f.target, k, fld)
    n = len(f.target.of_dim(k))
    if src_basis.ncols == 0 or dim_t == 0:
        return Matrix.zeros(fld, dim_t, src_basis.ncols)
    pushed = f.chain_matrix(k, fld) @ src_basis
    bounds = boundary_matrix(f.target, k + 1, fld).column_space()
    system = Matrix.from_columns(fld, n, tgt_basis.columns() + list(bounds))
    sol = system.solve(pushed)
    if sol is None:
        raise CertificateFailure("pushed cycle is not a combination of the target basis")
    return sol.submatrix(range(dim_t), range(sol.ncols))


@dataclass(frozen=True)
class ZigzagDiagram:
    """Singular fibers X_1..X_r, regular fibers R_1..R_r, maps a_i: R_i -> X_i
    and b_{i-1}: R_i -> X_{i-1} (indices mod r)."""

    singular: Tuple[SimplicialComplex, ...]
    regular: Tuple[SimplicialComplex, ...]
    a_maps: Tuple[Mapping[int, int], ...]
    b_maps: Tuple[Mapping[int, int], ...]

    def __post_init__(self) -> None:
        r = len(self.singular)
        if r < 1 or not (len(self.regular) == len(self.a_maps) == len(self.b_maps) == r):
            raise InputError("a diagram needs r >= 1 singular fibers with matching regular fibers and maps")
        for i in range(r):
            self.a(i)
            self.b(i)

    @property
    def r(self) -> int:
        return len(self.singular)

    def a(self, i: int) -> SimplicialMap:
        return SimplicialMap(self.regular[i], self.singular[i], self.a_maps[i])

    def b(self, i: int) -> SimplicialMap:
        return SimplicialMap(self.regular[i], self.singular[(i - 1) % self.r], self.b_maps[i])

    def quiver(self) -> Quiver:
        """Vertex 2i+1 carries R_{i+1}, vertex 2i+2 carries X_{i+1}; all X vertices are sinks."""
        r = self.r
        arrows = []
        for i in range(r):
            arrows.append((2 * i + 1, 2 * i + 2))
            arrows.append((2 * i + 1, 2 * ((i - 1) % r) + 2))
        return Quiver.cycle(arrows, 2 * r, (r, r))

    def to_record(self) -> dict:
        return {
            "singular": [x.to_record() for x in self.singular],
            "regular": [x.to_record() for x in self.regular],
            "a": [{str(k): v for k, v in sorted(m.items())} for m in self.a_maps],
            "b": [{str(k): v for k, v in sorted(m.items())} for m in self.b_maps],
        }

    @classmethod
    def from_record(cls, doc: dict) -> "ZigzagDiagram":
        try:
            sing = tuple(SimplicialComplex.from_maximal(x) for x in doc["singular"])
            reg = tuple(SimplicialComplex.from_maximal(x) for x in doc["regular"])
            a = tuple({int(k): int(v) for k, v in m.items()} for m in doc["a"])
            b = tuple({int(k): int(v) for k, v in m.items()} for m in doc["b"])
        except (KeyError, TypeError, ValueError, AttributeError) as exc:
            raise InputError(f"malformed diagram: {exc}") from exc
        return cls(sing, reg, a, b)


def levelset_representation(d: ZigzagDiagram, k: int, fld: Field) -> Representation:
    q = d.quiver()
    dims = [0] * (2 * d.r)
    for i in range(d.r):
        dims[2 * i] = homology_basis(d.regular[i], k, fld)[0]
        dims[2 * i + 1] = homology_basis(d.singular[i], k, fld)[0]
    maps = []
    for i in range(d.r):
        maps.append(induced_map(d.a(i), k, fld))
        maps.append(induced_map(d.b(i), k, fld))
    return Representation(q, fld, tuple(dims), tuple(maps))
