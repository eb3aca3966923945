"""Representations as vertex-indexed matrices, morphisms, Hom spaces,
the homological AR translate and decomposition with certificates."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import product
from typing import TYPE_CHECKING, Dict, List, Optional, Sequence, Tuple

from .errors import CertificateFailure, DimensionError, Incompatible, NotIndecomposable
from .exactnum import Complement, Field, FieldScalar, Matrix, Poly, char_poly, factor
from .quiver import DimVector, Quiver, check_dims

if TYPE_CHECKING:  # pragma: no cover
    from .geom import GeomObject

# random endomorphisms tried before the deterministic sweep
RANDOM_ATTEMPTS = 48
# exhaustive coefficient search is allowed up to this Hom dimension over F_2 / F_3
EXHAUSTIVE_HOM_DIM = 12


@dataclass(frozen=True, eq=False)
class Representation:
    quiver: Quiver
    field: Field
    dims: DimVector
    maps: Tuple[Matrix, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "dims", check_dims(self.quiver, self.dims))
        if len(self.maps) != len(self.quiver.arrows):
            raise DimensionError("one matrix per arrow is required")
        for k, ((s, t), m) in enumerate(zip(self.quiver.arrows, self.maps)):
            if m.field != self.field:
                raise Incompatible(f"matrix on arrow {k} is over {m.field.name}, expected {self.field.name}")
            if m.shape != (self.dims[t - 1], self.dims[s - 1]):
                raise DimensionError(
                    f"arrow {s}->{t}: matrix shape {m.shape} != ({self.dims[t - 1]}, {self.dims[s - 1]})")

    @classmethod
    def from_lists(cls, quiver: Quiver, fld: Field, dims: Sequence[int],
                   maps: Sequence[Sequence[Sequence[object]]]) -> "Representation":
        dims = check_dims(quiver, dims)
        mats = []
        for (s, t), rows in zip(quiver.arrows, maps):
            mats.append(Matrix(fld, dims[t - 1], dims[s - 1], rows))
        return cls(quiver, fld, dims, tuple(mats))

    @classmethod
    def zero(cls, quiver: Quiver, fld: Field) -> "Representation":
        dims = (0,) * quiver.n_vertices
        return cls(quiver, fld, dims, tuple(Matrix.zeros(fld, 0, 0) for _ in quiver.arrows))

    def dim(self, x: int) -> int:
        return self.dims[x - 1]

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def map_of(self, k: int) -> Matrix:
        return self.maps[k]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Representation):
            return NotImplemented
        return (self.quiver == other.quiver and self.field == other.field
                and self.dims == other.dims and self.maps == other.maps)

    def __hash__(self) -> int:
        return hash((self.quiver, self.field, self.dims, self.maps))

    def __repr__(self) -> str:
        return f"Representation(dims={self.dims}, field={self.field.name})"

    def change_basis(self, bases: Sequence[Matrix]) -> "Representation":
        """Representation in new bases: columns of ``bases[x-1]`` span vertex x."""
        maps = []
        for (s, t), m in zip(self.quiver.arrows, self.maps):
            bt, bs = bases[t - 1], bases[s - 1]
            sol = bt.solve(m @ bs)
            if sol is None:
                raise DimensionError("basis change does not preserve the representation")
            maps.append(sol)
        dims = tuple(b.ncols for b in bases)
        return Representation(self.quiver, self.field, dims, tuple(maps))

    # -- serialization -----------------------------------------------------
    def to_dict(self) -> dict:
        f = self.field
        return {
            "dims": list(self.dims),
            "maps": [[[f.serialize(x) for x in row] for row in m.rows] for m in self.maps],
        }

    @classmethod
    def from_dict(cls, quiver: Quiver, fld: Field, doc: dict) -> "Representation":
        dims = [int(x) for x in doc["dims"]]
        raw = doc.get("maps", [])
        if len(raw) != len(quiver.arrows):
            raise DimensionError(f"expected {len(quiver.arrows)} arrow matrices, got {len(raw)}")
        mats = []
        for (s, t), rows in zip(quiver.arrows, raw):
            nr, nc = dims[t - 1], dims[s - 1]
            if nr == 0:
                rows = []
            mats.append(Matrix(fld, nr, nc, [[fld(x) for x in r] for r in rows]))
        return cls(quiver, fld, tuple(dims), tuple(mats))


def _same_category(a: Representation, b: Representation) -> None:
    if a.quiver != b.quiver or a.field != b.field:
        raise Incompatible("representations live over different quivers or fields")


@dataclass(frozen=True, eq=False)
class Morphism:
    source: Representation
    target: Representation
    blocks: Tuple[Matrix, ...]

    def __post_init__(self) -> None:
        _same_category(self.source, self.target)
        if len(self.blocks) != self.source.quiver.n_vertices:
            raise DimensionError("one block per vertex is required")
        for x, b in enumerate(self.blocks, start=1):
            if b.shape != (self.target.dim(x), self.source.dim(x)):
                raise DimensionError(f"block at vertex {x} has shape {b.shape}")

    @classmethod
    def identity(cls, m: Representation) -> "Morphism":
        return cls(m, m, tuple(Matrix.identity(m.field, d) for d in m.dims))

    @classmethod
    def zero(cls, src: Representation, tgt: Representation) -> "Morphism":
        return cls(src, tgt, tuple(Matrix.zeros(src.field, b, a) for a, b in zip(src.dims, tgt.dims)))

    def commutes(self) -> bool:
        for k, (s, t) in enumerate(self.source.quiver.arrows):
            if self.target.maps[k] @ self.blocks[s - 1] != self.blocks[t - 1] @ self.source.maps[k]:
                return False
        return True

    def __matmul__(self, other: "Morphism") -> "Morphism":
        """Composition ``self ∘ other``."""
        if other.target.dims != self.source.dims:
            raise DimensionError("morphisms are not composable")
        return Morphism(other.source, self.target, tuple(a @ b for a, b in zip(self.blocks, other.blocks)))

    def __add__(self, other: "Morphism") -> "Morphism":
        return Morphism(self.source, self.target, tuple(a + b for a, b in zip(self.blocks, other.blocks)))

    def scale(self, c: FieldScalar) -> "Morphism":
        return Morphism(self.source, self.target, tuple(b.scale(c) for b in self.blocks))

    def is_zero(self) -> bool:
        return all(b.is_zero() for b in self.blocks)

    def rank(self) -> int:
        return sum(b.rank() for b in self.blocks)

    def is_isomorphism(self) -> bool:
        return self.source.dims == self.target.dims and all(b.is_invertible() for b in self.blocks)

    def inverse(self) -> "Morphism":
        inv = []
        for b in self.blocks:
            i = b.inverse()
            if i is None:
                raise DimensionError("morphism is not invertible")
            inv.append(i)
        return Morphism(self.target, self.source, tuple(inv))

    def equals(self, other: "Morphism") -> bool:
        return self.blocks == other.blocks

    def flat(self) -> List[FieldScalar]:
        return [x for b in self.blocks for x in b.flatten()]


def combine(basis: Sequence[Morphism], coeffs: Sequence[FieldScalar]) -> Morphism:
    acc = Morphism.zero(basis[0].source, basis[0].target)
    for c, b in zip(coeffs, basis):
        if c:
            acc = acc + b.scale(c)
    return acc


# ---------------------------------------------------------------------------
# Hom spaces


def hom_space(m: Representation, n: Representation) -> List[Morphism]:
    """Basis of Hom(m, n) as the solution space of the commutation equations."""
    _same_category(m, n)
    q, f = m.quiver, m.field
    offsets: Dict[int, int] = {}
    total = 0
    for x in q.vertices:
        offsets[x] = total
        total += n.dim(x) * m.dim(x)
    if total == 0:
        return []
    rows: List[List[FieldScalar]] = []
    for k, (s, t) in enumerate(q.arrows):
        na, ma = n.maps[k], m.maps[k]
        ms, mt_ = m.dim(s), m.dim(t)
        ns, nt = n.dim(s), n.dim(t)
        # (N_a phi_s - phi_t M_a)[i, j] for i < nt, j < ms
        for i in range(nt):
            for j in range(ms):
                row = [f.zero] * total
                for kk in range(ns):
                    c = na[i, kk]
                    if c:
                        idx = offsets[s] + kk * ms + j
                        row[idx] = f.add(row[idx], c)
                for kk in range(mt_):
                    c = ma[kk, j]
                    if c:
                        idx = offsets[t] + i * mt_ + kk
                        row[idx] = f.sub(row[idx], c)
                rows.append(row)
    if rows:
        null = Matrix.from_rows(f, rows, total).nullspace()
    else:
        null = [[f.one if i == j else f.zero for i in range(total)] for j in range(total)]
    basis = []
    for vec in null:
        blocks = []
        for x in q.vertices:
            o, r, c = offsets[x], n.dim(x), m.dim(x)
            blocks.append(Matrix._raw(f, r, c, tuple(tuple(vec[o + i * c: o + (i + 1) * c]) for i in range(r))))
        basis.append(Morphism(m, n, tuple(blocks)))
    return basis


def direct_sum(parts: Sequence[Representation], quiver: Optional[Quiver] = None,
               fld: Optional[Field] = None) -> Representation:
    if not parts:
        if quiver is None or fld is None:
            raise Incompatible("empty direct sum needs an explicit quiver and field")
        return Representation.zero(quiver, fld)
    for p in parts[1:]:
        _same_category(parts[0], p)
    q, f = parts[0].quiver, parts[0].field
    from .exactnum import block_diagonal

    dims = tuple(sum(p.dims[i] for p in parts) for i in range(q.n_vertices))
    maps = tuple(block_diagonal(f, [p.maps[k] for p in parts]) for k in range(len(q.arrows)))
    return Representation(q, f, dims, maps)


def direct_sum_morphism(parts: Sequence[Morphism]) -> Morphism:
    from .exactnum import block_diagonal

    src = direct_sum([m.source for m in parts])
    tgt = direct_sum([m.target for m in parts])
    f = src.field
    blocks = tuple(block_diagonal(f, [m.blocks[i] for m in parts]) for i in range(src.quiver.n_vertices))
    return Morphism(src, tgt, blocks)


def _candidates(basis: Sequence[Morphism], rng: random.Random, attempts: int):
    """Random combinations, then basis elements and pairwise sums, then (small fields) everything."""
    f = basis[0].source.field
    m = len(basis)
    for _ in range(attempts):
        yield combine(basis, [f.random(rng) for _ in range(m)])
    for b in basis:
        yield b
    for i in range(m):
        for j in range(i + 1, m):
            yield basis[i] + basis[j]
    if f.p and f.p <= 3 and m <= EXHAUSTIVE_HOM_DIM:
        for coeffs in product(f.elements(), repeat=m):
            yield combine(basis, coeffs)


def is_isomorphic(m: Representation, n: Representation, rng: Optional[random.Random] = None,
                  attempts: int = 32) -> Optional[Morphism]:
    """An explicit isomorphism m -> n, or None."""
    _same_category(m, n)
    if m.dims != n.dims:
        return None
    if m.total_dim == 0:
        return Morphism.identity(m)
    basis = hom_space(m, n)
    if not basis:
        return None
    rng = rng or random.Random(0)
    for cand in _candidates(basis, rng, attempts):
        if cand.is_isomorphism():
            return cand
    return None


# ---------------------------------------------------------------------------
# projectives, injectives and Ext^1


def projective(q: Quiver, f: Field, x: int) -> Representation:
    """P_x: basis of vertex z = paths x ~> z; arrows append."""
    basis = {z: q.paths(x, z) for z in q.vertices}
    dims = tuple(len(basis[z]) for z in q.vertices)
    maps = []
    for k, (s, t) in enumerate(q.arrows):
        idx_t = {pth: i for i, pth in enumerate(basis[t])}
        rows = [[0] * dims[s - 1] for _ in range(dims[t - 1])]
        for j, pth in enumerate(basis[s]):
            rows[idx_t[pth + (k,)]][j] = 1
        maps.append(Matrix(f, dims[t - 1], dims[s - 1], rows))
    return Representation(q, f, dims, tuple(maps))


def injective(q: Quiver, f: Field, x: int) -> Representation:
    """I_x: vertex z carries the dual of paths z ~> x (dual path basis)."""
    basis = {z: q.paths(z, x) for z in q.vertices}
    dims = tuple(len(basis[z]) for z in q.vertices)
    maps = []
    for k, (s, t) in enumerate(q.arrows):
        idx_s = {pth: i for i, pth in enumerate(basis[s])}
        rows = [[0] * dims[s - 1] for _ in range(dims[t - 1])]
        for i, pth in enumerate(basis[t]):
            rows[i][idx_s[(k,) + pth]] = 1
        maps.append(Matrix(f, dims[t - 1], dims[s - 1], rows))
    return Representation(q, f, dims, tuple(maps))


def _projective_arrow_map(q: Quiver, f: Field, k: int) -> Morphism:
    """P_t -> P_s induced by arrow k: s -> t (prepend the arrow)."""
    s, t = q.arrows[k]
    ps, pt = projective(q, f, s), projective(q, f, t)
    blocks = []
    for z in q.vertices:
        src = q.paths(t, z)
        tgt = {pth: i for i, pth in enumerate(q.paths(s, z))}
        rows = [[0] * len(src) for _ in range(len(tgt))]
        for j, pth in enumerate(src):
            rows[tgt[(k,) + pth]][j] = 1
        blocks.append(Matrix(f, len(tgt), len(src), rows))
    return Morphism(pt, ps, tuple(blocks))


def _injective_arrow_map(q: Quiver, f: Field, k: int) -> Morphism:
    """I_t -> I_s induced by arrow k: s -> t (dual of appending the arrow)."""
    s, t = q.arrows[k]
    is_, it = injective(q, f, s), injective(q, f, t)
    blocks = []
    for z in q.vertices:
        src = {pth: i for i, pth in enumerate(q.paths(z, t))}
        tgt = q.paths(z, s)
        rows = [[0] * len(src) for _ in range(len(tgt))]
        for i, pth in enumerate(tgt):
            rows[i][src[pth + (k,)]] = 1
        blocks.append(Matrix(f, len(tgt), len(src), rows))
    return Morphism(it, is_, tuple(blocks))


class ExtSpace:
    """Ext^1(X, Y) as the cokernel of d: ⊕_v Hom(X_v, Y_v) -> ⊕_a Hom(X_s(a), Y_t(a)).

    Cochains are flattened arrow by arrow, each block row-major.
    """

    def __init__(self, x: Representation, y: Representation):
        _same_category(x, y)
        self.x, self.y = x, y
        q, f = x.quiver, x.field
        self.field = f
        self.offsets: List[int] = []
        total = 0
        for s, t in q.arrows:
            self.offsets.append(total)
            total += y.dim(t) * x.dim(s)
        self.n = total
        image = []
        for v in q.vertices:
            for i in range(y.dim(v)):
                for j in range(x.dim(v)):
                    image.append(self._coboundary(v, i, j))
        self.quotient = Complement(f, total, image)
        self.dim = self.quotient.dim

    def _coboundary(self, v: int, i: int, j: int) -> List[FieldScalar]:
        """d(E_ij at vertex v): (Y_a phi_s - phi_t X_a) per arrow."""
        q, f, x, y = self.x.quiver, self.field, self.x, self.y
        vec = [f.zero] * self.n
        for k, (s, t) in enumerate(q.arrows):
            o, cols = self.offsets[k], x.dim(s)
            if s == v:
                ya = y.maps[k]
                for r in range(y.dim(t)):
                    c = ya[r, i]
                    if c:
                        vec[o + r * cols + j] = f.add(vec[o + r * cols + j], c)
            if t == v:
                xa = x.maps[k]
                for c_ in range(cols):
                    c = xa[j, c_]
                    if c:
                        vec[o + i * cols + c_] = f.sub(vec[o + i * cols + c_], c)
        return vec

    def unflatten(self, vec: Sequence[FieldScalar]) -> List[Matrix]:
        q, f = self.x.quiver, self.field
        out = []
        for k, (s, t) in enumerate(q.arrows):
            o, r, c = self.offsets[k], self.y.dim(t), self.x.dim(s)
            out.append(Matrix._raw(f, r, c, tuple(tuple(vec[o + i * c: o + (i + 1) * c]) for i in range(r))))
        return out

    @staticmethod
    def flatten(mats: Sequence[Matrix]) -> List[FieldScalar]:
        return [v for m in mats for v in m.flatten()]

    def section(self) -> List[List[FieldScalar]]:
        return self.quotient.section()

    def project(self, vec: Sequence[FieldScalar]) -> List[FieldScalar]:
        return self.quotient.project(vec)


def pullback_matrix(src: ExtSpace, dst: ExtSpace, h: Morphism) -> Matrix:
    """Ext^1(X, Y) -> Ext^1(X', Y) induced by h: X' -> X, in quotient bases."""
    q, f = h.source.quiver, src.field
    cols = []
    for vec in src.section():
        mats = src.unflatten(vec)
        pulled = [m @ h.blocks[s - 1] for m, (s, _) in zip(mats, q.arrows)]
        cols.append(dst.project(ExtSpace.flatten(pulled)))
    return Matrix.from_columns(f, dst.dim, cols)


def pushforward_matrix(src: ExtSpace, dst: ExtSpace, h: Morphism) -> Matrix:
    """Ext^1(X, Y) -> Ext^1(X, Y') induced by h: Y -> Y', in quotient bases."""
    q, f = h.source.quiver, src.field
    cols = []
    for vec in src.section():
        mats = src.unflatten(vec)
        pushed = [h.blocks[t - 1] @ m for m, (_, t) in zip(mats, q.arrows)]
        cols.append(dst.project(ExtSpace.flatten(pushed)))
    return Matrix.from_columns(f, dst.dim, cols)


def ar_translate(m: Representation, direction: str = "TauInverse") -> Representation:
    """AR translate computed homologically.

    ``TauInverse``: vertex x carries Ext^1(I_x, M); arrows act by pulling back
    along the induced maps between injectives.  ``Tau``: vertex x carries the
    dual of Ext^1(M, P_x), with transposed pushforward matrices.
    """
    q, f = m.quiver, m.field
    if direction in ("TauInverse", "tau_inverse", "-1"):
        spaces = {x: ExtSpace(injective(q, f, x), m) for x in q.vertices}
        maps = []
        for k, (s, t) in enumerate(q.arrows):
            maps.append(pullback_matrix(spaces[s], spaces[t], _injective_arrow_map(q, f, k)))
        dims = tuple(spaces[x].dim for x in q.vertices)
        return Representation(q, f, dims, tuple(maps))
    if direction in ("Tau", "tau", "+1"):
        spaces = {x: ExtSpace(m, projective(q, f, x)) for x in q.vertices}
        maps = []
        for k, (s, t) in enumerate(q.arrows):
            a = pushforward_matrix(spaces[t], spaces[s], _projective_arrow_map(q, f, k))
            maps.append(a.transpose())
        dims = tuple(spaces[x].dim for x in q.vertices)
        return Representation(q, f, dims, tuple(maps))
    raise ValueError(f"unknown direction {direction!r}")


# ---------------------------------------------------------------------------
# decomposition


@dataclass
class Summand:
    module: Representation
    label: "GeomObject"
    multiplicity: int


@dataclass
class Decomposition:
    source: Representation
    summands: List[Summand]
    certificate: Morphism
    pieces: List[Tuple["GeomObject", Morphism]] = field(default_factory=list)

    @property
    def count(self) -> int:
        return sum(s.multiplicity for s in self.summands)

    def verify(self) -> bool:
        cert = self.certificate
        if not cert.commutes() or not cert.is_isomorphism():
            return False
        dims = [0] * self.source.quiver.n_vertices
        for s in self.summands:
            for i, d in enumerate(s.module.dims):
                dims[i] += s.multiplicity * d
        return tuple(dims) == self.source.dims


def _block_matrix_total(theta: Morphism) -> List[Matrix]:
    return list(theta.blocks)


def _split_by(theta: Morphism, rep: Representation) -> Optional[List[Tuple[Representation, Morphism]]]:
    """Fitting decomposition along the distinct irreducible factors of theta's char poly."""
    f = rep.field
    cp = Poly(f, [1])
    for b in theta.blocks:
        if b.nrows:
            cp = cp * char_poly(b)
    facs = factor(cp)
    if len(facs) < 2:
        return None
    parts = []
    for g, e in facs:
        h = g ** e
        bases = []
        for b in theta.blocks:
            if b.nrows == 0:
                bases.append(Matrix.zeros(f, 0, 0))
                continue
            ker = b.eval_poly(h).nullspace()
            bases.append(Matrix.from_columns(f, b.nrows, ker) if ker else Matrix.zeros(f, b.nrows, 0))
        sub = rep.change_basis(bases)
        parts.append((sub, Morphism(sub, rep, tuple(bases))))
    return parts


def _split(rep: Representation, rng: random.Random) -> List[Tuple["GeomObject", Representation, Morphism]]:
    from . import geom

    if rep.total_dim == 0:
        return []
    try:
        label = geom.classify(rep)
        canon = geom.canonical_module(rep.quiver, rep.field, label)
        iso = is_isomorphic(canon, rep, rng)
        if iso is not None:
            return [(label, canon, iso)]
    except NotIndecomposable:
        pass
    basis = hom_space(rep, rep)
    for theta in _candidates(basis, rng, RANDOM_ATTEMPTS):
        parts = _split_by(theta, rep)
        if parts is None:
            continue
        out = []
        for sub, inc in parts:
            for label, canon, mor in _split(sub, rng):
                out.append((label, canon, inc @ mor))
        return out
    raise CertificateFailure(f"could not split or certify a piece with dims {rep.dims}")


def decompose(m: Representation, seed: int = 0) -> Decomposition:
    """Indecomposable summands with canonical forms and an explicit isomorphism."""
    from . import geom

    rng = random.Random(seed)
    pieces = _split(m, rng)
    pieces.sort(key=lambda t: geom.sort_key(t[0]))
    grouped: Dict[object, Summand] = {}
    order: List[object] = []
    for label, canon, _ in pieces:
        if label in grouped:
            grouped[label].multiplicity += 1
        else:
            grouped[label] = Summand(canon, label, 1)
            order.append(label)
    summands = [grouped[k] for k in order]
    f, q = m.field, m.quiver
    blocks = []
    for x in q.vertices:
        cols: List[List[FieldScalar]] = []
        for _, _, mor in pieces:
            cols.extend(mor.blocks[x - 1].columns())
        blocks.append(Matrix.from_columns(f, m.dim(x), cols) if cols else Matrix.zeros(f, m.dim(x), 0))
    total = direct_sum([c for _, c, _ in pieces], q, f)
    cert = Morphism(total, m, tuple(blocks))
    if not cert.is_isomorphism() or not cert.commutes():
        raise CertificateFailure("assembled certificate is not an isomorphism")
    return Decomposition(m, summands, cert, [(lab, mor) for lab, _, mor in pieces])
