"""Quivers of type A_n and non-cyclically oriented Ã_{p,q}.

Vertices are numbered ``1..n``.  For a cycle the *clockwise* traversal
starts at vertex 1 and steps to its smaller-numbered neighbour; ``p`` counts
arrows pointing along that traversal and ``q`` the rest.  If a document
declares ``p``/``q`` explicitly and they disagree with this default, the
traversal is reversed.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import CyclicOrientation, DimensionError, InputError, MalformedQuiver, Unsupported

Arrow = Tuple[int, int]
DimVector = Tuple[int, ...]


class QuiverKind(enum.Enum):
    LINE_A = "line"
    CYCLE_ATILDE = "cycle"


@dataclass(frozen=True)
class Quiver:
    n_vertices: int
    arrows: Tuple[Arrow, ...]
    kind: QuiverKind
    declared_pq: Optional[Tuple[int, int]] = field(default=None, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "arrows", tuple((int(s), int(t)) for s, t in self.arrows))

    # -- constructors ------------------------------------------------------
    @classmethod
    def line(cls, arrows: Sequence[Arrow], n_vertices: Optional[int] = None) -> "Quiver":
        n = n_vertices if n_vertices is not None else (max(max(a) for a in arrows) if arrows else 1)
        q = cls(n, tuple(arrows), QuiverKind.LINE_A)
        validate(q)
        return q

    @classmethod
    def equioriented(cls, n: int) -> "Quiver":
        return cls.line([(i, i + 1) for i in range(1, n)], n)

    @classmethod
    def cycle(cls, arrows: Sequence[Arrow], n_vertices: Optional[int] = None,
              pq: Optional[Tuple[int, int]] = None) -> "Quiver":
        n = n_vertices if n_vertices is not None else max(max(a) for a in arrows)
        q = cls(n, tuple(arrows), QuiverKind.CYCLE_ATILDE, pq)
        validate(q)
        return q

    @classmethod
    def kronecker(cls) -> "Quiver":
        """Two parallel arrows 1 -> 2 (the r = 1 level-set quiver)."""
        return cls.cycle([(1, 2), (1, 2)], 2)

    # -- basic structure ---------------------------------------------------
    @property
    def vertices(self) -> range:
        return range(1, self.n_vertices + 1)

    @property
    def is_cycle(self) -> bool:
        return self.kind is QuiverKind.CYCLE_ATILDE

    @cached_property
    def out_arrows(self) -> Dict[int, List[int]]:
        out: Dict[int, List[int]] = {v: [] for v in self.vertices}
        for k, (s, _) in enumerate(self.arrows):
            out[s].append(k)
        return out

    @cached_property
    def in_arrows(self) -> Dict[int, List[int]]:
        inn: Dict[int, List[int]] = {v: [] for v in self.vertices}
        for k, (_, t) in enumerate(self.arrows):
            inn[t].append(k)
        return inn

    def sinks(self) -> List[int]:
        return [v for v in self.vertices if not self.out_arrows[v]]

    def sources(self) -> List[int]:
        return [v for v in self.vertices if not self.in_arrows[v]]

    @cached_property
    def _paths(self) -> Dict[Tuple[int, int], List[Tuple[int, ...]]]:
        """All paths (as arrow-index tuples) between ordered vertex pairs."""
        table: Dict[Tuple[int, int], List[Tuple[int, ...]]] = {}
        for x in self.vertices:
            stack: List[Tuple[int, Tuple[int, ...]]] = [(x, ())]
            while stack:
                v, path = stack.pop()
                table.setdefault((x, v), []).append(path)
                if len(path) > self.n_vertices:
                    raise CyclicOrientation("quiver has an oriented cycle")
                for k in self.out_arrows[v]:
                    stack.append((self.arrows[k][1], path + (k,)))
        for key in table:
            table[key].sort()
        return table

    def paths(self, x: int, y: int) -> List[Tuple[int, ...]]:
        return self._paths.get((x, y), [])

    # -- cycle combinatorics -----------------------------------------------
    @cached_property
    def _cycle_data(self) -> Tuple[Tuple[int, ...], Tuple[int, ...], Tuple[bool, ...]]:
        if not self.is_cycle:
            raise Unsupported("cycle data requested for a type A quiver")
        order, gaps = _traverse_cycle(self, reverse=False)
        cw = tuple(self.arrows[k] == (order[g], order[(g + 1) % len(order)]) for g, k in enumerate(gaps))
        if self.declared_pq is not None and sum(cw) != self.declared_pq[0]:
            order, gaps = _traverse_cycle(self, reverse=True)
            cw = tuple(self.arrows[k] == (order[g], order[(g + 1) % len(order)]) for g, k in enumerate(gaps))
        return order, gaps, cw

    @property
    def cycle_order(self) -> Tuple[int, ...]:
        """Vertices in clockwise order starting at vertex 1."""
        return self._cycle_data[0]

    @property
    def gap_arrows(self) -> Tuple[int, ...]:
        """Arrow index joining ``cycle_order[g]`` and ``cycle_order[g+1]``."""
        return self._cycle_data[1]

    @property
    def gap_clockwise(self) -> Tuple[bool, ...]:
        return self._cycle_data[2]

    @cached_property
    def position(self) -> Dict[int, int]:
        """Vertex -> index in the clockwise order (cover position mod n)."""
        return {v: i for i, v in enumerate(self.cycle_order)}

    @cached_property
    def arrow_gap(self) -> Dict[int, int]:
        return {k: g for g, k in enumerate(self.gap_arrows)}

    @property
    def p(self) -> int:
        return sum(self.gap_clockwise)

    @property
    def q(self) -> int:
        return self.n_vertices - self.p

    # -- line combinatorics ------------------------------------------------
    @cached_property
    def line_order(self) -> Tuple[int, ...]:
        if self.is_cycle:
            raise Unsupported("line order requested for a cycle")
        if self.n_vertices == 1:
            return (1,)
        nbrs: Dict[int, List[int]] = {v: [] for v in self.vertices}
        for s, t in self.arrows:
            nbrs[s].append(t)
            nbrs[t].append(s)
        ends = sorted(v for v in self.vertices if len(nbrs[v]) == 1)
        order = [ends[0]]
        prev = None
        while len(order) < self.n_vertices:
            cur = order[-1]
            nxt = [w for w in nbrs[cur] if w != prev]
            prev = cur
            order.append(nxt[0])
        return tuple(order)

    @property
    def is_equioriented(self) -> bool:
        """Type A with every arrow pointing from path position i to i+1."""
        if self.is_cycle:
            return False
        pos = {v: i for i, v in enumerate(self.line_order)}
        return all(pos[t] == pos[s] + 1 for s, t in self.arrows)

    # -- serialization -----------------------------------------------------
    def to_dict(self) -> dict:
        out: dict = {"kind": self.kind.value, "n_vertices": self.n_vertices,
                     "arrows": [list(a) for a in self.arrows]}
        if self.is_cycle and self.declared_pq is not None:
            out["p"], out["q"] = self.declared_pq
        return out

    @classmethod
    def from_dict(cls, doc: dict) -> "Quiver":
        try:
            kind = QuiverKind(doc.get("kind", "cycle"))
            arrows = [(int(a[0]), int(a[1])) for a in doc["arrows"]]
            n = int(doc.get("n_vertices") or max([max(a) for a in arrows] or [1]))
        except (KeyError, TypeError, ValueError, IndexError) as exc:
            raise InputError(f"malformed quiver record: {exc}") from exc
        if kind is QuiverKind.LINE_A:
            return cls.line(arrows, n)
        pq = (int(doc["p"]), int(doc["q"])) if "p" in doc and "q" in doc else None
        return cls.cycle(arrows, n, pq)

    def __repr__(self) -> str:
        tag = f"Ã_{{{self.p},{self.q}}}" if self.is_cycle else f"A_{self.n_vertices}"
        return f"Quiver({tag}, arrows={list(self.arrows)})"


def _traverse_cycle(q: Quiver, reverse: bool) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    n = q.n_vertices
    incident: Dict[int, List[int]] = {v: [] for v in q.vertices}
    for k, (s, t) in enumerate(q.arrows):
        incident[s].append(k)
        incident[t].append(k)

    def other(k: int, v: int) -> int:
        s, t = q.arrows[k]
        return t if s == v else s

    start = 1
    first = sorted(incident[start], key=lambda k: (other(k, start), k))
    k0 = first[-1] if reverse else first[0]
    order = [start]
    gaps = [k0]
    used = {k0}
    cur = other(k0, start)
    while cur != start:
        order.append(cur)
        nxt = [k for k in incident[cur] if k not in used]
        k = nxt[0]
        used.add(k)
        gaps.append(k)
        cur = other(k, cur)
    if len(order) != n:
        raise MalformedQuiver("arrows do not form a single cycle through every vertex")
    return tuple(order), tuple(gaps)


def validate(q: Quiver) -> None:
    """Raise unless ``q`` is a path (type A) or a non-cyclic single cycle (type Ã)."""
    n = q.n_vertices
    if n < 1:
        raise MalformedQuiver("a quiver needs at least one vertex")
    for s, t in q.arrows:
        if not (1 <= s <= n and 1 <= t <= n):
            raise MalformedQuiver(f"arrow {s}->{t} references a missing vertex")
        if s == t:
            raise MalformedQuiver(f"loop at vertex {s}")
    degree = {v: 0 for v in q.vertices}
    for s, t in q.arrows:
        degree[s] += 1
        degree[t] += 1
    if q.kind is QuiverKind.LINE_A:
        if len(q.arrows) != n - 1:
            raise MalformedQuiver("type A quiver needs n - 1 arrows")
        if n > 1 and (sorted(degree.values()).count(1) != 2 or max(degree.values()) > 2):
            raise MalformedQuiver("type A quiver must be a simple path")
        if len({frozenset(a) for a in q.arrows}) != len(q.arrows):
            raise MalformedQuiver("repeated edge in a type A quiver")
        if n > 1:
            _ = q.line_order
            if len(set(q.line_order)) != n:
                raise MalformedQuiver("type A quiver is disconnected")
        return
    if n < 2 or len(q.arrows) != n or any(d != 2 for d in degree.values()):
        raise MalformedQuiver("type Ã quiver must be a single cycle (every vertex of degree 2)")
    if n > 2 and len({frozenset(a) for a in q.arrows}) != n:
        raise MalformedQuiver("repeated edge in a cycle with more than two vertices")
    order, gaps = _traverse_cycle(q, reverse=False)
    cw = [q.arrows[k] == (order[g], order[(g + 1) % n]) for g, k in enumerate(gaps)]
    p = sum(cw)
    if p == 0 or p == n:
        raise CyclicOrientation("the cycle is cyclically oriented")
    if q.declared_pq is not None:
        dp, dq = q.declared_pq
        if dp + dq != n or sorted((dp, dq)) != sorted((p, n - p)):
            raise MalformedQuiver(f"declared (p, q) = {q.declared_pq} does not match the arrows")


def check_dims(q: Quiver, d: Sequence[int]) -> DimVector:
    if len(d) != q.n_vertices:
        raise DimensionError(f"dimension vector has length {len(d)}, expected {q.n_vertices}")
    if any(int(x) < 0 for x in d):
        raise DimensionError("dimension vector entries must be non-negative")
    return tuple(int(x) for x in d)


def euler_form(q: Quiver, d1: Sequence[int], d2: Sequence[int]) -> int:
    """<d1, d2> = sum_x d1_x d2_x - sum_{a: x -> y} d1_x d2_y."""
    d1 = check_dims(q, d1)
    d2 = check_dims(q, d2)
    return sum(a * b for a, b in zip(d1, d2)) - sum(d1[s - 1] * d2[t - 1] for s, t in q.arrows)


def null_root(q: Quiver) -> DimVector:
    return (1,) * q.n_vertices


def defect(q: Quiver, d: Sequence[int]) -> int:
    """<null root, d>: negative on preprojectives, zero on regulars, positive on preinjectives."""
    if not q.is_cycle:
        raise Unsupported("defect is only defined for type Ã quivers")
    return euler_form(q, null_root(q), d)
