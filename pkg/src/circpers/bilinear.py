"""Exact search for solutions of bilinear systems over F_2.

A system is a list of equations ``sum_{(i, j) in S_k} x_i x_j = r_k`` (all
monomials have degree two, variables are bits).  The search is DPLL with
propagation by Gaussian elimination on the equations that have become
linear under the current partial assignment, so it is complete: ``None`` is
only returned after the whole tree has been refuted.
"""

from __future__ import annotations

from typing import Dict, List, Optional, Sequence, Set, Tuple

from .errors import ResourceBound

Monomial = Tuple[int, int]
Equation = Tuple[Sequence[Monomial], int]

# branching nodes explored before giving up
NODE_CAP = 200_000


class _Conflict(Exception):
    pass


class BilinearSystem:
    def __init__(self, n_vars: int, equations: Sequence[Equation]):
        self.n = n_vars
        eqs = []
        for mons, rhs in equations:
            # repeated monomials cancel in characteristic two
            counts: Dict[Monomial, int] = {}
            for i, j in mons:
                key = (i, j) if i <= j else (j, i)
                counts[key] = counts.get(key, 0) ^ 1
            kept = [m for m, c in counts.items() if c]
            if kept or rhs:
                eqs.append((kept, rhs & 1))
        self.equations = eqs
        self.nodes = 0

    # -- propagation ------------------------------------------------------
    def _reduce(self, assign: List[int]) -> Tuple[List[Tuple[int, int]], List[List[Monomial]], List[int]]:
        """Split every equation into (linear mask, rhs) or leftover quadratic parts."""
        linear: List[Tuple[int, int]] = []
        quad_parts: List[List[Monomial]] = []
        quad_lin: List[int] = []
        for mons, rhs in self.equations:
            mask = 0
            quad: List[Monomial] = []
            for i, j in mons:
                ai, aj = assign[i], assign[j]
                if ai == 0 or aj == 0:
                    continue
                if ai == 1 and aj == 1:
                    rhs ^= 1
                elif ai == 1:
                    mask ^= 1 << j
                elif aj == 1:
                    mask ^= 1 << i
                elif i == j:
                    mask ^= 1 << i
                else:
                    quad.append((i, j))
            if quad:
                if len(quad) == 1 and mask == 0 and rhs == 1:
                    # x_i x_j = 1 forces both bits
                    i, j = quad[0]
                    linear.append((1 << i, 1))
                    linear.append((1 << j, 1))
                else:
                    quad_parts.append(quad)
                    quad_lin.append(mask)
                continue
            if mask == 0:
                if rhs:
                    raise _Conflict
                continue
            linear.append((mask, rhs))
        return linear, quad_parts, quad_lin

    @staticmethod
    def _eliminate(rows: List[Tuple[int, int]]) -> Dict[int, Tuple[int, int]]:
        """Echelon form keyed by pivot bit; raises on 0 = 1."""
        basis: Dict[int, Tuple[int, int]] = {}
        for mask, rhs in rows:
            while mask:
                top = mask.bit_length() - 1
                if top not in basis:
                    basis[top] = (mask, rhs)
                    break
                bm, br = basis[top]
                mask ^= bm
                rhs ^= br
            else:
                if rhs:
                    raise _Conflict
        return basis

    def _propagate(self, assign: List[int]) -> Tuple[List[List[Monomial]], List[int]]:
        while True:
            linear, quad, quad_lin = self._reduce(assign)
            basis = self._eliminate(linear)
            # back-substitute to expose unit rows
            changed = False
            for top in sorted(basis):
                mask, rhs = basis[top]
                for other in sorted(basis, reverse=True):
                    if other < top and mask >> other & 1:
                        om, orr = basis[other]
                        mask ^= om
                        rhs ^= orr
                basis[top] = (mask, rhs)
                if mask & (mask - 1) == 0:
                    if assign[top] < 0:
                        assign[top] = rhs
                        changed = True
                    elif assign[top] != rhs:
                        raise _Conflict
            if not changed:
                self._last_basis = basis
                return quad, quad_lin

    # -- search -----------------------------------------------------------
    def solve(self, branch_vars: Optional[Sequence[int]] = None, node_cap: int = NODE_CAP) -> Optional[List[int]]:
        """A satisfying assignment (unconstrained bits set to 0) or None."""
        self.nodes = 0
        allowed: Optional[Set[int]] = set(branch_vars) if branch_vars is not None else None
        return self._search([-1] * self.n, allowed, node_cap)

    def _search(self, assign: List[int], allowed: Optional[Set[int]], cap: int) -> Optional[List[int]]:
        self.nodes += 1
        if self.nodes > cap:
            raise ResourceBound(f"bilinear search exceeded {cap} nodes")
        try:
            quad, _ = self._propagate(assign)
        except _Conflict:
            return None
        if not quad:
            return self._complete(assign)
        score: Dict[int, int] = {}
        for part in quad:
            for i, j in part:
                for v in (i, j):
                    if allowed is None or v in allowed:
                        score[v] = score.get(v, 0) + 1
        if not score:
            for part in quad:
                for i, j in part:
                    score[i] = score.get(i, 0) + 1
        var = max(score, key=lambda v: (score[v], -v))
        for value in (0, 1):
            trial = list(assign)
            trial[var] = value
            found = self._search(trial, allowed, cap)
            if found is not None:
                return found
        return None

    def _complete(self, assign: List[int]) -> List[int]:
        """All remaining equations are linear and consistent: solve them."""
        basis = self._last_basis
        out = [a if a >= 0 else 0 for a in assign]
        free_fixed = list(out)
        for top in sorted(basis):
            mask, rhs = basis[top]
            val = rhs
            rest = mask & ~(1 << top)
            while rest:
                b = rest.bit_length() - 1
                val ^= free_fixed[b]
                rest &= ~(1 << b)
            free_fixed[top] = val
        return free_fixed

    def check(self, x: Sequence[int]) -> bool:
        for mons, rhs in self.equations:
            s = 0
            for i, j in mons:
                s ^= x[i] & x[j]
            if s != rhs:
                return False
        return True
