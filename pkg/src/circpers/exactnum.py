"""Exact scalars, matrices and univariate polynomials over F_p or Q.

Scalars are plain Python values: ``int`` in ``[0, p)`` for a prime field and
``fractions.Fraction`` for the rationals.  A :class:`Field` instance carries
the arithmetic; :class:`Matrix` and :class:`Poly` hold a reference to it.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, isqrt
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple, Union

from .errors import DimensionError, DomainError, InputError, NonSplitField

FieldScalar = Union[int, Fraction]

MAX_PRIME = 2**31
# factorization over Q is only attempted up to this degree per irreducible piece
MAX_Q_FACTOR_DEGREE = 4


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    # deterministic Miller-Rabin bases for n < 3.3e24
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class Field:
    """Prime field F_p (``p`` prime) or the rationals (``p == 0``)."""

    p: int = 0

    def __post_init__(self) -> None:
        if self.p != 0 and (not is_prime(self.p) or self.p > MAX_PRIME):
            raise InputError(f"field characteristic {self.p} is not a prime <= 2^31")

    @classmethod
    def rationals(cls) -> "Field":
        return cls(0)

    @classmethod
    def prime(cls, p: int) -> "Field":
        return cls(p)

    @property
    def is_rational(self) -> bool:
        return self.p == 0

    @property
    def name(self) -> str:
        return "Q" if self.p == 0 else f"F_{self.p}"

    def __repr__(self) -> str:
        return f"Field({self.name})"

    # -- scalars ---------------------------------------------------------
    def __call__(self, x: object) -> FieldScalar:
        if self.p:
            if isinstance(x, Fraction):
                return x.numerator * pow(x.denominator, -1, self.p) % self.p
            if isinstance(x, str):
                return self(parse_rational(x))
            return int(x) % self.p
        if isinstance(x, str):
            return parse_rational(x)
        return Fraction(x)

    @property
    def zero(self) -> FieldScalar:
        return 0 if self.p else Fraction(0)

    @property
    def one(self) -> FieldScalar:
        return 1 if self.p else Fraction(1)

    def add(self, a: FieldScalar, b: FieldScalar) -> FieldScalar:
        return (a + b) % self.p if self.p else a + b

    def sub(self, a: FieldScalar, b: FieldScalar) -> FieldScalar:
        return (a - b) % self.p if self.p else a - b

    def mul(self, a: FieldScalar, b: FieldScalar) -> FieldScalar:
        return (a * b) % self.p if self.p else a * b

    def neg(self, a: FieldScalar) -> FieldScalar:
        return (-a) % self.p if self.p else -a

    def inv(self, a: FieldScalar) -> FieldScalar:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p) if self.p else 1 / a

    def div(self, a: FieldScalar, b: FieldScalar) -> FieldScalar:
        return self.mul(a, self.inv(b))

    def reduce(self, a: FieldScalar) -> FieldScalar:
        return a % self.p if self.p else a

    def elements(self) -> List[int]:
        if not self.p:
            raise DomainError("the rationals are not enumerable")
        return list(range(self.p))

    def nonzero_elements(self) -> List[int]:
        return self.elements()[1:]

    def random(self, rng: random.Random, bound: int = 3) -> FieldScalar:
        if self.p:
            return rng.randrange(self.p)
        return Fraction(rng.randint(-bound, bound))

    def serialize(self, a: FieldScalar) -> Union[int, str]:
        if self.p:
            return int(a)
        a = Fraction(a)
        return f"{a.numerator}/{a.denominator}"

    def signed(self, a: FieldScalar) -> FieldScalar:
        """Symmetric representative, used only for display."""
        if self.p and a > self.p // 2:
            return a - self.p
        return a


_RAT_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


def parse_rational(text: str) -> Fraction:
    m = _RAT_RE.match(text)
    if not m:
        raise InputError(f"cannot parse rational {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) else 1
    if den == 0:
        raise InputError(f"zero denominator in {text!r}")
    return Fraction(num, den)


# ---------------------------------------------------------------------------
# matrices


class Matrix:
    """Immutable dense matrix with an explicit shape (zero-size allowed)."""

    __slots__ = ("field", "nrows", "ncols", "rows", "_hash")

    def __init__(self, field: Field, nrows: int, ncols: int, rows: Iterable[Iterable[object]] = ()):
        self.field = field
        self.nrows = nrows
        self.ncols = ncols
        data = tuple(tuple(field(x) for x in r) for r in rows)
        if not data and nrows:
            data = tuple((field.zero,) * ncols for _ in range(nrows))
        if len(data) != nrows or any(len(r) != ncols for r in data):
            raise DimensionError(f"rows do not match declared shape {nrows}x{ncols}")
        self.rows = data
        self._hash: Optional[int] = None

    @classmethod
    def _raw(cls, field: Field, nrows: int, ncols: int, rows: Tuple[Tuple[FieldScalar, ...], ...]) -> "Matrix":
        m = cls.__new__(cls)
        m.field = field
        m.nrows = nrows
        m.ncols = ncols
        m.rows = rows
        m._hash = None
        return m

    @classmethod
    def from_rows(cls, field: Field, rows: Sequence[Sequence[object]], ncols: Optional[int] = None) -> "Matrix":
        rows = [list(r) for r in rows]
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        return cls(field, len(rows), ncols, rows)

    @classmethod
    def zeros(cls, field: Field, nrows: int, ncols: int) -> "Matrix":
        z = field.zero
        return cls._raw(field, nrows, ncols, tuple((z,) * ncols for _ in range(nrows)))

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        z, o = field.zero, field.one
        return cls._raw(field, n, n, tuple(tuple(o if i == j else z for j in range(n)) for i in range(n)))

    @classmethod
    def from_columns(cls, field: Field, nrows: int, cols: Sequence[Sequence[FieldScalar]]) -> "Matrix":
        return cls._raw(field, nrows, len(cols), tuple(tuple(c[i] for c in cols) for i in range(nrows)))

    @classmethod
    def scalar(cls, field: Field, n: int, c: FieldScalar) -> "Matrix":
        z = field.zero
        return cls._raw(field, n, n, tuple(tuple(c if i == j else z for j in range(n)) for i in range(n)))

    # -- basic protocol ----------------------------------------------------
    @property
    def shape(self) -> Tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, ij: Tuple[int, int]) -> FieldScalar:
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nrows, self.ncols, self.rows))
        return self._hash

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(self.field.signed(x)) for x in r) for r in self.rows)
        return f"Matrix({self.nrows}x{self.ncols}: [{body}])"

    def tolist(self) -> List[List[FieldScalar]]:
        return [list(r) for r in self.rows]

    def column(self, j: int) -> List[FieldScalar]:
        return [r[j] for r in self.rows]

    def columns(self) -> List[List[FieldScalar]]:
        return [self.column(j) for j in range(self.ncols)]

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.rows for x in r)

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    # -- arithmetic --------------------------------------------------------
    def _check_same(self, other: "Matrix") -> None:
        if self.shape != other.shape:
            raise DimensionError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        p = self.field.p
        if p:
            rows = tuple(tuple((a + b) % p for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows))
        else:
            rows = tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows))
        return Matrix._raw(self.field, self.nrows, self.ncols, rows)

    def __neg__(self) -> "Matrix":
        f = self.field
        return Matrix._raw(f, self.nrows, self.ncols, tuple(tuple(f.neg(a) for a in r) for r in self.rows))

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def scale(self, c: FieldScalar) -> "Matrix":
        f = self.field
        c = f(c)
        return Matrix._raw(f, self.nrows, self.ncols, tuple(tuple(f.mul(c, a) for a in r) for r in self.rows))

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        p = self.field.p
        cols = list(zip(*other.rows)) if other.nrows else [()] * other.ncols
        out = []
        for r in self.rows:
            nz = [(k, a) for k, a in enumerate(r) if a]
            if p:
                out.append(tuple(sum(a * c[k] for k, a in nz) % p for c in cols))
            else:
                out.append(tuple(sum((a * c[k] for k, a in nz), Fraction(0)) for c in cols))
        return Matrix._raw(self.field, self.nrows, other.ncols, tuple(out))

    def apply(self, vec: Sequence[FieldScalar]) -> List[FieldScalar]:
        if len(vec) != self.ncols:
            raise DimensionError("vector length does not match column count")
        p = self.field.p
        if p:
            return [sum(a * b for a, b in zip(r, vec)) % p for r in self.rows]
        return [sum((a * b for a, b in zip(r, vec)), Fraction(0)) for r in self.rows]

    def transpose(self) -> "Matrix":
        rows = tuple(zip(*self.rows)) if self.nrows else tuple(() for _ in range(self.ncols))
        return Matrix._raw(self.field, self.ncols, self.nrows, rows)

    T = property(transpose)

    def __pow__(self, k: int) -> "Matrix":
        if not self.is_square():
            raise DimensionError("power of a non-square matrix")
        result = Matrix.identity(self.field, self.nrows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def hstack(self, other: "Matrix") -> "Matrix":
        if self.nrows != other.nrows:
            raise DimensionError("hstack row mismatch")
        return Matrix._raw(self.field, self.nrows, self.ncols + other.ncols,
                           tuple(a + b for a, b in zip(self.rows, other.rows)))

    def vstack(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.ncols:
            raise DimensionError("vstack column mismatch")
        return Matrix._raw(self.field, self.nrows + other.nrows, self.ncols, self.rows + other.rows)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        return Matrix._raw(self.field, len(rows), len(cols),
                           tuple(tuple(self.rows[i][j] for j in cols) for i in rows))

    def flatten(self) -> List[FieldScalar]:
        return [x for r in self.rows for x in r]

    # -- elimination -------------------------------------------------------
    def rref(self) -> Tuple["Matrix", List[int]]:
        """Reduced row echelon form and pivot columns."""
        rows, pivots = _rref_rows(self.field, [list(r) for r in self.rows], self.ncols)
        return Matrix._raw(self.field, self.nrows, self.ncols, tuple(tuple(r) for r in rows)), pivots

    def rank(self) -> int:
        return len(_rref_rows(self.field, [list(r) for r in self.rows], self.ncols)[1])

    def nullspace(self) -> List[List[FieldScalar]]:
        """Basis of {x : self @ x = 0}, one vector per free column."""
        rows, pivots = _rref_rows(self.field, [list(r) for r in self.rows], self.ncols)
        return _nullspace_from_rref(self.field, rows, pivots, self.ncols)

    def column_space(self) -> List[List[FieldScalar]]:
        """Basis of the column space taken from the original columns."""
        _, pivots = _rref_rows(self.field, [list(r) for r in self.rows], self.ncols)
        return [self.column(j) for j in pivots]

    def solve(self, rhs: "Matrix") -> Optional["Matrix"]:
        """One solution X of self @ X = rhs, or None."""
        if rhs.nrows != self.nrows:
            raise DimensionError("right-hand side row mismatch")
        f = self.field
        aug = [list(a) + list(b) for a, b in zip(self.rows, rhs.rows)]
        rows, pivots = _rref_rows(f, aug, self.ncols + rhs.ncols, limit=self.ncols)
        for r in rows[len(pivots):]:
            if any(x != 0 for x in r[self.ncols:]):
                return None
        out = [[f.zero] * rhs.ncols for _ in range(self.ncols)]
        for i, pc in enumerate(pivots):
            out[pc] = rows[i][self.ncols:]
        return Matrix._raw(f, self.ncols, rhs.ncols, tuple(tuple(r) for r in out))

    def inverse(self) -> Optional["Matrix"]:
        if not self.is_square():
            raise DimensionError("inverse of a non-square matrix")
        x = self.solve(Matrix.identity(self.field, self.nrows))
        if x is None:
            return None
        if self.nrows and self.rank() < self.nrows:
            return None
        return x

    def is_invertible(self) -> bool:
        return self.is_square() and self.rank() == self.nrows

    def eval_poly(self, poly: "Poly") -> "Matrix":
        """Horner evaluation of ``poly`` at this square matrix."""
        if not self.is_square():
            raise DimensionError("polynomial of a non-square matrix")
        n = self.nrows
        acc = Matrix.zeros(self.field, n, n)
        for c in reversed(poly.coeffs):
            acc = acc @ self + Matrix.scalar(self.field, n, c)
        return acc


def block_diagonal(field: Field, blocks: Sequence[Matrix]) -> Matrix:
    nr = sum(b.nrows for b in blocks)
    nc = sum(b.ncols for b in blocks)
    z = field.zero
    rows = []
    c0 = 0
    for b in blocks:
        for r in b.rows:
            rows.append((z,) * c0 + r + (z,) * (nc - c0 - b.ncols))
        c0 += b.ncols
    return Matrix._raw(field, nr, nc, tuple(rows))


def _clear_denominators(row: List[Fraction]) -> List[int]:
    den = reduce(lambda a, b: a * b // gcd(a, b), (x.denominator for x in row), 1)
    return [int(x * den) for x in row]


def _primitive(row: List[int]) -> List[int]:
    g = reduce(gcd, row, 0)
    if g > 1:
        return [x // g for x in row]
    return row


def _rref_rows(field: Field, rows: List[List[FieldScalar]], ncols: int,
               limit: Optional[int] = None) -> Tuple[List[List[FieldScalar]], List[int]]:
    """Row reduce in place; pivots are only taken from the first ``limit`` columns.

    Over Q the elimination is fraction-free: rows are kept as primitive
    integer vectors and divided by their pivots only at the end.
    """
    limit = ncols if limit is None else limit
    p = field.p
    if not p:
        rows = [_clear_denominators(r) for r in rows]
    pivots: List[int] = []
    r = 0
    nrows = len(rows)
    for c in range(limit):
        if r >= nrows:
            break
        piv = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        if p:
            inv = pow(prow[c], -1, p)
            prow = [x * inv % p for x in prow]
            rows[r] = prow
            for i in range(nrows):
                if i != r and rows[i][c]:
                    a = rows[i][c]
                    rows[i] = [(x - a * y) % p for x, y in zip(rows[i], prow)]
        else:
            pc = prow[c]
            for i in range(nrows):
                if i != r and rows[i][c]:
                    a = rows[i][c]
                    rows[i] = _primitive([pc * x - a * y for x, y in zip(rows[i], prow)])
        pivots.append(c)
        r += 1
    if not p:
        out = []
        for i, row in enumerate(rows):
            if i < len(pivots):
                d = row[pivots[i]]
                out.append([Fraction(x, d) for x in row])
            else:
                out.append([Fraction(x) for x in row])
        rows = out
    return rows, pivots


def _nullspace_from_rref(field: Field, rows: List[List[FieldScalar]], pivots: List[int],
                         ncols: int) -> List[List[FieldScalar]]:
    pivset = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        v = [field.zero] * ncols
        v[free] = field.one
        for i, pc in enumerate(pivots):
            v[pc] = field.neg(rows[i][free])
        basis.append(v)
    return basis


class Complement:
    """A fixed complement of a subspace W of k^n, giving a basis of k^n / W.

    ``section`` lists standard basis vectors spanning the complement;
    ``project`` sends a vector to its coordinates in that quotient basis.
    """

    def __init__(self, field: Field, n: int, spanning: Sequence[Sequence[FieldScalar]]):
        self.field = field
        self.n = n
        if spanning:
            w = Matrix.from_columns(field, n, [list(v) for v in spanning])
            sub = w.column_space()
        else:
            sub = []
        self.sub_basis = sub
        # complement = standard vectors that are non-pivots of [sub | I]
        if sub:
            big = Matrix.from_columns(field, n, list(sub)).hstack(Matrix.identity(field, n))
        else:
            big = Matrix.identity(field, n)
        _, piv = big.rref()
        k = len(sub)
        self.free_coords = [c - k for c in piv if c >= k]
        self.dim = len(self.free_coords)
        cols = list(sub) + [[field.one if i == c else field.zero for i in range(n)] for c in self.free_coords]
        basis = Matrix.from_columns(field, n, cols) if n else Matrix.zeros(field, 0, 0)
        inv = basis.inverse() if n else basis
        assert inv is not None
        self._proj = inv.submatrix(list(range(k, n)), list(range(n)))

    def section(self) -> List[List[FieldScalar]]:
        f = self.field
        return [[f.one if i == c else f.zero for i in range(self.n)] for c in self.free_coords]

    def project(self, vec: Sequence[FieldScalar]) -> List[FieldScalar]:
        return self._proj.apply(list(vec))

    def projection_matrix(self) -> Matrix:
        return self._proj


# ---------------------------------------------------------------------------
# polynomials


class Poly:
    """Univariate polynomial, coefficients in ascending degree, trimmed."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs: Iterable[object]):
        cs = [field(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.field = field
        self.coeffs: Tuple[FieldScalar, ...] = tuple(cs)

    @classmethod
    def x(cls, field: Field) -> "Poly":
        return cls(field, [0, 1])

    @classmethod
    def constant(cls, field: Field, c: object) -> "Poly":
        return cls(field, [c])

    @classmethod
    def linear(cls, field: Field, root: object) -> "Poly":
        """Monic x - root."""
        return cls(field, [field.neg(field(root)), 1])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self) -> FieldScalar:
        return self.coeffs[-1] if self.coeffs else self.field.zero

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        inv = self.field.inv(self.lc)
        return Poly(self.field, [self.field.mul(c, inv) for c in self.coeffs])

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.lc == 1

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Poly) and self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.field.p, self.coeffs))

    def __lt__(self, other: "Poly") -> bool:
        return self.sort_key() < other.sort_key()

    def sort_key(self) -> Tuple:
        return (self.degree, tuple(reversed(self.coeffs)))

    def __add__(self, other: "Poly") -> "Poly":
        f = self.field
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [f.zero] * (n - len(self.coeffs))
        b = list(other.coeffs) + [f.zero] * (n - len(other.coeffs))
        return Poly(f, [f.add(x, y) for x, y in zip(a, b)])

    def __neg__(self) -> "Poly":
        return Poly(self.field, [self.field.neg(c) for c in self.coeffs])

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: Union["Poly", int, Fraction]) -> "Poly":
        f = self.field
        if not isinstance(other, Poly):
            c = f(other)
            return Poly(f, [f.mul(c, a) for a in self.coeffs])
        if self.is_zero() or other.is_zero():
            return Poly(f, [])
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Poly(f, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        result = Poly(self.field, [1])
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __divmod__(self, other: "Poly") -> Tuple["Poly", "Poly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        f = self.field
        rem = list(self.coeffs)
        dq = other.degree
        inv = f.inv(other.lc)
        q = [f.zero] * max(0, len(rem) - dq)
        for i in range(len(rem) - 1, dq - 1, -1):
            c = rem[i]
            if c == 0:
                continue
            t = f.mul(c, inv)
            q[i - dq] = t
            for j, b in enumerate(other.coeffs):
                rem[i - dq + j] = f.sub(rem[i - dq + j], f.mul(t, b))
        return Poly(f, q), Poly(f, rem[:dq] if dq > 0 else [])

    def __floordiv__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[1]

    def __call__(self, x: FieldScalar) -> FieldScalar:
        f = self.field
        acc = f.zero
        for c in reversed(self.coeffs):
            acc = f.add(f.mul(acc, x), c)
        return acc

    def derivative(self) -> "Poly":
        return Poly(self.field, [self.field.mul(i, c) for i, c in enumerate(self.coeffs)][1:])

    def pow_mod(self, k: int, mod: "Poly") -> "Poly":
        result = Poly(self.field, [1]) % mod
        base = self % mod
        while k:
            if k & 1:
                result = (result * base) % mod
            base = (base * base) % mod
            k >>= 1
        return result

    def __repr__(self) -> str:
        return f"Poly({self.field.name}: {self})"

    def __str__(self) -> str:
        return format_poly(self)


def poly_gcd(a: Poly, b: Poly) -> Poly:
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def format_poly(poly: Poly) -> str:
    if poly.is_zero():
        return "0"
    f = poly.field
    parts: List[str] = []
    for k in range(poly.degree, -1, -1):
        c = poly.coeffs[k]
        if c == 0:
            continue
        c = f.signed(c)
        sign = "-" if c < 0 else "+"
        mag = -c if c < 0 else c
        if k == 0:
            body = str(mag)
        else:
            mono = "x" if k == 1 else f"x^{k}"
            body = mono if mag == 1 else f"{mag}*{mono}"
        parts.append((sign, body))
    head_sign, head = parts[0]
    out = ("-" if head_sign == "-" else "") + head
    for sign, body in parts[1:]:
        out += sign + body
    return out


_TERM_RE = re.compile(r"([+-]?)([^+-]+)")


def parse_poly(field: Field, text: str) -> Poly:
    """Parse strings such as ``x^2+1``, ``x-1`` or ``2*x**3 - 1/2``."""
    s = text.replace(" ", "").replace("**", "^")
    if not s:
        raise InputError("empty polynomial")
    coeffs: dict = {}
    pos = 0
    for m in _TERM_RE.finditer(s):
        if m.start() != pos:
            raise InputError(f"cannot parse polynomial {text!r}")
        pos = m.end()
        sign, term = m.group(1), m.group(2)
        if "x" in term:
            cpart, _, epart = term.partition("x")
            cpart = cpart.rstrip("*")
            coef = parse_rational(cpart) if cpart else Fraction(1)
            if epart:
                if not epart.startswith("^"):
                    raise InputError(f"cannot parse polynomial {text!r}")
                try:
                    k = int(epart[1:])
                except ValueError as exc:
                    raise InputError(f"bad exponent in {text!r}") from exc
            else:
                k = 1
        else:
            coef = parse_rational(term)
            k = 0
        if sign == "-":
            coef = -coef
        coeffs[k] = coeffs.get(k, 0) + coef
    if pos != len(s):
        raise InputError(f"cannot parse polynomial {text!r}")
    deg = max(coeffs)
    return Poly(field, [field(coeffs.get(k, 0)) for k in range(deg + 1)])


# ---------------------------------------------------------------------------
# characteristic polynomial


def char_poly(m: Matrix) -> Poly:
    """det(xI - m) via Hessenberg reduction, exact over any field."""
    if not m.is_square():
        raise DimensionError(f"characteristic polynomial needs a square matrix, got {m.shape}")
    f = m.field
    n = m.nrows
    h = [list(r) for r in m.rows]
    for k in range(1, n - 1):
        piv = next((i for i in range(k, n) if h[i][k - 1] != 0), None)
        if piv is None:
            continue
        if piv != k:
            h[piv], h[k] = h[k], h[piv]
            for row in h:
                row[piv], row[k] = row[k], row[piv]
        t = h[k][k - 1]
        for i in range(k + 1, n):
            u = f.div(h[i][k - 1], t)
            if u == 0:
                continue
            h[i] = [f.sub(a, f.mul(u, b)) for a, b in zip(h[i], h[k])]
            for row in h:
                row[k] = f.add(row[k], f.mul(u, row[i]))
    polys = [Poly(f, [1])]
    x = Poly.x(f)
    for mm in range(1, n + 1):
        cur = (x - Poly.constant(f, h[mm - 1][mm - 1])) * polys[mm - 1]
        t = f.one
        for i in range(1, mm):
            t = f.mul(t, h[mm - i][mm - i - 1])
            c = f.mul(t, h[mm - i - 1][mm - 1])
            if c:
                cur = cur - polys[mm - i - 1] * c
        polys.append(cur)
    return polys[n]


# ---------------------------------------------------------------------------
# factorization

Factorization = List[Tuple[Poly, int]]


def factor(poly: Poly, seed: int = 0) -> Factorization:
    """Monic irreducible factors with multiplicities, sorted by degree then coefficients."""
    if poly.is_zero():
        raise DomainError("cannot factor the zero polynomial")
    f = poly.monic()
    if f.degree == 0:
        return []
    if poly.field.p:
        out = _factor_fp(f, random.Random(seed))
    else:
        out = _factor_q(f)
    merged: dict = {}
    for g, e in out:
        merged[g] = merged.get(g, 0) + e
    return sorted(merged.items(), key=lambda ge: ge[0].sort_key())


def expand(factors: Factorization, field: Field) -> Poly:
    acc = Poly(field, [1])
    for g, e in factors:
        acc = acc * (g ** e)
    return acc


def _squarefree_fp(f: Poly) -> List[Tuple[Poly, int]]:
    """Squarefree decomposition over F_p (Yun-style with p-th root handling)."""
    field = f.field
    p = field.p
    out: List[Tuple[Poly, int]] = []
    one = Poly(field, [1])
    c = poly_gcd(f, f.derivative())
    w = f // c
    i = 1
    while w != one:
        y = poly_gcd(w, c)
        fac = w // y
        if fac != one:
            out.append((fac.monic(), i))
        w = y
        c = c // y
        i += 1
    if c != one:
        # c is a p-th power: take the p-th root coefficient-wise (Frobenius is identity on F_p)
        root = Poly(field, [c.coeffs[k] for k in range(0, c.degree + 1, p)])
        for g, e in _squarefree_fp(root.monic()):
            out.append((g, e * p))
    return out


def _distinct_degree(f: Poly) -> List[Tuple[Poly, int]]:
    field = f.field
    p = field.p
    x = Poly.x(field)
    out = []
    h = x % f
    d = 1
    g = f
    while g.degree >= 2 * d:
        h = h.pow_mod(p, g)
        fac = poly_gcd(g, h - x)
        if fac.degree > 0:
            out.append((fac, d))
            g = g // fac
            h = h % g
        d += 1
    if g.degree > 0:
        out.append((g.monic(), g.degree))
    return out


def _equal_degree(f: Poly, d: int, rng: random.Random) -> List[Poly]:
    if f.degree == d:
        return [f.monic()]
    field = f.field
    p = field.p
    n = f.degree
    while True:
        a = Poly(field, [rng.randrange(p) for _ in range(n)])
        if a.degree < 1:
            continue
        if p == 2:
            # trace map a + a^2 + ... + a^(2^(d-1))
            t = a % f
            acc = t
            for _ in range(d - 1):
                t = (t * t) % f
                acc = acc + t
            b = acc
        else:
            b = a.pow_mod((p**d - 1) // 2, f) - Poly(field, [1])
        g = poly_gcd(f, b)
        if 0 < g.degree < n:
            return _equal_degree(g, d, rng) + _equal_degree(f // g, d, rng)


def _factor_fp(f: Poly, rng: random.Random) -> Factorization:
    out: Factorization = []
    for sq, e in _squarefree_fp(f):
        for part, d in _distinct_degree(sq):
            for g in _equal_degree(part, d, rng):
                out.append((g, e))
    return out


def _int_poly(f: Poly) -> List[int]:
    """Primitive integer polynomial proportional to f, positive leading coefficient."""
    ints = _primitive(_clear_denominators(list(f.coeffs)))
    if ints[-1] < 0:
        ints = [-c for c in ints]
    return ints


def _divisors(n: int) -> List[int]:
    n = abs(n)
    small, large = [], []
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
    return small + large[::-1]


def _squarefree_q(f: Poly) -> List[Tuple[Poly, int]]:
    out = []
    one = Poly(f.field, [1])
    c = poly_gcd(f, f.derivative())
    w = f // c
    i = 1
    while w.degree > 0:
        y = poly_gcd(w, c)
        fac = w // y
        if fac.degree > 0:
            out.append((fac.monic(), i))
        w = y
        c = c // y
        i += 1
    assert c == one or c.degree == 0
    return out


def _rational_roots(f: Poly) -> List[Fraction]:
    ints = _int_poly(f)
    roots = []
    if ints[0] == 0:
        roots.append(Fraction(0))
        k = next(i for i, c in enumerate(ints) if c != 0)
        ints = ints[k:]
    if len(ints) == 1:
        return roots
    for num in _divisors(ints[0]):
        for den in _divisors(ints[-1]):
            for r in (Fraction(num, den), Fraction(-num, den)):
                if r not in roots and f(r) == 0:
                    roots.append(r)
    return roots


def _quartic_split(f: Poly) -> Optional[Tuple[Poly, Poly]]:
    """Find a quadratic factor of a primitive quartic without rational roots (Kronecker)."""
    field = f.field
    ints = _int_poly(f)
    fi = Poly(field, ints)
    vals = [fi(Fraction(t)) for t in (0, 1, -1)]
    for d0 in _divisors(int(vals[0])):
        for d1 in _divisors(int(vals[1])):
            for s1 in (1, -1):
                for d2 in _divisors(int(vals[2])):
                    for s2 in (1, -1):
                        y0, y1, y2 = d0, s1 * d1, s2 * d2
                        b = Fraction(y1 - y2, 2)
                        a = Fraction(y1 + y2, 2) - y0
                        if a == 0 or b.denominator != 1 or a.denominator != 1:
                            continue
                        g = Poly(field, [y0, b, a])
                        q, r = divmod(fi, g)
                        if r.is_zero():
                            return g.monic(), q.monic()
    return None


def _factor_q(f: Poly) -> Factorization:
    out: Factorization = []
    for sq, e in _squarefree_q(f):
        rest = sq
        for r in _rational_roots(sq):
            lin = Poly.linear(f.field, r)
            out.append((lin, e))
            rest = rest // lin
        if rest.degree <= 0:
            continue
        if rest.degree <= 3:
            out.append((rest.monic(), e))
        elif rest.degree == MAX_Q_FACTOR_DEGREE:
            split = _quartic_split(rest)
            if split is None:
                out.append((rest.monic(), e))
            else:
                out.extend((g, e) for g in split)
        else:
            raise NonSplitField(
                f"factorization over Q beyond degree {MAX_Q_FACTOR_DEGREE} is unsupported: {rest}", rest)
    return out


def companion(poly: Poly) -> Matrix:
    """Companion matrix of a monic polynomial (ones on the subdiagonal)."""
    f = poly.field
    d = poly.degree
    rows = [[f.zero] * d for _ in range(d)]
    for i in range(1, d):
        rows[i][i - 1] = f.one
    for i in range(d):
        rows[i][d - 1] = f.neg(poly.coeffs[i])
    return Matrix.from_rows(f, rows, d)


def jordan_companion(poly: Poly, l: int) -> Matrix:
    """Block matrix with ``l`` companion blocks on the diagonal and identities above.

    Its characteristic and minimal polynomials are both ``poly**l`` when
    ``poly`` is irreducible, so it is the cyclic Jordan-type block.
    """
    f = poly.field
    d = poly.degree
    c = companion(poly)
    n = d * l
    rows = [[f.zero] * n for _ in range(n)]
    for b in range(l):
        for i in range(d):
            for j in range(d):
                rows[b * d + i][b * d + j] = c[i, j]
        if b + 1 < l:
            for i in range(d):
                rows[b * d + i][(b + 1) * d + i] = f.one
    return Matrix.from_rows(f, rows, n)


def block_shift(field: Field, d: int, l: int) -> Matrix:
    """The nilpotent block shift matching :func:`jordan_companion`'s superdiagonal."""
    n = d * l
    rows = [[field.zero] * n for _ in range(n)]
    for b in range(l - 1):
        for i in range(d):
            rows[b * d + i][(b + 1) * d + i] = field.one
    return Matrix.from_rows(field, rows, n)


def iter_vectors(field: Field, n: int) -> Iterator[Tuple[int, ...]]:
    """All vectors of F_p^n in lexicographic order."""
    from itertools import product

    return product(field.elements(), repeat=n)
