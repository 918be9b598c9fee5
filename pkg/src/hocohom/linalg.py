"""Exact dense linear algebra over the rationals and prime fields.

Scalars are `fractions.Fraction` over Q and plain ints in [0, p) over F_p.
Everything here is immutable after construction and every operation is a
pure function with canonical output: the row reduction below computes the
unique reduced row-echelon form of its input (leading entries 1, pivot
columns cleared, pivots strictly increasing), so subspace bases are
bit-identical across runs and directly diffable.

Prime-field elimination is vectorized with numpy int64 arithmetic; rational
elimination runs on integer-scaled rows with gcd normalization so Fraction
arithmetic never enters the inner loops.  Both paths are exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import numpy as np


class LinalgError(ValueError):
    pass


class DimensionMismatch(LinalgError):
    pass


class InconsistentSystem(LinalgError):
    """Raised when a linear system A x = b has no solution."""


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class Field:
    """A coefficient field: the rationals (p is None) or F_p for prime p."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None and not _is_prime(self.p):
            raise LinalgError(f"characteristic {self.p} is not prime")

    @staticmethod
    def rationals() -> "Field":
        return Field(None)

    @staticmethod
    def prime(p: int) -> "Field":
        return Field(p)

    @staticmethod
    def from_name(name: str) -> "Field":
        """Parse a field name: "Q" for the rationals, "F<p>" for a prime field."""
        text = name.strip()
        if text == "Q":
            return Field.rationals()
        if text.startswith("F") and text[1:].isdigit():
            return Field.prime(int(text[1:]))
        raise LinalgError(f"unknown field name {name!r} (expected 'Q' or 'F<p>')")

    @property
    def name(self) -> str:
        return "Q" if self.p is None else f"F{self.p}"

    @property
    def is_rational(self) -> bool:
        return self.p is None

    @property
    def characteristic(self) -> int:
        return 0 if self.p is None else self.p

    def zero(self):
        return Fraction(0) if self.p is None else 0

    def one(self):
        return Fraction(1) if self.p is None else 1

    def coerce(self, x):
        """Coerce an int, string, or Fraction to a canonical scalar."""
        if self.p is None:
            if isinstance(x, str):
                return Fraction(x)
            return Fraction(x)
        if isinstance(x, str):
            x = Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise LinalgError(f"{x} has no image in F_{self.p}")
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return int(x) % self.p

    def add(self, a, b):
        return a + b if self.p is None else (a + b) % self.p

    def sub(self, a, b):
        return a - b if self.p is None else (a - b) % self.p

    def mul(self, a, b):
        return a * b if self.p is None else (a * b) % self.p

    def neg(self, a):
        return -a if self.p is None else (-a) % self.p

    def inv(self, a):
        if self.p is None:
            if a == 0:
                raise ZeroDivisionError("inverse of zero")
            return 1 / a
        return pow(a, -1, self.p)

    def format(self, a) -> str:
        return str(a)


class Matrix:
    """Immutable dense matrix with exact entries over a fixed field."""

    __slots__ = ("field", "rows", "cols", "entries")

    def __init__(self, field: Field, entries, rows: int | None = None, cols: int | None = None):
        data = tuple(tuple(field.coerce(x) for x in row) for row in entries)
        if rows is None:
            rows = len(data)
        if cols is None:
            cols = len(data[0]) if data else 0
        if len(data) != rows or any(len(r) != cols for r in data):
            raise DimensionMismatch("ragged or mis-sized entry grid")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", data)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    @staticmethod
    def zeros(field: Field, rows: int, cols: int) -> "Matrix":
        zero = field.zero()
        return Matrix(field, [[zero] * cols for _ in range(rows)], rows, cols)

    @staticmethod
    def identity(field: Field, n: int) -> "Matrix":
        zero, one = field.zero(), field.one()
        return Matrix(field, [[one if i == j else zero for j in range(n)] for i in range(n)], n, n)

    @staticmethod
    def from_columns(field: Field, columns, rows: int | None = None) -> "Matrix":
        columns = [list(c) for c in columns]
        if not columns:
            if rows is None:
                raise DimensionMismatch("row count required for a matrix with no columns")
            return Matrix.zeros(field, rows, 0)
        n = len(columns[0])
        grid = [[columns[j][i] for j in range(len(columns))] for i in range(n)]
        return Matrix(field, grid, n, len(columns))

    @staticmethod
    def vstack(field: Field, mats, cols: int | None = None) -> "Matrix":
        mats = list(mats)
        if not mats:
            if cols is None:
                raise DimensionMismatch("column count required for an empty stack")
            return Matrix.zeros(field, 0, cols)
        width = mats[0].cols
        grid = []
        for m in mats:
            if m.cols != width:
                raise DimensionMismatch("vstack width mismatch")
            grid.extend(m.entries)
        return Matrix(field, grid, sum(m.rows for m in mats), width)

    @staticmethod
    def hstack(field: Field, mats) -> "Matrix":
        mats = list(mats)
        if not mats:
            raise DimensionMismatch("hstack of nothing")
        height = mats[0].rows
        grid = []
        for i in range(height):
            row = []
            for m in mats:
                if m.rows != height:
                    raise DimensionMismatch("hstack height mismatch")
                row.extend(m.entries[i])
            grid.append(row)
        return Matrix(field, grid, height, sum(m.cols for m in mats))

    @staticmethod
    def block(field: Field, grid, row_dims, col_dims) -> "Matrix":
        """Assemble a block matrix; None blocks are zero of the declared shape."""
        rows = []
        for bi, block_row in enumerate(grid):
            strips = []
            for bj, blk in enumerate(block_row):
                if blk is None:
                    blk = Matrix.zeros(field, row_dims[bi], col_dims[bj])
                if blk.rows != row_dims[bi] or blk.cols != col_dims[bj]:
                    raise DimensionMismatch("block shape mismatch")
                strips.append(blk)
            rows.append(Matrix.hstack(field, strips) if strips else Matrix.zeros(field, row_dims[bi], 0))
        return Matrix.vstack(field, rows, cols=sum(col_dims))

    def row(self, i: int) -> tuple:
        return self.entries[i]

    def column(self, j: int) -> tuple:
        return tuple(self.entries[i][j] for i in range(self.rows))

    def columns(self) -> list[tuple]:
        return [self.column(j) for j in range(self.cols)]

    def take_rows(self, indices) -> "Matrix":
        return Matrix(self.field, [self.entries[i] for i in indices], len(list(indices)), self.cols)

    def transpose(self) -> "Matrix":
        return Matrix(self.field, [self.column(j) for j in range(self.cols)], self.cols, self.rows)

    def is_zero(self) -> bool:
        zero = self.field.zero()
        return all(x == zero for row in self.entries for x in row)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Matrix) and self.field == other.field
                and self.rows == other.rows and self.cols == other.cols
                and self.entries == other.entries)

    def __hash__(self) -> int:
        return hash((self.field, self.rows, self.cols, self.entries))

    def __repr__(self) -> str:
        return f"Matrix({self.field.name}, {self.rows}x{self.cols})"

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same_shape(other)
        f = self.field
        return Matrix(f, [[f.add(a, b) for a, b in zip(ra, rb)]
                          for ra, rb in zip(self.entries, other.entries)], self.rows, self.cols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_same_shape(other)
        f = self.field
        return Matrix(f, [[f.sub(a, b) for a, b in zip(ra, rb)]
                          for ra, rb in zip(self.entries, other.entries)], self.rows, self.cols)

    def __neg__(self) -> "Matrix":
        f = self.field
        return Matrix(f, [[f.neg(a) for a in row] for row in self.entries], self.rows, self.cols)

    def scale(self, s) -> "Matrix":
        f = self.field
        s = f.coerce(s)
        return Matrix(f, [[f.mul(s, a) for a in row] for row in self.entries], self.rows, self.cols)

    def _check_same_shape(self, other: "Matrix"):
        if self.field != other.field or self.rows != other.rows or self.cols != other.cols:
            raise DimensionMismatch("shape or field mismatch")

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.field != other.field or self.cols != other.rows:
            raise DimensionMismatch(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        f = self.field
        if self.rows == 0 or other.cols == 0:
            return Matrix.zeros(f, self.rows, other.cols)
        if self.cols == 0:
            return Matrix.zeros(f, self.rows, other.cols)
        if f.p is not None:
            a = np.array(self.entries, dtype=np.int64)
            b = np.array(other.entries, dtype=np.int64)
            c = (a @ b) % f.p
            return Matrix(f, c.tolist(), self.rows, other.cols)
        bt = other.transpose().entries
        grid = []
        for row in self.entries:
            out = []
            for col in bt:
                acc = Fraction(0)
                for x, y in zip(row, col):
                    if x and y:
                        acc += x * y
                out.append(acc)
            grid.append(out)
        return Matrix(f, grid, self.rows, other.cols)

    def apply(self, vec) -> tuple:
        """Matrix times column vector, returned as a tuple."""
        if len(vec) != self.cols:
            raise DimensionMismatch("vector length mismatch")
        f = self.field
        if f.p is not None:
            if self.rows == 0:
                return ()
            if self.cols == 0:
                return (0,) * self.rows
            a = np.array(self.entries, dtype=np.int64)
            v = np.array([f.coerce(x) for x in vec], dtype=np.int64)
            return tuple(int(t) for t in (a @ v) % f.p)
        out = []
        for row in self.entries:
            acc = Fraction(0)
            for x, y in zip(row, vec):
                if x and y:
                    acc += x * y
            out.append(acc)
        return tuple(out)


def vec_is_zero(field: Field, v) -> bool:
    zero = field.zero()
    return all(a == zero for a in v)

def unit_vector(field: Field, n: int, i: int) -> tuple:
    zero, one = field.zero(), field.one()
    return tuple(one if j == i else zero for j in range(n))


# ---------------------------------------------------------------------------
# row reduction

@dataclass(frozen=True)
class RrefResult:
    rank: int
    reduced: Matrix
    pivots: tuple[int, ...]


def _rref_modp(entries, rows: int, cols: int, p: int):
    a = np.array(entries, dtype=np.int64).reshape(rows, cols) % p
    r = 0
    pivots = []
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        inv = pow(int(a[r, c]), -1, p)
        if inv != 1:
            a[r, c:] = (a[r, c:] * inv) % p
        others = np.nonzero(a[:, c])[0]
        others = others[others != r]
        if others.size:
            a[np.ix_(others, range(c, cols))] = (
                a[np.ix_(others, range(c, cols))] - np.outer(a[others, c], a[r, c:])
            ) % p
        pivots.append(c)
        r += 1
    return r, a.tolist(), tuple(pivots)


def _row_lcm_scale(row):
    den = 1
    for x in row:
        d = x.denominator
        den = den * d // gcd(den, d)
    return [int(x * den) for x in row]


def _normalize_int_row(row):
    g = 0
    for x in row:
        g = gcd(g, x)
        if g == 1:
            break
    if g > 1:
        row = [x // g for x in row]
    return row


def _rref_rational(entries, rows: int, cols: int):
    work = [_row_lcm_scale(row) for row in entries]
    r = 0
    pivots = []
    for c in range(cols):
        if r == rows:
            break
        sel = None
        for i in range(r, rows):
            if work[i][c]:
                sel = i
                break
        if sel is None:
            continue
        work[r], work[sel] = work[sel], work[r]
        piv = work[r]
        a = piv[c]
        for i in range(rows):
            if i == r:
                continue
            b = work[i][c]
            if b:
                row = work[i]
                work[i] = _normalize_int_row([a * x - b * y for x, y in zip(row, piv)])
        pivots.append(c)
        r += 1
    out = []
    for i in range(rows):
        if i < r:
            lead = work[i][pivots[i]]
            out.append([Fraction(x, lead) for x in work[i]])
        else:
            out.append([Fraction(0)] * cols)
    return r, out, tuple(pivots)


def rref(m: Matrix) -> RrefResult:
    """The unique reduced row-echelon form of m, with rank and pivot columns."""
    if m.rows == 0 or m.cols == 0:
        return RrefResult(0, m, ())
    if m.field.p is not None:
        rank, grid, pivots = _rref_modp(m.entries, m.rows, m.cols, m.field.p)
    else:
        rank, grid, pivots = _rref_rational(m.entries, m.rows, m.cols)
    return RrefResult(rank, Matrix(m.field, grid, m.rows, m.cols), pivots)


def rank(m: Matrix) -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    if m.field.p is not None:
        return _rank_modp_array(np.array(m.entries, dtype=np.int64), m.field.p)
    return _rank_int_rows([_row_lcm_scale(row) for row in m.entries], m.cols)


def _rank_modp_array(a: np.ndarray, p: int) -> int:
    """Rank over F_p of an int64 array; forward elimination only."""
    a = a % p
    rows, cols = a.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        inv = pow(int(a[r, c]), -1, p)
        if inv != 1:
            a[r, c:] = (a[r, c:] * inv) % p
        below = r + 1 + np.nonzero(a[r + 1:, c])[0]
        if below.size:
            a[np.ix_(below, range(c, cols))] = (
                a[np.ix_(below, range(c, cols))] - np.outer(a[below, c], a[r, c:])
            ) % p
        r += 1
    return r


def _rank_int_rows(work, cols: int) -> int:
    """Rank over Q of integer rows; destructive, pivot chosen smallest |value|."""
    rows = len(work)
    r = 0
    for c in range(cols):
        if r == rows:
            break
        sel = None
        best = None
        for i in range(r, rows):
            v = work[i][c]
            if v:
                if best is None or abs(v) < best:
                    best = abs(v)
                    sel = i
                    if best == 1:
                        break
        if sel is None:
            continue
        work[r], work[sel] = work[sel], work[r]
        piv = work[r]
        a = piv[c]
        for i in range(r + 1, rows):
            b = work[i][c]
            if b:
                row = work[i]
                work[i] = _normalize_int_row([a * x - b * y for x, y in zip(row, piv)])
        r += 1
    return r


def rank_of_int_rows(field: Field, rows, cols: int) -> int:
    """Rank of a matrix given as raw scalar rows, interpreted in the field.

    Fast path used by the brute-force cochain computations, which build
    large matrices directly: int entries for prime fields, ints or
    Fractions over Q (rows are lcm-scaled to integers before elimination).
    """
    if not rows or cols == 0:
        return 0
    if field.p is not None:
        return _rank_modp_array(np.array(rows, dtype=np.int64), field.p)
    scaled = [_row_lcm_scale([x if isinstance(x, Fraction) else Fraction(x) for x in row])
              for row in rows]
    return _rank_int_rows(scaled, cols)


def kernel(m: Matrix) -> "Subspace":
    """Right null space {x : m x = 0} as a subspace of the column space."""
    res = rref(m)
    n = m.cols
    piv = set(res.pivots)
    free = [j for j in range(n) if j not in piv]
    f = m.field
    zero, one = f.zero(), f.one()
    vectors = []
    red = res.reduced.entries
    for j in free:
        v = [zero] * n
        v[j] = one
        for r_i, c in enumerate(res.pivots):
            v[c] = f.neg(red[r_i][j])
        vectors.append(v)
    return Subspace.from_vectors(f, n, vectors)


def column_space(m: Matrix) -> "Subspace":
    return Subspace.from_vectors(m.field, m.rows, m.columns())


def solve_column(m: Matrix, b) -> tuple:
    """A canonical particular solution x of m x = b (free variables zero)."""
    f = m.field
    aug = Matrix.hstack(f, [m, Matrix.from_columns(f, [list(b)])])
    res = rref(aug)
    if res.pivots and res.pivots[-1] == m.cols:
        raise InconsistentSystem("no solution")
    zero = f.zero()
    x = [zero] * m.cols
    for r_i, c in enumerate(res.pivots):
        x[c] = res.reduced.entries[r_i][m.cols]
    return tuple(x)


def solve_columns(m: Matrix, rhs: Matrix) -> Matrix:
    """Solve m X = rhs column by column; canonical particular solutions."""
    cols = [solve_column(m, rhs.column(j)) for j in range(rhs.cols)]
    return Matrix.from_columns(m.field, cols, rows=m.cols)


# ---------------------------------------------------------------------------
# subspaces

class Subspace:
    """An R-linear subspace of a coordinate space, stored by its unique RREF basis."""

    __slots__ = ("ambient_dim", "basis", "pivots")

    def __init__(self, ambient_dim: int, basis: Matrix, pivots: tuple[int, ...]):
        object.__setattr__(self, "ambient_dim", ambient_dim)
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "pivots", pivots)

    def __setattr__(self, name, value):
        raise AttributeError("Subspace is immutable")

    @staticmethod
    def from_vectors(field: Field, ambient_dim: int, vectors) -> "Subspace":
        vectors = [list(v) for v in vectors]
        for v in vectors:
            if len(v) != ambient_dim:
                raise DimensionMismatch("vector does not live in the ambient space")
        if not vectors:
            return Subspace(ambient_dim, Matrix.zeros(field, 0, ambient_dim), ())
        res = rref(Matrix(field, vectors, len(vectors), ambient_dim))
        basis = res.reduced.take_rows(range(res.rank))
        return Subspace(ambient_dim, basis, res.pivots)

    @staticmethod
    def zero(field: Field, ambient_dim: int) -> "Subspace":
        return Subspace(ambient_dim, Matrix.zeros(field, 0, ambient_dim), ())

    @staticmethod
    def whole(field: Field, ambient_dim: int) -> "Subspace":
        return Subspace(ambient_dim, Matrix.identity(field, ambient_dim),
                        tuple(range(ambient_dim)))

    @property
    def field(self) -> Field:
        return self.basis.field

    @property
    def dim(self) -> int:
        return self.basis.rows

    def is_zero(self) -> bool:
        return self.dim == 0

    def __eq__(self, other) -> bool:
        return (isinstance(other, Subspace) and self.ambient_dim == other.ambient_dim
                and self.basis == other.basis)

    def __hash__(self) -> int:
        return hash((self.ambient_dim, self.basis))

    def __repr__(self) -> str:
        return f"Subspace(dim {self.dim} of {self.ambient_dim}, {self.field.name})"

    def reduce(self, vec) -> tuple:
        """Residue of vec after eliminating this subspace's pivot coordinates."""
        f = self.field
        v = [f.coerce(x) for x in vec]
        if len(v) != self.ambient_dim:
            raise DimensionMismatch("vector/ambient mismatch")
        for row, c in zip(self.basis.entries, self.pivots):
            coeff = v[c]
            if coeff:
                for j in range(c, self.ambient_dim):
                    if row[j]:
                        v[j] = f.sub(v[j], f.mul(coeff, row[j]))
        return tuple(v)

    def contains_vector(self, vec) -> bool:
        return vec_is_zero(self.field, self.reduce(vec))

    def contains_subspace(self, other: "Subspace") -> bool:
        if self.ambient_dim != other.ambient_dim:
            raise DimensionMismatch("ambient dimension mismatch")
        return all(self.contains_vector(row) for row in other.basis.entries)

    def coords(self, vec) -> tuple:
        """Coordinates of a member vector in the RREF basis (pivot extraction)."""
        return tuple(vec[c] for c in self.pivots)

    def lift(self, coords) -> tuple:
        """The member vector with the given basis coordinates."""
        f = self.field
        out = [f.zero()] * self.ambient_dim
        for s, row in zip(coords, self.basis.entries):
            if s:
                for j, x in enumerate(row):
                    if x:
                        out[j] = f.add(out[j], f.mul(s, x))
        return tuple(out)

    def __add__(self, other: "Subspace") -> "Subspace":
        if self.ambient_dim != other.ambient_dim:
            raise DimensionMismatch("ambient dimension mismatch")
        return Subspace.from_vectors(
            self.field, self.ambient_dim,
            list(self.basis.entries) + list(other.basis.entries))

    def intersect(self, other: "Subspace") -> "Subspace":
        if self.ambient_dim != other.ambient_dim:
            raise DimensionMismatch("ambient dimension mismatch")
        if self.is_zero() or other.is_zero():
            return Subspace.zero(self.field, self.ambient_dim)
        stacked = Matrix.vstack(self.field, [self.basis, other.basis])
        ker = kernel(stacked.transpose())
        vectors = []
        f = self.field
        a = self.dim
        for coeffs in ker.basis.entries:
            v = [f.zero()] * self.ambient_dim
            for i in range(a):
                s = coeffs[i]
                if s:
                    row = self.basis.entries[i]
                    for j, x in enumerate(row):
                        if x:
                            v[j] = f.add(v[j], f.mul(s, x))
            vectors.append(v)
        return Subspace.from_vectors(f, self.ambient_dim, vectors)


class QuotientMap:
    """Canonical coordinates on sup/sub for nested subspaces sub <= sup.

    The quotient coordinates are taken with respect to the complement of the
    pivot columns of sub (expressed in sup's basis coordinates).  `matrix`
    is a dim x ambient_dim linear map whose restriction to sup has kernel
    exactly sub; `reps` holds one canonical lift per quotient coordinate,
    and applying `matrix` to `reps` gives the identity.
    """

    __slots__ = ("sup", "sub", "dim", "matrix", "reps", "_sub_in_sup")

    def __init__(self, sup: Subspace, sub: Subspace):
        if sup.ambient_dim != sub.ambient_dim:
            raise DimensionMismatch("ambient dimension mismatch")
        if not sup.contains_subspace(sub):
            raise LinalgError("sub is not contained in sup")
        f = sup.field
        s = sup.dim
        sub_in_sup = Subspace.from_vectors(
            f, s, [sup.coords(row) for row in sub.basis.entries])
        comp = [i for i in range(s) if i not in set(sub_in_sup.pivots)]
        dim = len(comp)
        # extraction of sup coordinates as a matrix
        extract = Matrix(f, [[f.one() if j == c else f.zero() for j in range(sup.ambient_dim)]
                             for c in sup.pivots], s, sup.ambient_dim)
        # reduction modulo sub (in sup coordinates), then complement restriction:
        # complement coordinate i of (c reduced mod sub) is c_i - sum_r c_{piv_r} S[r][i]
        rows = []
        for i in comp:
            row = [f.zero()] * s
            row[i] = f.one()
            for r_i, c in enumerate(sub_in_sup.pivots):
                row[c] = f.sub(row[c], sub_in_sup.basis.entries[r_i][i])
            rows.append(row)
        red = Matrix(f, rows, dim, s)
        matrix = red @ extract
        reps = sup.basis.take_rows(comp)
        object.__setattr__(self, "sup", sup)
        object.__setattr__(self, "sub", sub)
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "matrix", matrix)
        object.__setattr__(self, "reps", reps)
        object.__setattr__(self, "_sub_in_sup", sub_in_sup)
        for k in range(dim):
            if self.coords(self.reps.entries[k]) != unit_vector(f, dim, k):
                raise LinalgError("quotient coordinate construction failed")

    def __setattr__(self, name, value):
        raise AttributeError("QuotientMap is immutable")

    def coords(self, vec) -> tuple:
        return self.matrix.apply(vec)

    def lift(self, coords) -> tuple:
        f = self.sup.field
        out = [f.zero()] * self.sup.ambient_dim
        for s, row in zip(coords, self.reps.entries):
            if s:
                for j, x in enumerate(row):
                    if x:
                        out[j] = f.add(out[j], f.mul(s, x))
        return tuple(out)
