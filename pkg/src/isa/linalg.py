"""Exact rational linear algebra and LP feasibility.

Every scalar is a :class:`fractions.Fraction`; nothing is ever rounded.
Matrices are stored row-sparse (each row is a sorted tuple of
``(column, value)`` pairs) since the systems built downstream have tens of
thousands of rows with only a handful of nonzeros each.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

Rational = Fraction
SparseRow = Dict[int, Fraction]
Vector = List[Fraction]

ZERO = Fraction(0)
ONE = Fraction(1)


def to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool) or isinstance(x, float):
        raise TypeError(f"refusing inexact scalar {x!r}")
    return Fraction(x)


def _freeze(row: Mapping[int, Fraction]) -> Tuple[Tuple[int, Fraction], ...]:
    return tuple(sorted((c, v) for c, v in row.items() if v != 0))


@dataclass(frozen=True)
class RationalMatrix:
    """Immutable rational matrix with row-sparse storage."""

    rows: int
    cols: int
    data: Tuple[Tuple[Tuple[int, Fraction], ...], ...]

    def __post_init__(self):
        if len(self.data) != self.rows:
            raise ValueError(f"expected {self.rows} rows, got {len(self.data)}")
        for r in self.data:
            for c, _ in r:
                if not 0 <= c < self.cols:
                    raise ValueError(f"column {c} outside 0..{self.cols - 1}")

    @classmethod
    def from_dense(cls, entries: Sequence[Sequence], cols: Optional[int] = None) -> "RationalMatrix":
        entries = [list(r) for r in entries]
        if cols is None:
            cols = len(entries[0]) if entries else 0
        for r in entries:
            if len(r) != cols:
                raise ValueError("ragged matrix")
        data = tuple(
            _freeze({j: to_fraction(x) for j, x in enumerate(r)}) for r in entries
        )
        return cls(len(entries), cols, data)

    @classmethod
    def from_sparse(cls, rows: Iterable[Mapping[int, object]], cols: int) -> "RationalMatrix":
        data = tuple(
            _freeze({c: to_fraction(v) for c, v in r.items()}) for r in rows
        )
        return cls(len(data), cols, data)

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls(n, n, tuple(((i, ONE),) for i in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RationalMatrix":
        return cls(rows, cols, tuple(() for _ in range(rows)))

    def row(self, i: int) -> SparseRow:
        return dict(self.data[i])

    def sparse_rows(self) -> List[SparseRow]:
        return [dict(r) for r in self.data]

    def __getitem__(self, ij: Tuple[int, int]) -> Fraction:
        i, j = ij
        for c, v in self.data[i]:
            if c == j:
                return v
        return ZERO

    def to_lists(self) -> List[List[Fraction]]:
        out = []
        for r in self.data:
            dense = [ZERO] * self.cols
            for c, v in r:
                dense[c] = v
            out.append(dense)
        return out

    def transpose(self) -> "RationalMatrix":
        cols: List[SparseRow] = [dict() for _ in range(self.cols)]
        for i, r in enumerate(self.data):
            for c, v in r:
                cols[c][i] = v
        return RationalMatrix.from_sparse(cols, self.rows)

    def apply(self, x: Sequence) -> Vector:
        """Matrix-vector product ``m @ x``."""
        if len(x) != self.cols:
            raise ValueError(f"vector length {len(x)} != {self.cols} columns")
        return [sum((v * x[c] for c, v in r), ZERO) for r in self.data]

    def __matmul__(self, other):
        if isinstance(other, RationalMatrix):
            if self.cols != other.rows:
                raise ValueError("shape mismatch")
            out = []
            for r in self.data:
                acc: SparseRow = {}
                for k, v in r:
                    for c, w in other.data[k]:
                        acc[c] = acc.get(c, ZERO) + v * w
                out.append(acc)
            return RationalMatrix.from_sparse(out, other.cols)
        return self.apply(other)

    def nnz(self) -> int:
        return sum(len(r) for r in self.data)


MatrixLike = Union[RationalMatrix, Sequence[Sequence]]


def as_matrix(m: MatrixLike) -> RationalMatrix:
    if isinstance(m, RationalMatrix):
        return m
    return RationalMatrix.from_dense(m)


class Echelon:
    """Incrementally maintained reduced row-echelon basis.

    Rows are kept fully reduced: each stored row has a 1 at its pivot (its
    leading column) and zeros at every other pivot column.  Adding a vector
    therefore costs one pass of reduction plus one column clear.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.pivots: Dict[int, SparseRow] = {}

    def __len__(self) -> int:
        return len(self.pivots)

    def reduce(self, vec: Mapping[int, Fraction]) -> SparseRow:
        v = {c: x for c, x in vec.items() if x != 0}
        hits = [c for c in v if c in self.pivots]
        for pc in hits:
            coef = v.get(pc)
            if not coef:
                continue
            for c, x in self.pivots[pc].items():
                y = v.get(c, ZERO) - coef * x
                if y:
                    v[c] = y
                else:
                    v.pop(c, None)
        return v

    def add(self, vec: Mapping[int, Fraction]) -> bool:
        """Insert ``vec``; returns True iff it enlarged the span."""
        v = self.reduce(vec)
        if not v:
            return False
        pc = min(v)
        lead = v[pc]
        if lead != 1:
            v = {c: x / lead for c, x in v.items()}
        for row in self.pivots.values():
            coef = row.get(pc)
            if coef:
                for c, x in v.items():
                    y = row.get(c, ZERO) - coef * x
                    if y:
                        row[c] = y
                    else:
                        del row[c]
        self.pivots[pc] = v
        return True

    def rows(self) -> List[SparseRow]:
        return [self.pivots[p] for p in sorted(self.pivots)]

    def contains(self, vec: Mapping[int, Fraction]) -> bool:
        return not self.reduce(vec)


def _echelon_of(rows: Iterable[Mapping[int, Fraction]], ncols: int) -> Echelon:
    ech = Echelon(ncols)
    for r in rows:
        ech.add(r)
    return ech


def rref(m: MatrixLike) -> RationalMatrix:
    """Reduced row-echelon form; zero rows are kept at the bottom so the
    shape matches the input."""
    m = as_matrix(m)
    ech = _echelon_of(m.sparse_rows(), m.cols)
    rows = ech.rows()
    rows += [{}] * (m.rows - len(rows))
    return RationalMatrix.from_sparse(rows, m.cols)


def rank(m: MatrixLike) -> int:
    m = as_matrix(m)
    return len(_echelon_of(m.sparse_rows(), m.cols))


@dataclass(frozen=True)
class Subspace:
    """A subspace of Q^ambient_dim held by its canonical RREF basis.

    Two subspaces are equal iff they are the same space, because the
    reduced basis is unique.
    """

    ambient_dim: int
    rows: Tuple[Tuple[Tuple[int, Fraction], ...], ...]

    @classmethod
    def span(cls, vectors: Iterable[Mapping[int, object]], ambient_dim: int) -> "Subspace":
        ech = Echelon(ambient_dim)
        for v in vectors:
            ech.add({c: to_fraction(x) for c, x in v.items()})
        return cls._from_echelon(ech)

    @classmethod
    def span_dense(cls, vectors: Iterable[Sequence], ambient_dim: int) -> "Subspace":
        return cls.span(({i: x for i, x in enumerate(v) if x} for v in vectors), ambient_dim)

    @classmethod
    def _from_echelon(cls, ech: Echelon) -> "Subspace":
        return cls(ech.ncols, tuple(_freeze(r) for r in ech.rows()))

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, ())

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, tuple(((i, ONE),) for i in range(ambient_dim)))

    @property
    def dim(self) -> int:
        return len(self.rows)

    @property
    def basis(self) -> RationalMatrix:
        return RationalMatrix(len(self.rows), self.ambient_dim, self.rows)

    def pivots(self) -> List[int]:
        return [r[0][0] for r in self.rows]

    def sparse_basis(self) -> List[SparseRow]:
        return [dict(r) for r in self.rows]

    def echelon(self) -> Echelon:
        ech = Echelon(self.ambient_dim)
        for r in self.rows:
            ech.pivots[r[0][0]] = dict(r)
        return ech

    def contains(self, vec) -> bool:
        if not isinstance(vec, Mapping):
            vec = {i: to_fraction(x) for i, x in enumerate(vec) if x}
        return self.echelon().contains(vec)

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        ech = self.echelon()
        for r in other.rows:
            ech.add(dict(r))
        return Subspace._from_echelon(ech)

    def intersection_dim(self, other: "Subspace") -> int:
        return self.dim + other.dim - (self + other).dim

    def issubspace(self, other: "Subspace") -> bool:
        self._check(other)
        ech = other.echelon()
        return all(ech.contains(dict(r)) for r in self.rows)

    def annihilator(self) -> "Subspace":
        """Vectors f with <f, v> = 0 for all v in the space."""
        return nullspace(self.basis)

    def image(self, m: RationalMatrix) -> "Subspace":
        """Image of the subspace under ``x -> m @ x``."""
        if m.cols != self.ambient_dim:
            raise ValueError("shape mismatch")
        cols = m.transpose().sparse_rows()
        imgs = []
        for r in self.rows:
            acc: SparseRow = {}
            for c, v in r:
                for i, w in cols[c].items():
                    acc[i] = acc.get(i, ZERO) + v * w
            imgs.append(acc)
        return Subspace.span(imgs, m.rows)

    def _check(self, other: "Subspace"):
        if self.ambient_dim != other.ambient_dim:
            raise ValueError("subspaces live in different ambient spaces")


def nullspace_of_rows(rows: Iterable[Mapping[int, Fraction]], ncols: int) -> Subspace:
    ech = _echelon_of(rows, ncols)
    pivot_rows = ech.pivots
    # column -> [(pivot, coefficient)] for the free columns
    free_hits: Dict[int, List[Tuple[int, Fraction]]] = {}
    for p, r in pivot_rows.items():
        for c, v in r.items():
            if c != p:
                free_hits.setdefault(c, []).append((p, v))
    basis = []
    for f in range(ncols):
        if f in pivot_rows:
            continue
        vec = {f: ONE}
        for p, v in free_hits.get(f, ()):
            vec[p] = -v
        basis.append(vec)
    return Subspace.span(basis, ncols)


def nullspace(m: MatrixLike) -> Subspace:
    """{x : m @ x = 0} as a canonical subspace."""
    m = as_matrix(m)
    return nullspace_of_rows(m.sparse_rows(), m.cols)


def solve_rows(rows: Sequence[Mapping[int, Fraction]], rhs: Sequence, ncols: int) -> Optional[Vector]:
    if len(rows) != len(rhs):
        raise ValueError("rhs length must equal the number of rows")
    ech = Echelon(ncols + 1)
    for r, b in zip(rows, rhs):
        aug = dict(r)
        b = to_fraction(b)
        if b:
            aug[ncols] = b
        ech.add(aug)
    if ncols in ech.pivots:
        return None
    x = [ZERO] * ncols
    for p, r in ech.pivots.items():
        x[p] = r.get(ncols, ZERO)
    return x


def solve(m: MatrixLike, b: Sequence) -> Optional[Vector]:
    """Some exact x with m @ x = b (free variables set to 0), or None when
    the system is inconsistent."""
    m = as_matrix(m)
    return solve_rows(m.sparse_rows(), b, m.cols)


def residual(m: MatrixLike, x: Sequence, b: Sequence) -> Vector:
    m = as_matrix(m)
    return [y - to_fraction(c) for y, c in zip(m.apply(x), b)]


def lp_feasible(eq: MatrixLike, rhs: Sequence) -> Optional[Vector]:
    """Find x >= 0 with eq @ x = rhs, or None if no such x exists.

    Redundant equalities are removed by exact elimination first; the reduced
    system then goes through phase-1 simplex with Bland's rule, so the
    search terminates and the answer is exact.
    """
    eq = as_matrix(eq)
    if len(rhs) != eq.rows:
        raise ValueError("rhs length must equal the number of rows")
    n = eq.cols
    ech = Echelon(n + 1)
    for r, b in zip(eq.data, rhs):
        aug = dict(r)
        b = to_fraction(b)
        if b:
            aug[n] = b
        ech.add(aug)
    if n in ech.pivots:
        return None
    rows = ech.rows()
    m = len(rows)
    if m == 0:
        return [ZERO] * n
    a = []
    b = []
    for r in rows:
        sign = -1 if r.get(n, ZERO) < 0 else 1
        a.append([sign * r.get(j, ZERO) for j in range(n)])
        b.append(sign * r.get(n, ZERO))
    return _phase_one(a, b, n)


def _phase_one(a: List[List[Fraction]], b: List[Fraction], n: int) -> Optional[Vector]:
    """Phase-1 simplex on {x >= 0 : a x = b} with b >= 0.

    Tableau columns 0..n-1 are the original variables, n..n+m-1 the
    artificials, last column the right-hand side.
    """
    m = len(a)
    width = n + m + 1
    tab = []
    for i in range(m):
        row = a[i] + [ZERO] * m + [b[i]]
        row[n + i] = ONE
        tab.append(row)
    basis = [n + i for i in range(m)]
    # reduced costs of "minimize sum of artificials"
    cost = [ZERO] * width
    for i in range(m):
        for j in range(width):
            if j < n or j == width - 1:
                cost[j] -= tab[i][j]
    while True:
        enter = next((j for j in range(n + m) if cost[j] < 0), None)
        if enter is None:
            break
        leave = None
        best = None
        for i in range(m):
            piv = tab[i][enter]
            if piv > 0:
                ratio = tab[i][-1] / piv
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            # unbounded below is impossible for a sum of nonnegatives
            raise ArithmeticError("phase-1 objective unbounded")
        _pivot(tab, cost, leave, enter)
        basis[leave] = enter
    if cost[-1] != 0:
        return None
    x = [ZERO] * n
    for i, j in enumerate(basis):
        if j < n:
            x[j] = tab[i][-1]
    return x


def _pivot(tab: List[List[Fraction]], cost: List[Fraction], r: int, c: int):
    prow = tab[r]
    p = prow[c]
    if p != 1:
        prow[:] = [v / p for v in prow]
    nz = [(j, v) for j, v in enumerate(prow) if v]
    for i, row in enumerate(tab):
        if i != r and row[c]:
            f = row[c]
            for j, v in nz:
                row[j] -= f * v
    f = cost[c]
    if f:
        for j, v in nz:
            cost[j] -= f * v
