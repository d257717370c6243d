"""Classical and module virtual diagonals of l1(S) as exact linear systems.

At finite dimension the bidual of l1(S x S) is l1(S x S) itself, so a
diagonal is a rational vector M over S x S and every defining identity is a
linear equation in M.  The module conditions are the classical ones tested
only against the annihilators I_perp and J_perp.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .algebra import IdealData, TensorSquare, ideal_I
from .congruence import GroupImage, quotient_group
from .linalg import ONE, ZERO, SparseRow, Subspace, nullspace_of_rows, solve_rows, to_fraction
from .mean import MeanCertificate, verify_mean
from .semigroup import FiniteInverseSemigroup

KINDS = ("classical", "module")


class ConstructionFailed(RuntimeError):
    def __init__(self, residuals):
        self.residuals = residuals
        super().__init__(f"diagonal built from the mean has {len(residuals)} nonzero residuals")


class PushforwardInvalid(RuntimeError):
    def __init__(self, residuals):
        self.residuals = residuals
        super().__init__(f"pushed-forward diagonal has {len(residuals)} nonzero residuals")


@dataclass(frozen=True)
class Residual:
    condition: str
    s: int
    index: int
    value: Fraction

    def to_json(self) -> dict:
        return {"condition": self.condition, "s": self.s, "index": self.index, "value": _q(self.value)}


@dataclass(frozen=True)
class DiagonalCertificate:
    kind: str
    M: Tuple[Fraction, ...]
    n: int
    residual_report: Tuple[Residual, ...] = field(default=())

    @property
    def valid(self) -> bool:
        return not self.residual_report

    def entries(self):
        for k, v in enumerate(self.M):
            if v:
                yield k // self.n, k % self.n, v

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "M": [[i, j, _q(v)] for i, j, v in self.entries()],
            "residuals": [r.to_json() for r in self.residual_report],
        }

    @classmethod
    def from_json(cls, data: dict, n: int) -> "DiagonalCertificate":
        if data.get("kind") not in KINDS:
            raise ValueError(f"unknown diagonal kind {data.get('kind')!r}")
        M = [ZERO] * (n * n)
        for i, j, q in data["M"]:
            if not (0 <= i < n and 0 <= j < n):
                raise ValueError(f"entry ({i},{j}) outside a semigroup of order {n}")
            M[i * n + j] = Fraction(q)
        return cls(data["kind"], tuple(M), n)


def _q(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


# ---------------------------------------------------------------------------
# linear systems

@dataclass
class LinearSystem:
    """Rows over the n^2 coordinates of M, each tagged (condition, s, index)."""

    ncols: int
    rows: List[SparseRow]
    rhs: List[Fraction]
    tags: List[Tuple[str, int, int]]

    def add(self, tag, row: SparseRow, b=ZERO):
        self.tags.append(tag)
        self.rows.append(row)
        self.rhs.append(to_fraction(b))

    def residuals(self, M: Sequence[Fraction]) -> List[Residual]:
        out = []
        for (cond, s, idx), row, b in zip(self.tags, self.rows, self.rhs):
            r = sum((v * M[c] for c, v in row.items()), ZERO) - b
            if r:
                out.append(Residual(cond, s, idx, r))
        return out

    def solve(self) -> Optional[List[Fraction]]:
        return solve_rows(self.rows, self.rhs, self.ncols)

    def homogeneous_solutions(self) -> Subspace:
        return nullspace_of_rows(self.rows, self.ncols)


def _clean(row: SparseRow) -> SparseRow:
    return {k: v for k, v in row.items() if v}


def classical_system(S: FiniteInverseSemigroup, one_sided: bool = False) -> LinearSystem:
    """a.M = M.a for every basis element a, and omega(M) a two-sided identity
    (only the right-unit half, omega(M) s = s, when ``one_sided``)."""
    n = S.order
    T = S.table
    sq = TensorSquare(S)
    N = sq.dim
    sys = LinearSystem(N, [], [], [])
    for a in range(n):
        rows: List[SparseRow] = [dict() for _ in range(N)]
        for k in range(N):
            p = sq.left_index(a, k)
            rows[p][k] = rows[p].get(k, ZERO) + ONE
            q = sq.right_index(k, a)
            rows[q][k] = rows[q].get(k, ZERO) - ONE
        for idx, r in enumerate(rows):
            r = _clean(r)
            if r:
                sys.add(("commutation", a, idx), r)
    halves = [("right_unit", lambda w, s: T[w][s])]
    if not one_sided:
        halves.append(("left_unit", lambda w, s: T[s][w]))
    for cond, prod in halves:
        for s in range(n):
            rows = [dict() for _ in range(n)]
            for k in range(N):
                u, v = divmod(k, n)
                rows[prod(T[u][v], s)][k] = ONE
            for w in range(n):
                sys.add((cond, s, w), rows[w], ONE if w == s else ZERO)
    return sys


def module_system(S: FiniteInverseSemigroup, ideals: Optional[IdealData] = None) -> LinearSystem:
    """<M, s.f - f.s> = 0 for f in a basis of I_perp and
    <M, s.omega*(h)> = h(s) for h in a basis of J_perp, for every s.

    Here f.s(t, t') = f(st, t') and s.f(t, t') = f(t, t's).
    """
    if ideals is None:
        ideals = ideal_I(S)
    n = S.order
    T = S.table
    N = n * n
    sys = LinearSystem(N, [], [], [])
    fperp = [_dense(r, N) for r in ideals.I_perp.sparse_basis()]
    hperp = [_dense(r, n) for r in ideals.J_perp.sparse_basis()]
    pairs = [divmod(k, n) for k in range(N)]
    for s in range(n):
        # index of (t, t's) and of (st, t') for each coordinate (t, t')
        right_shift = [u * n + T[v][s] for u, v in pairs]
        left_shift = [T[s][u] * n + v for u, v in pairs]
        for idx, f in enumerate(fperp):
            row = {}
            for k in range(N):
                c = f[right_shift[k]] - f[left_shift[k]]
                if c:
                    row[k] = c
            if row:
                sys.add(("commutation", s, idx), row)
        for idx, h in enumerate(hperp):
            row = {}
            for k, (u, v) in enumerate(pairs):
                c = h[T[T[u][v]][s]]
                if c:
                    row[k] = c
            sys.add(("unit", s, idx), row, h[s])
    return sys


def _dense(row: SparseRow, n: int) -> List[Fraction]:
    out = [ZERO] * n
    for c, v in row.items():
        out[c] = v
    return out


# ---------------------------------------------------------------------------
# decision procedures

def verify_diagonal(
    S: FiniteInverseSemigroup,
    M: Sequence,
    kind: str,
    ideals: Optional[IdealData] = None,
    one_sided: bool = False,
) -> List[Residual]:
    if kind not in KINDS:
        raise ValueError(f"kind must be one of {KINDS}")
    M = [to_fraction(x) for x in M]
    if len(M) != S.order ** 2:
        raise ValueError(f"diagonal has length {len(M)}, expected {S.order ** 2}")
    sys = classical_system(S, one_sided) if kind == "classical" else module_system(S, ideals)
    return sys.residuals(M)


def certify(S, M, kind, ideals=None, one_sided=False) -> DiagonalCertificate:
    M = tuple(to_fraction(x) for x in M)
    return DiagonalCertificate(kind, M, S.order, tuple(verify_diagonal(S, M, kind, ideals, one_sided)))


def find_module_diagonal(S: FiniteInverseSemigroup, ideals: Optional[IdealData] = None) -> Optional[DiagonalCertificate]:
    if ideals is None:
        ideals = ideal_I(S)
    sys = module_system(S, ideals)
    M = sys.solve()
    if M is None:
        return None
    return DiagonalCertificate("module", tuple(M), S.order, tuple(sys.residuals(M)))


def find_classical_diagonal(S: FiniteInverseSemigroup, one_sided: bool = False) -> Optional[DiagonalCertificate]:
    sys = classical_system(S, one_sided)
    M = sys.solve()
    if M is None:
        return None
    return DiagonalCertificate("classical", tuple(M), S.order, tuple(sys.residuals(M)))


def diagonal_from_mean(S: FiniteInverseSemigroup, mu, ideals: Optional[IdealData] = None) -> DiagonalCertificate:
    """M = sum_s mu(s) delta_(s*, s) for a right-invariant mean mu.

    Raises ConstructionFailed if the result does not verify as a module
    diagonal; mu itself must be a right-invariant mean.
    """
    if isinstance(mu, MeanCertificate):
        mu = mu.mu
    bad = verify_mean(S, mu, side="right")
    if bad:
        raise ValueError(f"not a right-invariant mean: {bad[0]}")
    n = S.order
    M = [ZERO] * (n * n)
    for s, w in enumerate(mu):
        if w:
            M[S.star[s] * n + s] += to_fraction(w)
    cert = certify(S, M, "module", ideals)
    if not cert.valid:
        raise ConstructionFailed(list(cert.residual_report))
    return cert


def pushforward(S: FiniteInverseSemigroup, G: GroupImage, M: Sequence) -> List[Fraction]:
    """(pi (x) pi)(M) as a vector over G_S x G_S."""
    n, k = S.order, G.order
    pi = G.class_of
    out = [ZERO] * (k * k)
    for idx, v in enumerate(M):
        if v:
            u, w = divmod(idx, n)
            out[pi[u] * k + pi[w]] += v
    return out


def pushforward_diagonal(
    S: FiniteInverseSemigroup, G: Optional[GroupImage], M
) -> DiagonalCertificate:
    """Push a module diagonal of l1(S) to l1(G_S); it must verify there as a
    classical diagonal."""
    if G is None:
        G = quotient_group(S)
    if isinstance(M, DiagonalCertificate):
        M = M.M
    H = G.as_semigroup()
    cert = certify(H, pushforward(S, G, M), "classical")
    if not cert.valid:
        raise PushforwardInvalid(list(cert.residual_report))
    return cert


def uniform_group_diagonal(S: FiniteInverseSemigroup) -> List[Fraction]:
    """(1/|S|) sum_g delta_(g^-1, g); meaningful when S is a group."""
    n = S.order
    M = [ZERO] * (n * n)
    for g in range(n):
        M[S.star[g] * n + g] = Fraction(1, n)
    return M
