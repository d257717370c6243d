"""First relative cohomology H^1(A, X*) for explicit finite-dimensional
modules over A = l1(S) with the l1(E) actions.

Derivations are restricted to linear maps; over a finite basis the merely
additive ones cannot be parameterized.  Every result carries that flag.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence

from .algebra import ModuleActionPair, SemigroupAlgebra, build_algebra
from .linalg import ONE, ZERO, RationalMatrix, SparseRow, Subspace, nullspace_of_rows
from .semigroup import FiniteInverseSemigroup


class IncompatibleModule(ValueError):
    pass


@dataclass(frozen=True)
class FiniteBimodule:
    """Actions on X = Q^dim; every map sends x to ``matrix @ x``.

    ``A_left[s]`` is x -> delta_s.x and ``A_right[s]`` is x -> x.delta_s;
    ``Amod_left``/``Amod_right`` map each idempotent e to the action of
    delta_e.
    """

    dim: int
    A_left: Sequence[RationalMatrix]
    A_right: Sequence[RationalMatrix]
    Amod_left: Dict[int, RationalMatrix]
    Amod_right: Dict[int, RationalMatrix]
    name: str = ""

    @classmethod
    def regular(cls, S: FiniteInverseSemigroup) -> "FiniteBimodule":
        """X = A with multiplication and the same idempotent actions as A."""
        n = S.order
        T = S.table

        def perm(f):
            return RationalMatrix.from_sparse(_columns_to_rows([f(x) for x in range(n)], n), n)

        A_left = [perm(lambda x, s=s: T[s][x]) for s in range(n)]
        A_right = [perm(lambda x, s=s: T[x][s]) for s in range(n)]
        mod_left = {e: RationalMatrix.identity(n) for e in S.idempotents}
        mod_right = {e: perm(lambda x, e=e: T[x][e]) for e in S.idempotents}
        return cls(n, A_left, A_right, mod_left, mod_right, "regular")

    @classmethod
    def zero_action(cls, S: FiniteInverseSemigroup, dim: int = 1) -> "FiniteBimodule":
        """Zero A-actions on both sides; idempotents act as the identity."""
        z = RationalMatrix.zeros(dim, dim)
        one = RationalMatrix.identity(dim)
        return cls(
            dim,
            [z] * S.order,
            [z] * S.order,
            {e: one for e in S.idempotents},
            {e: one for e in S.idempotents},
            "zero",
        )


def _columns_to_rows(images: List[int], n: int) -> List[SparseRow]:
    """Rows of the 0/1 matrix sending basis vector x to basis vector images[x]."""
    rows: List[SparseRow] = [dict() for _ in range(n)]
    for x, y in enumerate(images):
        rows[y][x] = rows[y].get(x, ZERO) + ONE
    return rows


def _vec_action(images: Sequence[int], x: SparseRow) -> SparseRow:
    out: SparseRow = {}
    for s, a in x.items():
        out[images[s]] = out.get(images[s], ZERO) + a
    return out


def check_module(S: FiniteInverseSemigroup, actions: ModuleActionPair, X: FiniteBimodule):
    """All bimodule and compatibility identities on basis elements."""
    n = S.order
    T = S.table
    E = S.idempotents
    L, R = X.A_left, X.A_right
    ML, MR = X.Amod_left, X.Amod_right
    if len(L) != n or len(R) != n or set(ML) != set(E) or set(MR) != set(E):
        raise IncompatibleModule("action maps do not match the algebra basis")
    for m in list(L) + list(R) + list(ML.values()) + list(MR.values()):
        if m.rows != X.dim or m.cols != X.dim:
            raise IncompatibleModule("action matrix has the wrong shape")

    def need(cond, what):
        if not cond:
            raise IncompatibleModule(what)

    for s in range(n):
        for t in range(n):
            need(L[T[s][t]] == L[s] @ L[t], f"(st).x = s.(t.x) fails at {s},{t}")
            need(R[T[s][t]] == R[t] @ R[s], f"x.(st) = (x.s).t fails at {s},{t}")
            need(R[t] @ L[s] == L[s] @ R[t], f"(s.x).t = s.(x.t) fails at {s},{t}")
    for i, e in enumerate(E):
        for f in E:
            ef = T[e][f]
            need(ML[ef] == ML[e] @ ML[f], f"(ef).x fails at {e},{f}")
            need(MR[ef] == MR[f] @ MR[e], f"x.(ef) fails at {e},{f}")
            need(MR[f] @ ML[e] == ML[e] @ MR[f], f"(e.x).f = e.(x.f) fails at {e},{f}")
        for a in range(n):
            ea = actions.left[i][a]
            ae = actions.right[a][i]
            need(MR[e] @ L[a] == L[a] @ MR[e], f"(a.x).e = a.(x.e) fails at e={e}, a={a}")
            need(ML[e] @ L[a] == L[ea], f"e.(a.x) = (e.a).x fails at e={e}, a={a}")
            need(ML[e] @ R[a] == R[a] @ ML[e], f"e.(x.a) = (e.x).a fails at e={e}, a={a}")
            need(MR[e] @ R[a] == R[ae], f"(x.a).e = x.(a.e) fails at e={e}, a={a}")


@dataclass(frozen=True)
class CohomologyResult:
    dim_Z: int
    dim_B: int
    dim_inner: int
    Z: Optional[Subspace] = None
    linear_derivations_only: bool = True

    @property
    def dim_H1(self) -> int:
        return self.dim_Z - self.dim_B

    def to_json(self) -> dict:
        return {
            "dim_Z": self.dim_Z,
            "dim_B": self.dim_B,
            "dim_H1": self.dim_H1,
            "linear_derivations_only": self.linear_derivations_only,
        }


def derivation_constraints(S: FiniteInverseSemigroup, actions: ModuleActionPair, X: FiniteBimodule) -> List[SparseRow]:
    """Linear constraints on D : A -> X*, stored with D(delta_s)_k at k*n + s.

    X* carries the dual actions (a.f)(x) = f(x.a), (f.a)(x) = f(a.x) and
    likewise for idempotents, so a.f = R_a^T f and f.a = L_a^T f.
    """
    n, d = S.order, X.dim
    T = S.table
    LT = [m.transpose() for m in X.A_left]
    RT = [m.transpose() for m in X.A_right]
    MLT = {e: m.transpose() for e, m in X.Amod_left.items()}
    MRT = {e: m.transpose() for e, m in X.Amod_right.items()}

    def var(k, s):
        return k * n + s

    rows: List[SparseRow] = []

    def emit(row):
        row = {c: v for c, v in row.items() if v}
        if row:
            rows.append(row)

    # D(st) = s.D(t) + D(s).t
    for s in range(n):
        for t in range(n):
            st = T[s][t]
            for k in range(d):
                row = {var(k, st): ONE}
                for j, v in RT[s].data[k]:
                    row[var(j, t)] = row.get(var(j, t), ZERO) - v
                for j, v in LT[t].data[k]:
                    row[var(j, s)] = row.get(var(j, s), ZERO) - v
                emit(row)
    # D(e.a) = e.D(a) and D(a.e) = D(a).e
    for i, e in enumerate(S.idempotents):
        for a in range(n):
            ea = _vec_action(actions.left[i], {a: ONE})
            ae = _vec_action([r[i] for r in actions.right], {a: ONE})
            for k in range(d):
                row = {}
                for b, c in ea.items():
                    row[var(k, b)] = row.get(var(k, b), ZERO) + c
                for j, v in MRT[e].data[k]:
                    row[var(j, a)] = row.get(var(j, a), ZERO) - v
                emit(row)
                row = {}
                for b, c in ae.items():
                    row[var(k, b)] = row.get(var(k, b), ZERO) + c
                for j, v in MLT[e].data[k]:
                    row[var(j, a)] = row.get(var(j, a), ZERO) - v
                emit(row)
    return rows


def inner_derivations(S: FiniteInverseSemigroup, X: FiniteBimodule) -> Subspace:
    """Span of D_x(a) = a.x - x.a over a basis of X*."""
    n, d = S.order, X.dim
    gens = []
    for j in range(d):
        D: SparseRow = {}
        # column j of R_s^T is row j of R_s
        for s in range(n):
            for k, v in X.A_right[s].data[j]:
                D[k * n + s] = D.get(k * n + s, ZERO) + v
            for k, v in X.A_left[s].data[j]:
                D[k * n + s] = D.get(k * n + s, ZERO) - v
        gens.append({c: v for c, v in D.items() if v})
    return Subspace.span(gens, n * d)


def h1_dimension(S: FiniteInverseSemigroup, X: FiniteBimodule, actions: Optional[ModuleActionPair] = None) -> CohomologyResult:
    """dim Z (module derivations), dim B (those that are inner) and their
    difference.  Inner derivations need not respect the idempotent actions,
    so B is computed as Z intersected with the inner ones."""
    if actions is None:
        _, actions = build_algebra(S)
    check_module(S, actions, X)
    Z = nullspace_of_rows(derivation_constraints(S, actions, X), S.order * X.dim)
    inner = inner_derivations(S, X)
    return CohomologyResult(Z.dim, Z.intersection_dim(inner), inner.dim, Z)


def derivation_residuals(S: FiniteInverseSemigroup, X: FiniteBimodule, D: Sequence, actions: Optional[ModuleActionPair] = None) -> int:
    """Number of violated constraints for the derivation vector D."""
    if actions is None:
        _, actions = build_algebra(S)
    bad = 0
    for row in derivation_constraints(S, actions, X):
        if sum((v * D[c] for c, v in row.items()), ZERO):
            bad += 1
    return bad


def algebra_of(S: FiniteInverseSemigroup) -> SemigroupAlgebra:
    return build_algebra(S)[0]
