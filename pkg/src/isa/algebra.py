"""The semigroup algebra l1(S) as an l1(E)-module, its tensor square, the
multiplication map omega, and the ideal I with J = omega(I) and annihilators.

Vectors over S are indexed by element; vectors over S x S by s * n + t.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Mapping, Tuple

from .linalg import ONE, ZERO, Echelon, RationalMatrix, SparseRow, Subspace
from .semigroup import FiniteInverseSemigroup


class CompatibilityViolation(RuntimeError):
    def __init__(self, what: str, alpha: int, a: int, b: int):
        self.alpha, self.a, self.b = alpha, a, b
        super().__init__(f"{what} fails at alpha={alpha}, a={a}, b={b}")


@dataclass(frozen=True)
class SemigroupAlgebra:
    base: FiniteInverseSemigroup

    @property
    def dim(self) -> int:
        return self.base.order

    def multiply(self, x: Mapping[int, Fraction], y: Mapping[int, Fraction]) -> SparseRow:
        T = self.base.table
        out: SparseRow = {}
        for s, a in x.items():
            row = T[s]
            for t, b in y.items():
                u = row[t]
                out[u] = out.get(u, ZERO) + a * b
        return {k: v for k, v in out.items() if v}

    def basis_product(self, s: int, t: int) -> int:
        return self.base.table[s][t]


@dataclass(frozen=True)
class ModuleActionPair:
    """Actions of delta_e (e idempotent) on the basis of l1(S).

    ``left[i][s]`` is the basis element delta_e . delta_s for e =
    idempotents[i]; ``right[s][i]`` is delta_s . delta_e.  The left action
    is the identity and the right action is multiplication.
    """

    idempotents: Tuple[int, ...]
    left: Tuple[Tuple[int, ...], ...]
    right: Tuple[Tuple[int, ...], ...]

    def act_left(self, e: int, x: Mapping[int, Fraction]) -> SparseRow:
        i = self.idempotents.index(e)
        return _push(x, self.left[i])

    def act_right(self, x: Mapping[int, Fraction], e: int) -> SparseRow:
        i = self.idempotents.index(e)
        return _push(x, [r[i] for r in self.right])


def _push(x: Mapping[int, Fraction], images) -> SparseRow:
    out: SparseRow = {}
    for s, a in x.items():
        u = images[s]
        out[u] = out.get(u, ZERO) + a
    return {k: v for k, v in out.items() if v}


def build_algebra(S: FiniteInverseSemigroup) -> Tuple[SemigroupAlgebra, ModuleActionPair]:
    """l1(S) with the idempotent actions; compatibility checked on all basis
    triples before returning."""
    n = S.order
    T = S.table
    E = S.idempotents
    left = tuple(tuple(range(n)) for _ in E)
    right = tuple(tuple(T[s][e] for e in E) for s in range(n))
    actions = ModuleActionPair(E, left, right)
    check_compatibility(S, actions)
    return SemigroupAlgebra(S), actions


def check_compatibility(S: FiniteInverseSemigroup, actions: ModuleActionPair):
    T = S.table
    n = S.order
    E = actions.idempotents
    L, R = actions.left, actions.right
    for i, e in enumerate(E):
        for a in range(n):
            for b in range(n):
                if L[i][T[a][b]] != T[L[i][a]][b]:
                    raise CompatibilityViolation("alpha.(ab) = (alpha.a)b", e, a, b)
                if R[T[a][b]][i] != T[a][R[b][i]]:
                    raise CompatibilityViolation("(ab).alpha = a(b.alpha)", e, a, b)
        for j, f in enumerate(E):
            ef = E.index(T[e][f])
            for a in range(n):
                if L[ef][a] != L[i][L[j][a]]:
                    raise CompatibilityViolation("(alpha beta).a = alpha.(beta.a)", e, f, a)
                if R[a][ef] != R[R[a][i]][j]:
                    raise CompatibilityViolation("a.(alpha beta) = (a.alpha).beta", e, f, a)
                if R[L[i][a]][j] != L[i][R[a][j]]:
                    raise CompatibilityViolation("(alpha.a).beta = alpha.(a.beta)", e, f, a)


class TensorSquare:
    """l1(S x S) with the l1(S)-bimodule actions
    a.(s (x) t) = as (x) t and (s (x) t).a = s (x) ta."""

    def __init__(self, S: FiniteInverseSemigroup):
        self.S = S
        self.n = S.order

    @property
    def dim(self) -> int:
        return self.n * self.n

    def index(self, s: int, t: int) -> int:
        return s * self.n + t

    def pair(self, k: int) -> Tuple[int, int]:
        return divmod(k, self.n)

    def left_index(self, a: int, k: int) -> int:
        s, t = divmod(k, self.n)
        return self.S.table[a][s] * self.n + t

    def right_index(self, k: int, a: int) -> int:
        s, t = divmod(k, self.n)
        return s * self.n + self.S.table[t][a]

    def act_left(self, a: int, x: Mapping[int, Fraction]) -> SparseRow:
        return _push(x, [self.left_index(a, k) for k in range(self.dim)])

    def act_right(self, x: Mapping[int, Fraction], a: int) -> SparseRow:
        return _push(x, [self.right_index(k, a) for k in range(self.dim)])

    def product_index(self, k1: int, k2: int) -> int:
        """(s (x) t)(u (x) v) = su (x) vt: opposite product in the second slot."""
        s, t = divmod(k1, self.n)
        u, v = divmod(k2, self.n)
        T = self.S.table
        return T[s][u] * self.n + T[v][t]

    def actions_commute(self) -> bool:
        return all(
            self.right_index(self.left_index(a, k), b) == self.left_index(a, self.right_index(k, b))
            for a in range(self.n)
            for b in range(self.n)
            for k in range(self.dim)
        )


def omega_index(S: FiniteInverseSemigroup) -> List[int]:
    n = S.order
    return [S.table[s][t] for s in range(n) for t in range(n)]


def omega(S: FiniteInverseSemigroup) -> RationalMatrix:
    """The n x n^2 matrix of delta_(s,t) -> delta_st."""
    n = S.order
    cols = omega_index(S)
    rows: List[SparseRow] = [dict() for _ in range(n)]
    for k, u in enumerate(cols):
        rows[u][k] = ONE
    return RationalMatrix.from_sparse(rows, n * n)


def omega_is_bimodule_map(S: FiniteInverseSemigroup) -> bool:
    """omega(a.x) = a omega(x) and omega(x.a) = omega(x) a on basis elements."""
    sq = TensorSquare(S)
    w = omega_index(S)
    T = S.table
    return all(
        w[sq.left_index(a, k)] == T[a][w[k]] and w[sq.right_index(k, a)] == T[w[k]][a]
        for a in range(S.order)
        for k in range(sq.dim)
    )


def omega_homomorphism_failures(S: FiniteInverseSemigroup, limit: int = 10) -> List[Tuple[int, int]]:
    """Basis pairs (k1, k2) of the tensor square where omega(x y) differs from
    omega(x) omega(y); empty iff omega is multiplicative."""
    sq = TensorSquare(S)
    w = omega_index(S)
    T = S.table
    bad = []
    for k1 in range(sq.dim):
        for k2 in range(sq.dim):
            if w[sq.product_index(k1, k2)] != T[w[k1]][w[k2]]:
                bad.append((k1, k2))
                if len(bad) >= limit:
                    return bad
    return bad


@dataclass(frozen=True)
class IdealData:
    I: Subspace
    J: Subspace
    I_perp: Subspace
    J_perp: Subspace

    def dims(self) -> Dict[str, int]:
        return {"I": self.I.dim, "J": self.J.dim, "I_perp": self.I_perp.dim, "J_perp": self.J_perp.dim}

    def to_json(self) -> dict:
        def rows(V: Subspace):
            return [[[c, str(v)] for c, v in r] for r in V.rows]

        out = {"dims": self.dims()}
        out["I_perp_basis"] = rows(self.I_perp)
        out["J_perp_basis"] = rows(self.J_perp)
        return out


def _difference(p: int, q: int) -> SparseRow:
    return {} if p == q else {p: ONE, q: -ONE}


def ideal_generator_pairs(S: FiniteInverseSemigroup):
    """Distinct (set, st) pairs; the ideal is spanned by
    delta_(set,x) - delta_(st,x) for these pairs and every x."""
    T = S.table
    n = S.order
    pairs = set()
    for s in range(n):
        for e in S.idempotents:
            se = T[s][e]
            for t in range(n):
                a, b = T[se][t], T[s][t]
                if a != b:
                    pairs.add((a, b))
    return sorted(pairs)


def ideal_I(S: FiniteInverseSemigroup) -> IdealData:
    n = S.order
    pairs = ideal_generator_pairs(S)
    I = Subspace.span(
        (_difference(a * n + x, b * n + x) for a, b in pairs for x in range(n)), n * n
    )
    J = I.image(omega(S))
    return IdealData(I, J, I.annihilator(), J.annihilator())


def J_direct(S: FiniteInverseSemigroup) -> Subspace:
    """span{delta_set - delta_st}, computed without going through I."""
    return Subspace.span((_difference(a, b) for a, b in ideal_generator_pairs(S)), S.order)


def in_I_perp(S: FiniteInverseSemigroup, f) -> bool:
    """f(set, x) = f(st, x) for all s, t, x and idempotents e."""
    n = S.order
    return all(f[a * n + x] == f[b * n + x] for a, b in ideal_generator_pairs(S) for x in range(n))


def in_J_perp(S: FiniteInverseSemigroup, h) -> bool:
    """h(set) = h(st) for all s, t and idempotents e."""
    return all(h[a] == h[b] for a, b in ideal_generator_pairs(S))


def module_defect_generators(S: FiniteInverseSemigroup) -> List[SparseRow]:
    """delta_s.delta_e (x) delta_x - delta_s (x) delta_e.delta_x: with the
    identity left action this is delta_(se,x) - delta_(s,x)."""
    _, act = build_algebra(S)
    n = S.order
    gens = []
    for i, e in enumerate(S.idempotents):
        for s in range(n):
            for x in range(n):
                g = _difference(act.right[s][i] * n + x, s * n + act.left[i][x])
                if g:
                    gens.append(g)
    return gens


def ideal_closure(S: FiniteInverseSemigroup) -> Subspace:
    """Smallest subspace containing the module defects and closed under both
    tensor-square actions, by fixed-point iteration."""
    sq = TensorSquare(S)
    n = S.order
    left = [[sq.left_index(a, k) for k in range(sq.dim)] for a in range(n)]
    right = [[sq.right_index(k, a) for k in range(sq.dim)] for a in range(n)]
    ech = Echelon(sq.dim)
    queue = module_defect_generators(S)
    while queue:
        v = queue.pop()
        if not ech.add(v):
            continue
        for a in range(n):
            for img in (left[a], right[a]):
                w = _push(v, img)
                if w:
                    queue.append(w)
    return Subspace._from_echelon(ech)


def ideal_closure_crosscheck(S: FiniteInverseSemigroup, ideals: IdealData = None) -> bool:
    if ideals is None:
        ideals = ideal_I(S)
    return ideal_closure(S) == ideals.I
