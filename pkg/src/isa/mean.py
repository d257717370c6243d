"""Invariant means on finite inverse semigroups.

On a finite semigroup a mean is a probability vector, so an invariant
mean exists iff a small LP is feasible.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .linalg import ONE, ZERO, RationalMatrix, lp_feasible, to_fraction
from .semigroup import FiniteInverseSemigroup

SIDES = ("left", "right", "both")


class DimensionMismatch(ValueError):
    pass


@dataclass(frozen=True)
class MeanCertificate:
    mu: Tuple[Fraction, ...]
    side: str = "both"

    def to_json(self) -> dict:
        return {"mu": [[str(x.numerator), str(x.denominator)] for x in self.mu]}

    @classmethod
    def from_json(cls, data: dict, side: str = "both") -> "MeanCertificate":
        return cls(tuple(Fraction(int(p), int(q)) for p, q in data["mu"]), side)


@dataclass(frozen=True)
class Violation:
    kind: str  # "nonnegativity", "normalization", "left", "right"
    s: Optional[int]
    u: Optional[int]
    residual: Fraction

    def to_json(self) -> dict:
        return {"kind": self.kind, "s": self.s, "u": self.u, "residual": str(self.residual)}


def _check_side(side: str):
    if side not in SIDES:
        raise ValueError(f"side must be one of {SIDES}, got {side!r}")


def invariance_rows(S: FiniteInverseSemigroup, side: str = "both"):
    """Yield (kind, s, u, row) where row is the sparse form of
    sum_{t : translate(t) = u} mu(t) - mu(u)."""
    _check_side(side)
    n = S.order
    T = S.table
    kinds = []
    if side in ("left", "both"):
        kinds.append(("left", lambda s, t: T[s][t]))
    if side in ("right", "both"):
        kinds.append(("right", lambda s, t: T[t][s]))
    for kind, move in kinds:
        for s in range(n):
            rows = [dict() for _ in range(n)]
            for t in range(n):
                r = rows[move(s, t)]
                r[t] = r.get(t, ZERO) + ONE
            for u in range(n):
                r = rows[u]
                r[u] = r.get(u, ZERO) - ONE
                yield kind, s, u, {c: v for c, v in r.items() if v}


def find_invariant_mean(S: FiniteInverseSemigroup, side: str = "both") -> Optional[MeanCertificate]:
    """Exact LP search for an invariant probability vector."""
    n = S.order
    rows = [{t: ONE for t in range(n)}]
    rhs = [ONE]
    for _, _, _, r in invariance_rows(S, side):
        if r:
            rows.append(r)
            rhs.append(ZERO)
    x = lp_feasible(RationalMatrix.from_sparse(rows, n), rhs)
    if x is None:
        return None
    return MeanCertificate(tuple(x), side)


def verify_mean(S: FiniteInverseSemigroup, mu, side: str = "both") -> List[Violation]:
    """Every violated constraint with its exact residual; empty iff valid."""
    if isinstance(mu, MeanCertificate):
        mu = mu.mu
    mu = [to_fraction(x) for x in mu]
    if len(mu) != S.order:
        raise DimensionMismatch(f"mean has length {len(mu)}, semigroup has order {S.order}")
    out = []
    for t, x in enumerate(mu):
        if x < 0:
            out.append(Violation("nonnegativity", None, t, x))
    total = sum(mu, ZERO)
    if total != 1:
        out.append(Violation("normalization", None, None, total - 1))
    for kind, s, u, row in invariance_rows(S, side):
        r = sum((c * mu[t] for t, c in row.items()), ZERO)
        if r:
            out.append(Violation(kind, s, u, r))
    return out


def uniform(n: int) -> List[Fraction]:
    return [Fraction(1, n)] * n


def point_mass(n: int, z: int) -> List[Fraction]:
    v = [ZERO] * n
    v[z] = ONE
    return v


def translate_left(S: FiniteInverseSemigroup, f: Sequence, s: int) -> list:
    """(s.f)(t) = f(st)."""
    return [f[S.table[s][t]] for t in range(S.order)]


def translate_right(S: FiniteInverseSemigroup, f: Sequence, s: int) -> list:
    """(f.s)(t) = f(ts)."""
    return [f[S.table[t][s]] for t in range(S.order)]
