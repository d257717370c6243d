"""Minimum group congruence and the maximal group image G_S."""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Tuple

from .semigroup import FiniteInverseSemigroup, validate


class NotACongruence(RuntimeError):
    pass


class NotAGroup(RuntimeError):
    pass


@dataclass(frozen=True)
class GroupImage:
    source: FiniteInverseSemigroup
    class_of: Tuple[int, ...]
    classes: Tuple[Tuple[int, ...], ...]
    table: Tuple[Tuple[int, ...], ...]
    identity: int

    @property
    def order(self) -> int:
        return len(self.classes)

    def pi(self, s: int) -> int:
        return self.class_of[s]

    def as_semigroup(self) -> FiniteInverseSemigroup:
        name = f"G({self.source.name})" if self.source.name else "G_S"
        return validate(self.table, name=name)

    def to_json(self) -> dict:
        return {
            "classes": [list(c) for c in self.classes],
            "quotient_table": [list(r) for r in self.table],
        }


def min_group_congruence(S: FiniteInverseSemigroup) -> List[List[int]]:
    """Partition of S under s ~ t iff se = te for some idempotent e.

    The relation is built by the direct scan and then checked to be an
    equivalence compatible with the product on both sides.
    """
    n = S.order
    T = S.table
    rel = [[False] * n for _ in range(n)]
    for e in S.idempotents:
        col = [T[s][e] for s in range(n)]
        for s in range(n):
            cs = col[s]
            rs = rel[s]
            for t in range(n):
                if col[t] == cs:
                    rs[t] = True
    for s in range(n):
        if not rel[s][s]:
            raise NotACongruence(f"relation not reflexive at {s}")
        for t in range(n):
            if rel[s][t] != rel[t][s]:
                raise NotACongruence(f"relation not symmetric at ({s},{t})")
    for s in range(n):
        for t in range(n):
            if rel[s][t]:
                rt = rel[t]
                rs = rel[s]
                for u in range(n):
                    if rt[u] and not rs[u]:
                        raise NotACongruence(f"relation not transitive at ({s},{t},{u})")
    classes: List[List[int]] = []
    seen = [False] * n
    for s in range(n):
        if not seen[s]:
            cls = [t for t in range(n) if rel[s][t]]
            for t in cls:
                seen[t] = True
            classes.append(cls)
    for s in range(n):
        for t in range(n):
            if not rel[s][t]:
                continue
            for u in range(n):
                if not rel[T[s][u]][T[t][u]] or not rel[T[u][s]][T[u][t]]:
                    raise NotACongruence(f"not compatible with the product at ({s},{t},{u})")
    return classes


def quotient_group(S: FiniteInverseSemigroup, partition=None) -> GroupImage:
    """Quotient S/~ with its Cayley table, verified to be a group."""
    if partition is None:
        partition = min_group_congruence(S)
    n = S.order
    class_of = [-1] * n
    for i, cls in enumerate(partition):
        for s in cls:
            class_of[s] = i
    if -1 in class_of:
        raise NotAGroup("partition does not cover S")
    k = len(partition)
    reps = [cls[0] for cls in partition]
    table = [[class_of[S.table[reps[a]][reps[b]]] for b in range(k)] for a in range(k)]
    for s in range(n):
        for t in range(n):
            if table[class_of[s]][class_of[t]] != class_of[S.table[s][t]]:
                raise NotAGroup(f"product not well defined at ({s},{t})")
    ident = {class_of[e] for e in S.idempotents}
    if len(ident) != 1:
        raise NotAGroup("idempotents fall into more than one class")
    one = ident.pop()
    for a in range(k):
        if table[one][a] != a or table[a][one] != a:
            raise NotAGroup("class of E is not an identity")
        if not any(table[a][b] == one and table[b][a] == one for b in range(k)):
            raise NotAGroup(f"class {a} has no inverse")
        for b in range(k):
            for c in range(k):
                if table[table[a][b]][c] != table[a][table[b][c]]:
                    raise NotAGroup("quotient product not associative")
    return GroupImage(
        S,
        tuple(class_of),
        tuple(tuple(c) for c in partition),
        tuple(tuple(r) for r in table),
        one,
    )


def induced_actions_trivial(S: FiniteInverseSemigroup, G: GroupImage) -> bool:
    """Whether pi(se) = pi(s) (and pi(es) = pi(s)) for every s and idempotent e,
    i.e. both induced idempotent actions on l1(G_S) are the identity."""
    pi = G.class_of
    T = S.table
    return all(
        pi[T[s][e]] == pi[s] and pi[T[e][s]] == pi[s]
        for s in range(S.order)
        for e in S.idempotents
    )


def is_homomorphism(S: FiniteInverseSemigroup, G: GroupImage) -> bool:
    pi = G.class_of
    return all(
        G.table[pi[s]][pi[t]] == pi[S.table[s][t]]
        for s in range(S.order)
        for t in range(S.order)
    )
