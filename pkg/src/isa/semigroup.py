"""Finite inverse semigroups given by Cayley table, plus standard families."""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from math import comb, factorial
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

Table = Tuple[Tuple[int, ...], ...]


class SemigroupError(ValueError):
    """Base class for every rejected table."""


class MalformedTable(SemigroupError):
    pass


class NotAssociative(SemigroupError):
    def __init__(self, s: int, t: int, u: int):
        self.s, self.t, self.u = s, t, u
        super().__init__(f"NotAssociative: (s*t)*u != s*(t*u) at s={s}, t={t}, u={u}")


class NoInverse(SemigroupError):
    def __init__(self, s: int):
        self.s = s
        super().__init__(f"NoInverse: element {s} has no x with sxs=s and xsx=x")


class NonUniqueInverse(SemigroupError):
    def __init__(self, s: int, x1: int, x2: int):
        self.s, self.x1, self.x2 = s, x1, x2
        super().__init__(f"NonUniqueInverse: element {s} has inverses {x1} and {x2}")


class IdempotentsNotCommuting(SemigroupError):
    def __init__(self, e: int, f: int):
        self.e, self.f = e, f
        super().__init__(f"IdempotentsNotCommuting: {e} and {f}")


class InvalidGroup(SemigroupError):
    pass


class InvalidParameters(SemigroupError):
    pass


class TooLarge(InvalidParameters):
    pass


@dataclass(frozen=True)
class FiniteInverseSemigroup:
    """A validated inverse semigroup on elements 0..order-1.

    Build these through :func:`validate` (or a generator); the constructor
    itself does not re-check the axioms.
    """

    table: Table
    star: Tuple[int, ...]
    idempotents: Tuple[int, ...]
    labels: Optional[Tuple[str, ...]] = None
    name: str = ""

    @property
    def order(self) -> int:
        return len(self.table)

    def __len__(self) -> int:
        return len(self.table)

    def mul(self, s: int, t: int) -> int:
        return self.table[s][t]

    def mul3(self, s: int, t: int, u: int) -> int:
        return self.table[self.table[s][t]][u]

    def is_idempotent(self, s: int) -> bool:
        return self.table[s][s] == s

    def label(self, s: int) -> str:
        return self.labels[s] if self.labels else str(s)

    def zero(self) -> Optional[int]:
        for z in range(self.order):
            if all(self.table[z][s] == z == self.table[s][z] for s in range(self.order)):
                return z
        return None

    def identity(self) -> Optional[int]:
        for e in range(self.order):
            if all(self.table[e][s] == s == self.table[s][e] for s in range(self.order)):
                return e
        return None

    def is_group(self) -> bool:
        return len(self.idempotents) == 1 and self.identity() is not None

    def is_commutative(self) -> bool:
        n = self.order
        return all(self.table[s][t] == self.table[t][s] for s in range(n) for t in range(s))

    def renamed(self, name: str) -> "FiniteInverseSemigroup":
        return FiniteInverseSemigroup(self.table, self.star, self.idempotents, self.labels, name)

    def to_json(self) -> dict:
        out = {"name": self.name, "order": self.order, "table": [list(r) for r in self.table]}
        if self.labels:
            out["labels"] = list(self.labels)
        return out


def _check_shape(table) -> Table:
    if not isinstance(table, (list, tuple)) or not table:
        raise MalformedTable("table must be a non-empty list of rows")
    n = len(table)
    rows = []
    for i, row in enumerate(table):
        if not isinstance(row, (list, tuple)) or len(row) != n:
            raise MalformedTable(f"row {i} does not have length {n}")
        for x in row:
            if isinstance(x, bool) or not isinstance(x, int) or not 0 <= x < n:
                raise MalformedTable(f"entry {x!r} in row {i} is not an index in 0..{n - 1}")
        rows.append(tuple(row))
    return tuple(rows)


def validate(table, labels: Optional[Sequence[str]] = None, name: str = "") -> FiniteInverseSemigroup:
    """Check the inverse-semigroup axioms and compute star and idempotents.

    Raises a :class:`SemigroupError` subclass naming the first violation.
    """
    tab = _check_shape(table)
    n = len(tab)
    if labels is not None and len(labels) != n:
        raise MalformedTable(f"{len(labels)} labels for {n} elements")
    for s in range(n):
        ts = tab[s]
        for t in range(n):
            st = ts[t]
            rt = tab[t]
            row_st = tab[st]
            for u in range(n):
                if row_st[u] != ts[rt[u]]:
                    raise NotAssociative(s, t, u)
    star = []
    for s in range(n):
        found = [x for x in range(n) if tab[tab[s][x]][s] == s and tab[tab[x][s]][x] == x]
        if not found:
            raise NoInverse(s)
        if len(found) > 1:
            raise NonUniqueInverse(s, found[0], found[1])
        star.append(found[0])
    idem = tuple(e for e in range(n) if tab[e][e] == e)
    for i, e in enumerate(idem):
        for f in idem[i + 1:]:
            if tab[e][f] != tab[f][e]:
                raise IdempotentsNotCommuting(e, f)
    return FiniteInverseSemigroup(
        tab, tuple(star), idem, tuple(labels) if labels is not None else None, name
    )


def check_properties(S: FiniteInverseSemigroup) -> List[str]:
    """Exhaustive re-check of the derived structure; returns violations."""
    bad = []
    n = S.order
    T = S.table
    for s in range(n):
        if S.star[S.star[s]] != s:
            bad.append(f"star not involutive at {s}")
        for t in range(n):
            if S.star[T[s][t]] != T[S.star[t]][S.star[s]]:
                bad.append(f"(st)* != t*s* at {s},{t}")
    for e in S.idempotents:
        if S.star[e] != e:
            bad.append(f"idempotent {e} not self-inverse")
        for f in S.idempotents:
            if T[e][f] != T[f][e] or T[e][f] not in S.idempotents:
                bad.append(f"idempotents {e},{f} not a commuting pair in E")
    return bad


# ---------------------------------------------------------------------------
# groups

def check_group(table) -> int:
    """Validate a group table; returns the identity index."""
    try:
        S = validate(table)
    except SemigroupError as exc:
        raise InvalidGroup(f"not a group: {exc}") from exc
    one = S.identity()
    if one is None or len(S.idempotents) != 1:
        raise InvalidGroup("not a group: no identity or more than one idempotent")
    return one


def cyclic_table(k: int) -> Table:
    if k < 1:
        raise InvalidParameters("cyclic group order must be >= 1")
    return tuple(tuple((i + j) % k for j in range(k)) for i in range(k))


def _perm_group_table(perms: List[Tuple[int, ...]]) -> Table:
    index = {p: i for i, p in enumerate(perms)}
    # product p*q: apply p first, then q
    return tuple(
        tuple(index[tuple(q[p[x]] for x in range(len(p)))] for q in perms) for p in perms
    )


def symmetric_group_table(n: int) -> Table:
    if not 1 <= n <= 4:
        raise InvalidParameters("symmetric group degree must be in 1..4")
    return _perm_group_table(sorted(itertools.permutations(range(n))))


def dihedral_table(k: int) -> Table:
    """Dihedral group of order 2k acting on a k-gon."""
    if k < 3:
        raise InvalidParameters("dihedral group needs k >= 3")
    rots = [tuple((x + r) % k for x in range(k)) for r in range(k)]
    refls = [tuple((r - x) % k for x in range(k)) for r in range(k)]
    return _perm_group_table(sorted(rots + refls))


def group_table_from_spec(spec: str) -> Table:
    """Parse ``trivial``, ``cyclic:k``, ``klein``, ``symmetric:n`` or
    ``dihedral:k``."""
    kind, _, arg = spec.partition(":")
    try:
        if kind == "trivial" and not arg:
            return cyclic_table(1)
        if kind == "klein" and not arg:
            return product_table(cyclic_table(2), cyclic_table(2))
        if kind == "cyclic":
            return cyclic_table(int(arg))
        if kind == "symmetric":
            return symmetric_group_table(int(arg))
        if kind == "dihedral":
            return dihedral_table(int(arg))
    except ValueError as exc:
        if isinstance(exc, SemigroupError):
            raise
        raise InvalidParameters(f"bad group spec {spec!r}") from exc
    raise InvalidParameters(f"unknown group spec {spec!r}")


def product_table(t1, t2) -> Table:
    n2 = len(t2)
    return tuple(
        tuple(t1[a][c] * n2 + t2[b][d] for c in range(len(t1)) for d in range(n2))
        for a in range(len(t1))
        for b in range(n2)
    )


# ---------------------------------------------------------------------------
# generators

def gen_group(spec) -> FiniteInverseSemigroup:
    """A group as an inverse semigroup; ``spec`` is a spec string or a table."""
    if isinstance(spec, str):
        table, name = group_table_from_spec(spec), spec
    else:
        table, name = spec, "group"
    check_group(table)
    return validate(table, name=name)


def gen_semilattice_chain(n: int) -> FiniteInverseSemigroup:
    """Chain e_0 > e_1 > ... > e_{n-1} under meet; e_0 is the identity."""
    if n < 1:
        raise InvalidParameters("chain length must be >= 1")
    table = [[max(i, j) for j in range(n)] for i in range(n)]
    return validate(table, labels=[f"e{i}" for i in range(n)], name=f"chain{n}")


def gen_brandt(group_table, n: int, name: str = "") -> FiniteInverseSemigroup:
    """Brandt semigroup B(G, n): triples (i, g, j) plus an absorbing zero,
    which is the last element."""
    if n < 1:
        raise InvalidParameters("index set size must be >= 1")
    one = check_group(group_table)
    k = len(group_table)
    triples = [(i, g, j) for i in range(n) for g in range(k) for j in range(n)]
    index = {t: x for x, t in enumerate(triples)}
    zero = len(triples)
    table = []
    for (i, g, j) in triples:
        row = []
        for (a, h, b) in triples:
            row.append(index[(i, group_table[g][h], b)] if j == a else zero)
        row.append(zero)
        table.append(row)
    table.append([zero] * (zero + 1))
    labels = [f"({i},{g},{j})" if (k > 1 or g != one) else f"({i},{j})" for (i, g, j) in triples]
    labels.append("0")
    return validate(table, labels=labels, name=name or f"brandt_{k}_{n}")


def gen_symmetric_inverse(n: int) -> FiniteInverseSemigroup:
    """Symmetric inverse monoid I_n of partial bijections on {0..n-1}.

    A map is a tuple whose entry x is the image of x or None; the product
    s*t applies s first, then t.
    """
    if n < 1:
        raise InvalidParameters("n must be >= 1")
    if n > 4:
        raise TooLarge(f"I_{n} has {sum(comb(n, k) ** 2 * factorial(k) for k in range(n + 1))} elements")
    maps = []
    for k in range(n + 1):
        for dom in itertools.combinations(range(n), k):
            for img in itertools.permutations(range(n), k):
                m = [None] * n
                for x, y in zip(dom, img):
                    m[x] = y
                maps.append(tuple(m))
    index = {m: i for i, m in enumerate(maps)}

    def compose(s, t):
        return tuple(None if s[x] is None else t[s[x]] for x in range(n))

    table = [[index[compose(s, t)] for t in maps] for s in maps]
    labels = ["[" + ",".join("-" if y is None else str(y) for y in m) + "]" for m in maps]
    return validate(table, labels=labels, name=f"I{n}")


def gen_product(S1: FiniteInverseSemigroup, S2: FiniteInverseSemigroup, name: str = "") -> FiniteInverseSemigroup:
    """Direct product with componentwise multiplication; (a, b) -> a*|S2| + b."""
    labels = [f"({S1.label(a)},{S2.label(b)})" for a in range(S1.order) for b in range(S2.order)]
    return validate(
        product_table(S1.table, S2.table),
        labels=labels,
        name=name or f"{S1.name or 'S'}x{S2.name or 'T'}",
    )


def gen_clifford(groups: Sequence, maps: Sequence[Sequence[int]], name: str = "") -> FiniteInverseSemigroup:
    """Clifford semigroup over a chain of groups G_0 > G_1 > ... > G_{k-1}.

    ``maps[i]`` is the connecting homomorphism G_i -> G_{i+1}, given as an
    index list.  Elements are (level, g) in level-major order.
    """
    if not groups:
        raise InvalidParameters("need at least one group")
    if len(maps) != len(groups) - 1:
        raise InvalidParameters("need exactly one connecting map per adjacent pair of levels")
    for G in groups:
        check_group(G)
    for i, phi in enumerate(maps):
        G, H = groups[i], groups[i + 1]
        if len(phi) != len(G) or any(not 0 <= y < len(H) for y in phi):
            raise InvalidParameters(f"map {i} has the wrong shape")
        for a in range(len(G)):
            for b in range(len(G)):
                if phi[G[a][b]] != H[phi[a]][phi[b]]:
                    raise InvalidParameters(f"map {i} is not a homomorphism at ({a},{b})")

    def push(level, g, target):
        while level < target:
            g = maps[level][g]
            level += 1
        return g

    elems = [(lv, g) for lv, G in enumerate(groups) for g in range(len(G))]
    index = {e: i for i, e in enumerate(elems)}
    table = []
    for (a, g) in elems:
        row = []
        for (b, h) in elems:
            c = max(a, b)
            row.append(index[(c, groups[c][push(a, g, c)][push(b, h, c)])])
        table.append(row)
    labels = [f"g{g}@{lv}" for lv, g in elems]
    return validate(table, labels=labels, name=name or "clifford")


def identity_maps(k: int, levels: int) -> List[List[int]]:
    return [list(range(k)) for _ in range(levels - 1)]


# ---------------------------------------------------------------------------
# file format

def from_json(data: dict) -> FiniteInverseSemigroup:
    """Read the semigroup file format; star and idempotents are recomputed."""
    if not isinstance(data, dict) or "table" not in data:
        raise MalformedTable("expected an object with a 'table' field")
    table = data["table"]
    order = data.get("order")
    if order is not None and (not isinstance(table, list) or order != len(table)):
        raise MalformedTable(f"declared order {order} does not match the table")
    labels = data.get("labels")
    if labels is not None and not (isinstance(labels, list) and all(isinstance(x, str) for x in labels)):
        raise MalformedTable("labels must be a list of strings")
    return validate(table, labels=labels, name=str(data.get("name", "")))


def load(path) -> FiniteInverseSemigroup:
    text = Path(path).read_text()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedTable(f"invalid JSON: {exc}") from exc
    S = from_json(data)
    if not S.name:
        S = S.renamed(Path(path).stem)
    return S


def dump(S: FiniteInverseSemigroup, path):
    Path(path).write_text(json.dumps(S.to_json(), sort_keys=True) + "\n")


def builtin_corpus() -> Dict[str, FiniteInverseSemigroup]:
    """The pinned regression corpus, keyed by name."""
    out: Dict[str, FiniteInverseSemigroup] = {}
    for k in range(2, 7):
        out[f"Z{k}"] = gen_group(f"cyclic:{k}").renamed(f"Z{k}")
    out["Z2xZ2"] = gen_group("klein").renamed("Z2xZ2")
    for k in range(2, 5):
        out[f"chain{k}"] = gen_semilattice_chain(k)
    c2 = gen_semilattice_chain(2)
    out["diamond"] = gen_product(c2, c2, name="diamond")
    z2 = cyclic_table(2)
    out["clifford_Z2_chain2"] = gen_clifford([z2, z2], identity_maps(2, 2), name="clifford_Z2_chain2")
    for gname, spec in (("trivial", "trivial"), ("Z2", "cyclic:2"), ("Z3", "cyclic:3")):
        out[f"brandt_{gname}_2"] = gen_brandt(group_table_from_spec(spec), 2, name=f"brandt_{gname}_2")
    for k in (1, 2, 3):
        out[f"I{k}"] = gen_symmetric_inverse(k)
    return out
