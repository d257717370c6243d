"""Acceptance criteria, one test each.

Every test appends a PASS/FAIL line to ACCEPTANCE_LINES before asserting;
the lines are printed in the terminal summary.
"""

import itertools
import random
import time
from fractions import Fraction

from conftest import ACCEPTANCE_LINES
from isa.algebra import ideal_closure_crosscheck
from isa.cohomology import FiniteBimodule, h1_dimension
from isa.congruence import quotient_group
from isa.diagonal import (
    classical_system,
    diagonal_from_mean,
    find_classical_diagonal,
    find_module_diagonal,
    module_system,
    pushforward_diagonal,
    uniform_group_diagonal,
    verify_diagonal,
)
from isa.linalg import lp_feasible, residual
from isa.mean import find_invariant_mean
from isa.semigroup import cyclic_table, gen_brandt
from oracles import vertex_enumeration_feasible


def record(number, ok, detail):
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'} - {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def test_criterion_1_mean_gives_module_diagonal(corpus, ideals_of):
    failures, slow = [], []
    total = time.perf_counter()
    for name, S in corpus.items():
        start = time.perf_counter()
        mean = find_invariant_mean(S)
        right = find_invariant_mean(S, side="right")
        ideals = ideals_of(name)
        cert = diagonal_from_mean(S, right, ideals) if right is not None else None
        module = find_module_diagonal(S, ideals)
        elapsed = time.perf_counter() - start
        if mean is None or cert is None or cert.residual_report or module is None or not module.valid:
            failures.append(name)
        if S.order <= 9 and elapsed >= 2.0:
            slow.append(f"{name}={elapsed:.2f}s")
    total = time.perf_counter() - total
    ok = not failures and not slow and total < 60.0
    record(1, ok, f"{len(corpus)} members, failures={failures}, slow={slow}, total={total:.1f}s")
    assert ok


def test_criterion_2_brandt_strict_separation():
    S = gen_brandt(cyclic_table(2), 2)
    module = find_module_diagonal(S)
    classical = find_classical_diagonal(S)
    module_ok = module is not None and module.valid
    classical_infeasible = classical is None
    no_identity = S.identity() is None
    ok = module_ok and classical_infeasible and no_identity
    record(
        2,
        ok,
        f"module feasible={module_ok}, classical infeasible={classical_infeasible}, no identity={no_identity}",
    )
    assert ok


def test_criterion_3_classical_witness_verifies_module(corpus, ideals_of):
    checked, failures = 0, []
    for name, S in corpus.items():
        cl = find_classical_diagonal(S)
        if cl is None or not cl.valid:
            continue
        checked += 1
        if verify_diagonal(S, cl.M, "module", ideals_of(name)):
            failures.append(name)
    ok = not failures and checked > 0
    record(3, ok, f"{checked} classical witnesses checked, failures={failures}")
    assert ok


def test_criterion_4_group_collapse(corpus, ideals_of):
    groups = [name for name, S in corpus.items() if S.is_group()]
    failures = []
    for name in groups:
        S = corpus[name]
        d = ideals_of(name)
        cl, mod = classical_system(S), module_system(S, d)
        M = uniform_group_diagonal(S)
        good = (
            d.I.dim == 0
            and d.J.dim == 0
            and cl.solve() is not None
            and mod.solve() is not None
            and cl.homogeneous_solutions().dim == mod.homogeneous_solutions().dim
            and not cl.residuals(M)
            and not mod.residuals(M)
        )
        if not good:
            failures.append(name)
    ok = not failures and len(groups) == 6
    record(4, ok, f"groups={groups}, failures={failures}")
    assert ok


def test_criterion_5_pushforward(corpus, ideals_of):
    failures = []
    for name, S in corpus.items():
        G = quotient_group(S)
        module = find_module_diagonal(S, ideals_of(name))
        if module is None or not pushforward_diagonal(S, G, module).valid:
            failures.append(name)
        if S.zero() is not None and G.order != 1:
            failures.append(f"{name}: |G_S|={G.order}")
    ok = not failures
    record(5, ok, f"{len(corpus)} members, failures={failures}")
    assert ok


def test_criterion_6_closure_crosscheck(corpus, ideals_of):
    failures = [name for name, S in corpus.items() if not ideal_closure_crosscheck(S, ideals_of(name))]
    ok = not failures
    record(6, ok, f"{len(corpus)} members, failures={failures}")
    assert ok


def test_criterion_7_cohomology(corpus):
    failures = []
    # I1 = {id, empty map} is itself a two-element chain
    regular = [name for name, S in corpus.items() if S.is_group() or _is_chain(S)]
    for name in regular:
        S = corpus[name]
        if h1_dimension(S, FiniteBimodule.regular(S)).dim_H1 != 0:
            failures.append(f"{name}: regular")
    unital = [name for name, S in corpus.items() if S.identity() is not None and S.order <= 13]
    for name in unital:
        S = corpus[name]
        if h1_dimension(S, FiniteBimodule.zero_action(S)).dim_Z != 0:
            failures.append(f"{name}: zero action")
    ok = not failures and {"Z2", "Z2xZ2", "chain2", "chain4"} <= set(regular)
    record(7, ok, f"regular on {regular}, zero action on {len(unital)} unital members, failures={failures}")
    assert ok


def _is_chain(S):
    T = S.table
    return len(S.idempotents) == S.order and all(T[a][b] in (a, b) for a in range(S.order) for b in range(S.order))


def _random_instance(rng):
    m = rng.randint(1, 4)
    n = rng.randint(1, 10)
    A = [[Fraction(rng.randint(-3, 3)) for _ in range(n)] for _ in range(m)]
    if rng.random() < 0.5:
        x0 = [Fraction(rng.randint(0, 2)) for _ in range(n)]
        b = [sum(a * x for a, x in zip(row, x0)) for row in A]
    else:
        b = [Fraction(rng.randint(-3, 3)) for _ in range(m)]
    return A, b


def test_criterion_8_lp_oracle():
    rng = random.Random(20240601)
    mismatches, feasible = [], 0
    for i in range(50):
        A, b = _random_instance(rng)
        x = lp_feasible(A, b)
        expected = vertex_enumeration_feasible(A, b)
        got = x is not None
        if got:
            feasible += 1
            if min(x) < 0 or any(residual(A, x, b)):
                got = "bad witness"
        if got != expected:
            mismatches.append(i)
    ok = not mismatches
    record(8, ok, f"50 instances ({feasible} feasible), mismatches={mismatches}")
    assert ok


def _partial_bijections(n):
    out = []
    for k in range(n + 1):
        for dom in itertools.combinations(range(n), k):
            for img in itertools.permutations(range(n), k):
                out.append(dict(zip(dom, img)))
    return out


def _brandt_elements(group_order, n):
    zero = None
    elems = [(i, g, j) for i in range(n) for g in range(group_order) for j in range(n)] + [zero]

    def mul(x, y):
        if x is None or y is None or x[2] != y[0]:
            return zero
        return (x[0], (x[1] + y[1]) % group_order, y[2])

    idem = [x for x in elems if mul(x, x) == x]
    return elems, idem


def test_criterion_9_structural_counts(corpus):
    i2 = len(_partial_bijections(2))
    i3 = len(_partial_bijections(3))
    b_elems, b_idem = _brandt_elements(2, 2)
    B = gen_brandt(cyclic_table(2), 2)
    got = {
        "I2": corpus["I2"].order,
        "I3": corpus["I3"].order,
        "B": B.order,
        "E(B)": len(B.idempotents),
    }
    want = {"I2": i2, "I3": i3, "B": len(b_elems), "E(B)": len(b_idem)}
    ok = got == want
    record(9, ok, f"library {got}, enumeration {want}")
    assert ok
