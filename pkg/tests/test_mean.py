from fractions import Fraction

import pytest

from isa.mean import (
    DimensionMismatch,
    MeanCertificate,
    find_invariant_mean,
    point_mass,
    translate_left,
    translate_right,
    uniform,
    verify_mean,
)
from isa.semigroup import cyclic_table, gen_brandt, gen_group, gen_semilattice_chain


def functional_invariance(S, mu):
    """m(s.f) = m(f.s) = m(f) for every indicator f, straight from the
    translation formulas."""
    n = S.order
    for u in range(n):
        f = [1 if t == u else 0 for t in range(n)]
        m = sum(a * b for a, b in zip(mu, f))
        for s in range(n):
            if sum(a * b for a, b in zip(mu, translate_left(S, f, s))) != m:
                return False
            if sum(a * b for a, b in zip(mu, translate_right(S, f, s))) != m:
                return False
    return True


@pytest.mark.parametrize("k", [1, 2, 3, 5])
def test_group_uniform_verifies(k):
    S = gen_group(f"cyclic:{k}")
    assert verify_mean(S, uniform(k)) == []
    cert = find_invariant_mean(S)
    assert cert is not None and verify_mean(S, cert) == []


def test_nonabelian_group_mean_is_uniform():
    S = gen_group("symmetric:3")
    cert = find_invariant_mean(S)
    # the only invariant probability vector on a finite group
    assert list(cert.mu) == uniform(6)


def test_chain2_point_mass_at_bottom():
    S = gen_semilattice_chain(2)
    assert verify_mean(S, point_mass(2, 1)) == []
    assert functional_invariance(S, point_mass(2, 1))
    assert list(find_invariant_mean(S).mu) == [0, 1]


def test_brandt_point_mass_at_zero():
    S = gen_brandt(cyclic_table(2), 2)
    z = S.zero()
    assert verify_mean(S, point_mass(S.order, z)) == []
    assert list(find_invariant_mean(S).mu) == point_mass(S.order, z)


def test_Z2_violation_reported():
    S = gen_group("cyclic:2")
    bad = verify_mean(S, [1, 0])
    assert any(v.kind == "left" and v.s == 1 and v.u == 0 and v.residual == -1 for v in bad)


def test_chain2_top_point_mass_violates():
    S = gen_semilattice_chain(2)
    bad = verify_mean(S, point_mass(2, 0))
    # sum over {t : tz = z} is mu(e) + mu(z) = 1 against mu(z) = 0
    assert any(v.kind == "right" and v.s == 1 and v.u == 1 and v.residual == 1 for v in bad)


def test_normalization_and_sign_violations():
    S = gen_group("cyclic:2")
    kinds = {v.kind for v in verify_mean(S, [Fraction(-1), Fraction(3)])}
    assert {"nonnegativity", "normalization"} <= kinds


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        verify_mean(gen_group("cyclic:3"), [1, 0])


def test_every_corpus_member_has_mean(corpus):
    for S in corpus.values():
        cert = find_invariant_mean(S)
        assert cert is not None, S.name
        assert verify_mean(S, cert) == []
        assert functional_invariance(S, cert.mu)
        z = S.zero()
        if z is not None:
            assert verify_mean(S, point_mass(S.order, z)) == []


@pytest.mark.parametrize("side", ["left", "right"])
def test_one_sided_means(side):
    S = gen_brandt(cyclic_table(2), 2)
    cert = find_invariant_mean(S, side=side)
    assert verify_mean(S, cert, side=side) == []


def test_left_zero_semigroup_has_no_left_invariant_mean():
    # not inverse, but the LP still answers: s.t = s makes left translation constant
    from isa.semigroup import FiniteInverseSemigroup

    S = FiniteInverseSemigroup(((0, 0), (1, 1)), (0, 1), (0, 1))
    assert find_invariant_mean(S, side="left") is None
    assert find_invariant_mean(S, side="right") is not None


def test_certificate_json_round_trip():
    cert = MeanCertificate((Fraction(1, 3), Fraction(2, 3)))
    data = cert.to_json()
    assert data == {"mu": [["1", "3"], ["2", "3"]]}
    assert MeanCertificate.from_json(data).mu == cert.mu
