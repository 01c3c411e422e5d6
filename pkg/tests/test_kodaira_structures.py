import dataclasses
import random

import pytest

from dkodaira import (
    FieldMatrix,
    FieldVector,
    GroupDescriptor,
    KodairaStructure,
    LambdaMuChoice,
    Strength,
    build_omega,
    class2_pairing,
    class2_pairing_check,
    construct_nonstrong,
    construct_strong,
    enumerate_lambda_mu,
    involution_dual,
    relation_violations_class2,
    select_lambda_mu,
    structure_from_json_dict,
    structure_to_json_dict,
    verify_class2,
    verify_full,
)

from helpers import random_structure, transplant

H53 = GroupDescriptor.exponent_p(2, 3)


def test_construct_strong_requires_divisibility():
    with pytest.raises(ValueError):
        construct_strong(2, 5, "H")
    with pytest.raises(ValueError):
        construct_strong(1, 2, "H")
    with pytest.raises(ValueError):
        construct_strong(2, 3, "X")


@pytest.mark.parametrize("b,p", [(2, 3), (4, 5)])
@pytest.mark.parametrize("variant", ["H", "G"])
def test_construct_strong_verifies(b, p, variant):
    s = construct_strong(b, p, variant)
    assert s.descriptor.order == p ** (2 * b + 1)
    assert s.n == p
    report = verify_full(s)
    assert report.passed and not report.violations
    assert report.strength is Strength.STRONG
    assert report.k1_order == report.k2_order == s.descriptor.order
    assert verify_class2(s).passed


def test_construct_strong_allows_p2_when_divisible():
    s = construct_strong(3, 2, "H")
    report = verify_full(s)
    assert report.passed and report.strength is Strength.STRONG
    assert s.descriptor.order == 2**7


@pytest.mark.parametrize("b,p", [(2, 5), (2, 7), (3, 5), (3, 7)])
@pytest.mark.parametrize("variant", ["H", "G"])
def test_construct_nonstrong_verifies(b, p, variant):
    s = construct_nonstrong(b, p, variant)
    assert s.descriptor.order == p ** (4 * b + 1)
    report = verify_full(s)
    assert report.passed and not report.violations
    assert report.strength is Strength.NON_STRONG
    assert report.k1_order == report.k2_order == p ** (2 * b + 1)
    assert verify_class2(s).passed


def test_construct_nonstrong_rejects_small_primes():
    with pytest.raises(ValueError):
        construct_nonstrong(2, 3, "H")
    with pytest.raises(ValueError):
        construct_nonstrong(2, 2, "G")


def test_no_structure_on_abelian_descriptor():
    abelian = GroupDescriptor(FieldMatrix.zeros(4, 4, 3), FieldVector.zeros(4, 3))
    s = transplant(construct_strong(2, 3, "H"), abelian)
    report = verify_full(s)
    assert not report.passed
    ids = {v.relation_id for v in report.violations}
    assert "r1j.t2k.eq[j=1,k=1]" in ids
    assert not verify_class2(s).passed


def test_full_and_class2_agree_on_random_tuples():
    rng = random.Random(13)
    for _ in range(250):
        s = random_structure(H53, 2, 3, rng)
        a = verify_full(s)
        b = verify_class2(s)
        assert a.passed == b.passed
        assert bool(a.violations) == bool(b.violations)


def test_involution_examples():
    for maker, args in [
        (construct_strong, (2, 3, "H")),
        (construct_strong, (2, 3, "G")),
        (construct_nonstrong, (2, 5, "H")),
        (construct_nonstrong, (3, 5, "G")),
    ]:
        s = maker(*args)
        dual = involution_dual(s)
        assert involution_dual(dual) == s
        rs, rd = verify_full(s), verify_full(dual)
        assert rd.passed == rs.passed
        assert (rd.k1_order, rd.k2_order) == (rs.k2_order, rs.k1_order)


def test_involution_preserves_failures():
    rng = random.Random(14)
    for _ in range(25):
        s = random_structure(H53, 2, 3, rng)
        assert verify_full(involution_dual(s)).passed == verify_full(s).passed


def test_select_lambda_mu_first_choice():
    choice = select_lambda_mu(2, 5)
    assert choice.lam.entries == (2, 4)
    assert choice.mu.entries == (4, 2)
    assert select_lambda_mu(2, 3) is None
    assert select_lambda_mu(2, 2) is None


def test_enumerate_lambda_mu():
    assert enumerate_lambda_mu(2, 3) == []
    assert enumerate_lambda_mu(2, 2) == []
    choices = enumerate_lambda_mu(2, 5)
    assert choices, "expected valid weight vectors for p = 5"
    p = 5
    for c in choices:
        assert all(c.lam.entries) and all(c.mu.entries)
        assert sum(c.lam.entries) % p == 1 and sum(c.mu.entries) % p == 1
        assert all(a * m % p != 1 for a, m in zip(c.lam.entries, c.mu.entries))
    assert choices[0].lam.entries == (2, 4) and choices[0].mu.entries == (4, 2)
    with pytest.raises(ValueError):
        enumerate_lambda_mu(5, 7)


def test_lambda_mu_choice_validation():
    with pytest.raises(ValueError):
        LambdaMuChoice(FieldVector((1, 0), 5), FieldVector((2, 4), 5))
    with pytest.raises(ValueError):
        LambdaMuChoice(FieldVector((2, 4), 5), FieldVector((3, 3), 5))
    with pytest.raises(ValueError):
        LambdaMuChoice(FieldVector((3, 3), 5), FieldVector((2, 4), 5))


def test_build_omega_determinant_formula():
    p = 5
    for choice in enumerate_lambda_mu(2, p):
        omega = build_omega(choice.lam, choice.mu)
        assert omega.is_antisymmetric()
        expected = 1
        for a, m in zip(choice.lam.entries, choice.mu.entries):
            expected = expected * (1 - a * m) ** 2 % p
        assert omega.determinant().value == expected != 0
        assert omega.kernel_basis() == []
    singular = build_omega(FieldVector((1, 0), p), FieldVector((1, 2), p))
    assert singular.determinant().value == 0
    assert singular.kernel_basis()


def test_class2_pairing_of_strong_structure():
    s = construct_strong(2, 3, "H")
    pairing = class2_pairing(s)
    a = s.descriptor.matrix.entries
    for i in range(8):
        for j in range(8):
            assert pairing.entries[i][j] == a[i % 4][j % 4]
    assert class2_pairing_check(s)


def test_class2_pairing_rejects_bad_center_or_z():
    abelian = GroupDescriptor(FieldMatrix.zeros(4, 4, 3), FieldVector.zeros(4, 3))
    s = transplant(construct_strong(2, 3, "H"), abelian)
    with pytest.raises(ValueError):
        class2_pairing(s)
    assert not class2_pairing_check(s)
    s2 = dataclasses.replace(construct_strong(2, 3, "H"), z=H53.generator(0))
    with pytest.raises(ValueError):
        class2_pairing(s2)


def test_pairing_check_agrees_with_class2_relations():
    rng = random.Random(15)
    agreements = 0
    for _ in range(500):
        s = random_structure(H53, 2, 3, rng, central_z=True)
        predicate = class2_pairing_check(s)
        relations_ok = not relation_violations_class2(s)
        assert predicate == relations_ok
        agreements += 1
    assert agreements == 500


def test_pairing_check_false_for_commuting_tuple():
    e = H53.identity()
    s = KodairaStructure(H53, 2, 3, (e, e), (e, e), (e, e), (e, e), H53.central(1))
    assert not class2_pairing_check(s)


def test_mutation_z_squared():
    s = construct_strong(2, 3, "H")
    mutated = dataclasses.replace(s, z=s.z * s.z)
    report = verify_full(mutated)
    assert not report.passed
    ids = {v.relation_id for v in report.violations}
    assert {"surface.1", "surface.2"} <= ids


def test_mutation_swap_r11_t11():
    s = construct_nonstrong(2, 5, "H")
    mutated = dataclasses.replace(
        s, r1=(s.t1[0], s.r1[1]), t1=(s.r1[0], s.t1[1])
    )
    report = verify_full(mutated)
    assert not report.passed
    ids = {v.relation_id for v in report.violations}
    assert "r1j.t2k.eq[j=1,k=1]" in ids


def test_mutation_negated_pairing_entry():
    s = construct_strong(2, 3, "G")
    rows = [list(r) for r in s.descriptor.matrix.entries]
    rows[0][1] = -rows[0][1] % 3
    rows[1][0] = -rows[1][0] % 3
    desc = GroupDescriptor(FieldMatrix.from_rows(rows, 3), s.descriptor.epsilon)
    report = verify_full(transplant(s, desc))
    assert not report.passed
    ids = {v.relation_id for v in report.violations}
    assert "r1j.t2k.eq[j=1,k=1]" in ids


def test_structure_json_round_trip():
    for s in (construct_strong(2, 3, "G"), construct_nonstrong(2, 5, "H")):
        data = structure_to_json_dict(s)
        assert structure_from_json_dict(data) == s
    with pytest.raises(ValueError):
        structure_from_json_dict({"b": 2})


def test_structure_shape_validation():
    e = H53.identity()
    with pytest.raises(ValueError):
        KodairaStructure(H53, 1, 3, (e,), (e,), (e,), (e,), e)
    with pytest.raises(ValueError):
        KodairaStructure(H53, 2, 1, (e, e), (e, e), (e, e), (e, e), e)
    with pytest.raises(ValueError):
        KodairaStructure(H53, 2, 3, (e,), (e, e), (e, e), (e, e), e)


def test_verification_report_counts_every_violation():
    abelian = GroupDescriptor(FieldMatrix.zeros(4, 4, 3), FieldVector.zeros(4, 3))
    s = transplant(construct_strong(2, 3, "H"), abelian)
    report = verify_full(s)
    eq_ids = {v.relation_id for v in report.violations if ".eq[" in v.relation_id}
    # Every Kronecker-diagonal cross relation fails in an abelian group.
    assert {
        "r1j.t2k.eq[j=1,k=1]",
        "r1j.t2k.eq[j=2,k=2]",
        "t1j.r2k.eq[j=1,k=1]",
        "t1j.r2k.eq[j=2,k=2]",
    } <= eq_ids
