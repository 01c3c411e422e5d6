import random

import numpy as np
import pytest

from dkodaira import (
    DescriptorMismatchError,
    ExtraSpecialClass,
    FieldMatrix,
    FieldVector,
    GroupDescriptor,
    UnsupportedClassificationError,
    build_omega,
    center_rank,
    classify_extra_special,
    heis_oracle_check,
    select_lambda_mu,
    span_closure,
    standard_commutator_matrix,
    subgroup_closure,
)

from helpers import (
    random_element,
    random_nonsingular_antisymmetric,
    random_singular_antisymmetric,
)

H53 = GroupDescriptor.exponent_p(2, 3)
G55 = GroupDescriptor.exponent_p_squared(2, 5)


def omega_descriptor():
    choice = select_lambda_mu(2, 5)
    return GroupDescriptor(build_omega(choice.lam, choice.mu), FieldVector.zeros(8, 5))


def test_multiply_collection_example():
    g = H53.generator(1) * H53.generator(0)
    assert g.t == (1, 1, 0, 0) and g.s == 1


def test_identity_neutral_on_random_elements():
    rng = random.Random(1)
    e = H53.identity()
    for _ in range(100):
        g = random_element(H53, rng)
        assert e * g == g and g * e == g


def test_power_relation_in_exponent_p_squared_group():
    x = G55.generator(3)
    assert (x**4 * x) == G55.central(1)
    assert (x**5) == G55.central(1)


def test_inverse_examples():
    assert H53.identity().inverse() == H53.identity()
    for j in range(4):
        g = H53.generator(j)
        assert g.inverse().t == tuple(2 if i == j else 0 for i in range(4))
        assert g.inverse().s == 0
        assert (g * g.inverse()).is_identity and (g.inverse() * g).is_identity
    x = G55.generator(3)
    assert x.inverse().t == (0, 0, 0, 4) and x.inverse().s == 4
    assert (x * x.inverse()).is_identity


def test_commutator_examples():
    for d in (H53, G55, omega_descriptor()):
        rows = d.matrix.entries
        for j in range(d.rank):
            for k in range(d.rank):
                c = d.generator(j).commutator(d.generator(k))
                assert not any(c.t)
                assert c.s == rows[j][k]
                ci = d.generator(j).inverse().commutator(d.generator(k))
                assert ci.s == (-rows[j][k]) % d.p
    rng = random.Random(2)
    for _ in range(50):
        g = random_element(H53, rng)
        assert g.commutator(g).is_identity


def test_commutators_always_central():
    rng = random.Random(3)
    for d in (H53, G55, omega_descriptor()):
        for _ in range(300):
            c = random_element(d, rng).commutator(random_element(d, rng))
            assert not any(c.t)


def test_element_order():
    assert H53.identity().order() == 1
    assert H53.central(1).order() == 3
    assert G55.generator(3).order() == 25
    assert G55.generator(0).order() == 5
    rng = random.Random(4)
    for d in (H53, G55):
        for _ in range(200):
            k = random_element(d, rng).order()
            assert (d.p * d.p) % k == 0
    for g in H53.iter_elements():
        if not g.is_identity:
            assert g.order() == 3


def test_group_axioms_random_triples():
    rng = random.Random(5)
    for d in (H53, G55, omega_descriptor()):
        e = d.identity()
        for _ in range(10_000):
            g = random_element(d, rng)
            h = random_element(d, rng)
            k = random_element(d, rng)
            assert (g * h) * k == g * (h * k)
        g = random_element(d, rng)
        assert g * e == g and e * g == g
        assert (g * g.inverse()) == e and (g.inverse() * g) == e


def test_group_axioms_exhaustive_h53():
    elems = list(H53.iter_elements())
    assert len(elems) == 243
    index = {g: i for i, g in enumerate(elems)}
    table = np.empty((243, 243), dtype=np.int32)
    for i, g in enumerate(elems):
        for j, h in enumerate(elems):
            table[i, j] = index[g * h]
    # (g h) k == g (h k) for every triple, via the multiplication table
    assert np.array_equal(table[table], table[:, table])
    e = index[H53.identity()]
    assert np.array_equal(table[e, :], np.arange(243))
    assert np.array_equal(table[:, e], np.arange(243))
    for i, g in enumerate(elems):
        assert table[i, index[g.inverse()]] == e


def test_descriptor_mismatch_raises():
    other = GroupDescriptor.exponent_p(2, 5)
    with pytest.raises(DescriptorMismatchError):
        H53.generator(0) * other.generator(0)


def test_descriptor_validation():
    with pytest.raises(ValueError):
        GroupDescriptor(FieldMatrix.identity(4, 5), FieldVector.zeros(4, 5))
    with pytest.raises(ValueError):
        GroupDescriptor(standard_commutator_matrix(2, 5), FieldVector.zeros(3, 5))
    with pytest.raises(ValueError):
        GroupDescriptor(standard_commutator_matrix(2, 5), FieldVector.zeros(4, 7))


def test_center_rank_examples():
    assert center_rank(H53) == (3, True)
    abelian = GroupDescriptor(FieldMatrix.zeros(4, 4, 3), FieldVector.zeros(4, 3))
    assert center_rank(abelian) == (3**5, False)
    assert center_rank(omega_descriptor()) == (5, True)


def test_center_rank_vs_determinant():
    rng = random.Random(6)
    for p in (3, 5):
        for _ in range(50):
            m = random_nonsingular_antisymmetric(4, p, rng)
            d = GroupDescriptor(m, FieldVector.zeros(4, p))
            assert center_rank(d) == (p, True)
        for _ in range(50):
            m = random_singular_antisymmetric(4, p, rng)
            d = GroupDescriptor(m, FieldVector.zeros(4, p))
            order, cyclic = center_rank(d)
            assert order > p and not cyclic


def test_classification():
    assert classify_extra_special(H53) is ExtraSpecialClass.EXPONENT_P
    assert classify_extra_special(G55) is ExtraSpecialClass.EXPONENT_P_SQUARED
    abelian = GroupDescriptor(FieldMatrix.zeros(4, 4, 3), FieldVector.zeros(4, 3))
    assert classify_extra_special(abelian) is ExtraSpecialClass.NOT_EXTRA_SPECIAL
    d2 = GroupDescriptor.exponent_p(2, 2)
    with pytest.raises(UnsupportedClassificationError):
        classify_extra_special(d2)


def test_subgroup_closure_center():
    result = subgroup_closure([H53.central(1)])
    assert result.order == 3
    assert result.elements == frozenset(H53.central(c) for c in range(3))
    assert result.span_order == 3 and result.span_dim == 0 and result.contains_z


def test_subgroup_closure_full_group():
    gens = [H53.generator(j) for j in range(4)]
    result = subgroup_closure(gens)
    assert result.order == 243 == result.span_order


def test_subgroup_closure_cap_overflow():
    gens = [H53.generator(j) for j in range(4)]
    result = subgroup_closure(gens, cap=100)
    assert result.overflowed and result.order is None and result.elements is None
    assert result.partial_count == 100
    assert result.span_order == 243


def test_span_shortcut_matches_bfs():
    rng = random.Random(8)
    for d in (H53, G55):
        for _ in range(40):
            gens = [random_element(d, rng) for _ in range(rng.randrange(1, 4))]
            bfs = subgroup_closure(gens)
            assert bfs.order == bfs.span_order
            assert span_closure(gens).order == bfs.order


def test_span_closure_detects_power_wrap():
    # x_3 in the exponent-p^2 group: its span has dimension 1 but x_3^5 = z.
    res = span_closure([G55.generator(3)])
    assert res.dim == 1 and res.contains_z and res.order == 25
    assert subgroup_closure([G55.generator(3)]).order == 25


def test_heis_oracle():
    assert heis_oracle_check(2, 3)
    assert heis_oracle_check(2, 5, samples=4000, seed=11)
    assert heis_oracle_check(3, 3, samples=4000, seed=12)


def test_heis_oracle_detects_corruption():
    rows = [list(r) for r in standard_commutator_matrix(2, 3).entries]
    rows[0][1] = (-rows[0][1]) % 3
    rows[1][0] = (-rows[1][0]) % 3
    bad = GroupDescriptor(FieldMatrix.from_rows(rows, 3), FieldVector.zeros(4, 3))
    assert not heis_oracle_check(2, 3, descriptor=bad)


def test_descriptor_and_element_json_round_trip():
    data = G55.to_json_dict()
    assert data["p"] == 5 and data["rank"] == 4
    assert GroupDescriptor.from_json_dict(data) == G55
    g = random_element(G55, random.Random(9))
    from dkodaira import GroupElement

    assert GroupElement.from_json_dict(G55, g.to_json_dict()) == g
    with pytest.raises(ValueError):
        GroupDescriptor.from_json_dict({"p": 5, "rank": 2, "A": [[0]], "epsilon": [0]})
