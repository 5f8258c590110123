import random

import pytest

from tarski import (CuntzMonoid, LocalBisectionMonoid, PartialBijection,
                    ProductMonoid, SymmetricInverseMonoid)
from tarski import analysis, duality
from tarski import cuntz as cz
from tarski.analysis import NoPencil, NotClassifiable, OutOfClass
from tarski.finite import group_groupoid, pair_groupoid

I1 = SymmetricInverseMonoid(1)
I2 = SymmetricInverseMonoid(2)
I3 = SymmetricInverseMonoid(3)
C2 = CuntzMonoid(2)


def test_find_pencil():
    e = I2.one
    f = PartialBijection.make(2, [(1, 1)])
    pencil = analysis.find_pencil(I2, e, f)
    assert analysis.check_pencil(I2, pencil)
    P = ProductMonoid(I2, I2)
    with pytest.raises(NoPencil):
        analysis.find_pencil(P, P.one, (f, I2.zero))
    pencil = analysis.find_pencil(C2, C2.one, C2.clopen(["12"]))
    assert analysis.check_pencil(C2, pencil)


def test_zero_simplifying():
    assert analysis.is_zero_simplifying(I2).value
    assert analysis.is_zero_simplifying(I3).value
    flag = analysis.is_zero_simplifying(ProductMonoid(I2, I2))
    assert not flag.value and "counterexample" in flag.detail
    assert analysis.is_zero_simplifying(C2, random.Random(1), 30).value


def test_zero_simplifying_agrees_with_ideal_enumeration():
    for S in (I1, I2, I3, ProductMonoid(I2, I2),
              LocalBisectionMonoid(group_groupoid(2))):
        proper_ideal = None
        for s in S.elements:
            if s == S.zero:
                continue
            ideal = analysis.vee_ideal(S, s)
            if len(ideal) not in (1, len(S.elements)):
                proper_ideal = ideal
                break
        assert analysis.is_zero_simplifying(S).value == (proper_ideal is None)


def test_zero_simplifying_agrees_with_orbit_count():
    for S in (I1, I2, I3, ProductMonoid(I2, I2),
              LocalBisectionMonoid(pair_groupoid(3)),
              LocalBisectionMonoid(group_groupoid(2))):
        assert analysis.is_zero_simplifying(S).value \
            == (duality.orbit_count(duality.atom_groupoid(S).groupoid) == 1)


def test_zero_simple():
    assert not analysis.is_zero_simple(I2).value
    assert analysis.is_zero_simple(I1).value
    assert analysis.is_zero_simple(C2, random.Random(2), 30).value


def test_zero_disjunctive_and_congruence_free():
    for S in (I2, I3, ProductMonoid(I2, I2)):
        assert analysis.is_zero_disjunctive(S).value
    r = analysis.analyze(I3, seed=1, samples=20)
    assert not r.flags["is_congruence_free"].value
    r = analysis.analyze(C2, seed=1, samples=20)
    assert r.flags["is_congruence_free"].value
    assert r.flags["is_fundamental"].mode == "sampled"


def test_purely_infinite():
    for n in (2, 3, 4):
        assert not analysis.is_purely_infinite(SymmetricInverseMonoid(n)).value
    assert analysis.is_purely_infinite(C2, random.Random(3), 30).value
    # atoms are the finite obstruction
    assert analysis.properly_infinite_pair(I2, I2.atoms()[0]) is None


def test_classify():
    assert analysis.classify(I2).n == 2
    assert analysis.classify(I3).n == 3
    for k in (1, 2, 3):
        assert analysis.classify(
            LocalBisectionMonoid(pair_groupoid(k))).n == k
    with pytest.raises(NotClassifiable) as exc:
        analysis.classify(ProductMonoid(I2, I2))
    assert exc.value.reason == "not 0-simplifying"
    with pytest.raises(NotClassifiable) as exc:
        analysis.classify(LocalBisectionMonoid(group_groupoid(2)))
    assert exc.value.reason == "not fundamental"


def test_classification_idempotent_count():
    # classifiable instances have 2^m idempotents with all m atoms in
    # one D-class (some element maps any E-atom onto any other)
    for S in (I2, I3, LocalBisectionMonoid(pair_groupoid(3))):
        c = analysis.classify(S)
        atoms = duality.eatoms(S)
        assert len(S.idempotents()) == 2 ** len(atoms)
        for e in atoms:
            for f in atoms:
                assert any(S.domain(x) == e and S.range(x) == f
                           for x in S.elements)


def test_group_of_units():
    assert analysis.group_of_units(I3)[0] == 6
    assert analysis.group_of_units(I1)[0] == 1
    assert analysis.group_of_units(
        LocalBisectionMonoid(group_groupoid(2)))[0] == 2
    order, units, gens = analysis.group_of_units(I3)
    # generators regenerate the whole group
    generated = {I3.one}
    frontier = {I3.one}
    while frontier:
        frontier = {I3.multiply(a, g) for a in frontier for g in gens} \
            - generated
        generated |= frontier
    assert generated == set(units)


def test_spatial_realization():
    B3 = LocalBisectionMonoid(pair_groupoid(3))
    assert analysis.finite_spatial_realization_check(I3, B3)
    assert not analysis.finite_spatial_realization_check(I2, I3)
    with pytest.raises(OutOfClass):
        analysis.finite_spatial_realization_check(ProductMonoid(I2, I2), I2)


def test_principality_decompose_finite():
    for s in I3.elements:
        fixed, parts = analysis.principality_decompose_finite(I3, s)
        assert I3.is_idempotent(fixed)
        assert all(I3.is_infinitesimal(x) for x in parts)
        assert I3.join_all([fixed] + parts) == s


def test_analyze_report_shape():
    r = analysis.analyze(I2, seed=7, samples=10)
    data = r.to_json()
    assert data["classification"] == {"n": 2}
    assert data["units"]["order"] == 2
    assert set(data["flags"]) == {
        "is_boolean_inverse_meet_monoid", "is_fundamental", "is_zero_simple",
        "is_zero_simplifying", "is_zero_disjunctive", "is_congruence_free",
        "is_purely_infinite"}
    assert all(f["mode"] == "exact" for f in data["flags"].values())
