import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from tarski import CuntzMonoid, EPPoint, PrefixMap
from tarski import cuntz as cz
from tarski.cuntz import (NoIso, NotMoved, PointOutsideDomain, ZeroIdempotent,
                          IdentityIdempotent, parse_clopen, parse_point,
                          parse_prefix_map)

C2 = CuntzMonoid(2)
C3 = CuntzMonoid(3)


def test_normalization():
    assert C2.element([("1", "21"), ("2", "22")]) == C2.element([("", "2")])
    assert C2.element([("11", "11"), ("12", "12")]) == C2.clopen(["1"])
    # redundant restrictions are absorbed
    assert C2.element([("", ""), ("1", "1")]) == C2.one
    # nested merges reach a fixpoint
    assert C2.element([("11", "11"), ("12", "12"), ("2", "2")]) == C2.one
    with pytest.raises(ValueError):
        PrefixMap.make(2, [("1", "1"), ("1", "2")])
    with pytest.raises(ValueError):
        PrefixMap.make(2, [("1", "2"), ("11", "1")])
    with pytest.raises(ValueError):
        PrefixMap.make(2, [("3", "1")])


def test_multiplication():
    assert C2.multiply(C2.element([("2", "1")]), C2.element([("1", "2")])) \
        == C2.clopen(["1"])
    a = C2.element([("1", "2")])
    assert C2.multiply(a, a) == C2.zero
    # composition threads tails through matching prefixes
    assert C2.multiply(C2.element([("1", "2")]), C2.element([("2", "11")])) \
        == C2.element([("2", "21")])


def test_complement():
    assert C2.complement(C2.clopen(["1"])) == C2.clopen(["2"])
    assert C2.complement(C2.zero) == C2.one
    assert C2.complement(C2.one) == C2.zero
    assert C2.complement(C2.clopen(["11", "2"])) == C2.clopen(["12"])
    assert C3.complement(C3.clopen(["1"])) == C3.clopen(["2", "3"])
    with pytest.raises(cz.NotClopen):
        C2.complement(C2.element([("1", "2")]))


def test_atomless():
    rng = random.Random(3)
    for _ in range(50):
        e = cz.random_clopen(rng, C2)
        w = e.domain_words()[0]
        child = C2.cylinder(w + "1")
        assert child != C2.zero and child != e and C2.leq(child, e)


def test_eppoint_canonical_form():
    assert EPPoint.make("1", "1") == EPPoint.make("", "1")
    assert EPPoint.make("1", "21") == EPPoint.make("", "12")
    assert EPPoint.make("", "1212") == EPPoint.make("", "12")
    assert str(EPPoint.make("122", "12")) == "12|21"
    assert EPPoint.make("", "12").expand(5) == "12121"


def test_apply_point():
    s = C2.element([("1", "2")])
    assert C2.apply_point(s, EPPoint.make("1", "1")) == EPPoint.make("2", "1")
    assert C2.apply_point(C2.element([("1", "11")]), EPPoint.make("", "1")) \
        == EPPoint.make("", "1")
    with pytest.raises(PointOutsideDomain):
        C2.apply_point(s, EPPoint.make("", "2"))
    # image computed from inside the periodic part
    t = C2.element([("121", "2")])
    assert C2.apply_point(t, EPPoint.make("", "12")) == EPPoint.make("2", "21")


def test_parsing():
    assert parse_prefix_map(2, "{11->2, 2->11}") \
        == C2.element([("11", "2"), ("2", "11")])
    assert parse_prefix_map(2, "{e->2}") == C2.element([("", "2")])
    assert parse_prefix_map(2, "{1->2,2->1}") == parse_prefix_map(2, "{2->1,1->2}")
    assert parse_prefix_map(2, "{}") == C2.zero
    assert parse_clopen(2, "[11,2]") == C2.clopen(["11", "2"])
    assert parse_clopen(2, "[e]") == C2.one
    assert parse_point(2, "1|2") == EPPoint.make("1", "2")
    with pytest.raises(ValueError):
        parse_prefix_map(2, "{1->1, 1->2}")
    with pytest.raises(ValueError):
        parse_prefix_map(2, "{1->3}")
    with pytest.raises(ValueError):
        parse_prefix_map(2, "1->2")


@st.composite
def prefix_maps(draw):
    rng = random.Random(draw(st.integers(0, 10 ** 9)))
    return cz.random_prefix_map(rng, C2)


@settings(max_examples=60, deadline=None)
@given(prefix_maps())
def test_serialization_roundtrip(s):
    assert parse_prefix_map(2, str(s)) == s


@settings(max_examples=60, deadline=None)
@given(prefix_maps(), prefix_maps())
def test_meet_is_greatest_lower_bound_on_restrictions(s, t):
    m = C2.raw_meet(s, t)
    assert C2.leq(m, s) and C2.leq(m, t)
    # every common restriction by a cylinder lies below the meet
    for w in ("", "1", "2", "11", "12", "21", "22"):
        x = C2.multiply(s, C2.cylinder(w))
        if x != C2.zero and C2.leq(x, t):
            assert C2.leq(x, m)


def test_phi_against_bounded_refinement_oracle():
    rng = random.Random(9)
    for _ in range(100):
        s = cz.random_prefix_map(rng, C2)
        depth = max([len(d) for d, _ in s.pairs] + [0]) + 2
        fixed = []
        for m in range(depth + 1):
            for word in itertools.product("12", repeat=m):
                w = "".join(word)
                cyl = C2.cylinder(w)
                if C2.leq(cyl, s) and not any(w.startswith(f) for f in fixed):
                    fixed.append(w)
        assert C2.phi(s) == C2.clopen(fixed)


def test_infinitesimal_at():
    e = C2.clopen(["1"])
    p = EPPoint.make("1", "1")
    a = C2.infinitesimal_at(e, p)
    assert C2.is_infinitesimal(a)
    assert C2.leq(C2.join(C2.domain(a), C2.range(a)), e)
    assert C2.contains_point(C2.domain(a), p)
    a = C2.infinitesimal_at(C2.one, EPPoint.make("", "2"))
    assert C2.is_infinitesimal(a) and C2.contains_point(C2.domain(a),
                                                        EPPoint.make("", "2"))
    a = C2.infinitesimal_at(C2.clopen(["1", "21"]), EPPoint.make("21", "1"))
    assert C2.contains_point(C2.domain(a), EPPoint.make("21", "1"))
    with pytest.raises(PointOutsideDomain):
        C2.infinitesimal_at(e, EPPoint.make("", "2"))


def test_f1_f2_f3_on_spec_configurations():
    rng = random.Random(0)
    e = C2.clopen(["1"])
    p = EPPoint.make("1", "1")
    t = C2.f1_witness(e, p)
    assert t == C2.element([("11", "12"), ("12", "11"), ("2", "2")])
    assert C2.sigma(t) == C2.clopen(["1"])
    swap = C2.element([("1", "2"), ("2", "1")])
    g = C2.f2_witness(swap, C2.clopen(["1"]))
    assert all(ok for _, ok in cz.validate_f2(C2, swap, e, g, rng))
    assert C2.f3_witness(C2.one) == C2.element(
        [("11", "2"), ("12", "11"), ("2", "12")])
    assert C2.f3_witness(e) == C2.element(
        [("111", "12"), ("112", "111"), ("12", "112"), ("2", "2")])
    with pytest.raises(ZeroIdempotent):
        C2.f3_witness(C2.zero)
    with pytest.raises(cz.NotInvolution):
        C2.f2_witness(C2.one, e)
    with pytest.raises(cz.NotBelowSupport):
        C2.f2_witness(swap, C2.zero)


def test_f2_fixes_fixed_part_of_t():
    # the witness acts trivially on points of the fixed region of t
    rng = random.Random(4)
    for _ in range(50):
        e0 = cz.random_clopen(rng, C2)
        t = C2.f1_witness(e0, cz.random_point_in(rng, C2, e0))
        sig = C2.sigma(t)
        g = C2.f2_witness(t, sig)
        fixed = C2.phi(t)
        if fixed == C2.zero:
            continue
        q = cz.random_point_in(rng, C2, fixed)
        assert C2.apply_point(g, q) == q


def test_find_moved_point_and_separating_idempotent():
    swap = C2.element([("1", "2"), ("2", "1")])
    q = C2.find_moved_point(swap, C2.clopen(["1"]))
    assert C2.apply_point(swap, q) != q
    g = C2.element([("1", "11"), ("21", "12"), ("22", "2")])
    p = EPPoint.make("21", "1")
    e = C2.separating_idempotent(g, p)
    img = C2.multiply(C2.multiply(g, e), C2.inverse(g))
    assert C2.raw_meet(e, img) == C2.zero and C2.contains_point(e, p)
    with pytest.raises(NotMoved):
        C2.separating_idempotent(g, EPPoint.make("", "2"))
    with pytest.raises(cz.EmptySupportRegion):
        C2.find_moved_point(swap, C2.zero)


def test_transfer_and_conjugator():
    assert C2.transfer_witness(C2.one, C2.clopen(["12"])) \
        == C2.element([("", "12")])
    x = C2.transfer_witness(C2.one, C2.clopen(["11"]))
    assert C2.domain(x) == C2.one and C2.leq(C2.range(x), C2.clopen(["11"]))
    e, f = C2.clopen(["1"]), C2.clopen(["21"])
    g = C2.conjugator_unit(e, f)
    assert C2.is_unit(g)
    assert C2.leq(C2.multiply(C2.multiply(g, e), C2.inverse(g)), f)
    # the nested branch: f below e
    g = C2.conjugator_unit(C2.clopen(["1"]), C2.clopen(["11"]))
    assert C2.leq(C2.multiply(C2.multiply(g, C2.clopen(["1"])),
                              C2.inverse(g)), C2.clopen(["11"]))
    with pytest.raises(IdentityIdempotent):
        C2.conjugator_unit(C2.one, f)
    with pytest.raises(ZeroIdempotent):
        C2.conjugator_unit(e, C2.zero)


def test_properly_infinite_witness():
    x, y = C2.properly_infinite_witness(C2.clopen(["1"]))
    assert (x, y) == (C2.element([("1", "11")]), C2.element([("1", "12")]))
    x, y = C2.properly_infinite_witness(C2.one)
    assert (x, y) == (C2.element([("", "1")]), C2.element([("", "2")]))
    e = C2.clopen(["11", "2"])
    x, y = C2.properly_infinite_witness(e)
    assert all(ok for _, ok in cz.validate_properly_infinite(C2, e, x, y))


def test_clopen_iso():
    with pytest.raises(NoIso) as exc:
        C3.clopen_iso(C3.clopen(["1"]), C3.clopen(["1", "2"]))
    assert (exc.value.count_e, exc.value.count_f) == (1, 2)
    x = C3.clopen_iso(C3.clopen(["1"]), C3.one)
    assert C3.domain(x) == C3.clopen(["1"]) and C3.range(x) == C3.one
    # C_2 never fails
    rng = random.Random(7)
    for _ in range(30):
        e, f = cz.random_clopen(rng, C2), cz.random_clopen(rng, C2)
        x = C2.clopen_iso(e, f)
        assert C2.domain(x) == e and C2.range(x) == f


def test_piecewise_factorize():
    s = C2.element([("1", "11")])
    parts = C2.piecewise_factorize(s)
    assert all(ok for _, ok in cz.validate_factorize(C2, s, parts))
    assert C2.piecewise_factorize(C2.one) == [(C2.one, C2.one)]
    s = C2.element([("", "1")])
    assert all(ok for _, ok in cz.validate_factorize(
        C2, s, C2.piecewise_factorize(s)))


def test_unit_in_ultrafilter():
    s = C2.element([("1", "11")])
    g = C2.unit_in_ultrafilter(s, EPPoint.make("1", "2"))
    assert C2.is_unit(g)
    assert C2.raw_meet(g, s) != C2.zero
    u = C2.element([("1", "2"), ("2", "1")])
    assert C2.unit_in_ultrafilter(u, EPPoint.make("", "1")) == u
    g = C2.unit_in_ultrafilter(C2.element([("1", "2")]), EPPoint.make("1", "1"))
    assert g == C2.element([("1", "2"), ("2", "1")])


def test_principality_decompose():
    s = C2.element([("11", "11"), ("12", "2"), ("2", "12")])
    kind, fixed, parts = C2.principality_decompose(s)
    assert kind == "decomposition"
    assert fixed == C2.clopen(["11"])
    assert {str(x) for x in parts} == {"{12->2}", "{2->12}"}
    kind, d, r, p = C2.principality_decompose(C2.element([("1", "11")]))
    assert (kind, d, r) == ("witness", "1", "11")
    assert p == EPPoint.make("", "1")
    assert C2.apply_point(C2.element([("1", "11")]), p) == p
    e = C2.clopen(["1"])
    assert C2.principality_decompose(e) == ("decomposition", e, [])


def test_support_cover():
    ts = C2.support_cover(C2.clopen(["1"]))
    assert all(ok for _, ok in cz.validate_cover(C2, C2.clopen(["1"]), ts))
    ts = C3.support_cover(C3.clopen(["1"]))
    assert len(ts) == 3
    assert all(ok for _, ok in cz.validate_cover(C3, C3.clopen(["1"]), ts))
    assert C2.support_cover(C2.one) == [C2.element([("1", "2"), ("2", "1")])]


def test_hengist_witness():
    rng = random.Random(12)
    for _ in range(200):
        s = cz.random_prefix_map(rng, C2, nonzero=True)
        if C2.is_idempotent(s):
            continue
        p = cz.random_point_in(rng, C2, C2.domain(s))
        xs = C2.hengist_witness(s, p)
        assert all(ok for _, ok in cz.validate_hengist(C2, s, p, xs))


def test_cylinder_commutation_forces_idempotent():
    rng = random.Random(21)
    for _ in range(150):
        s = cz.random_prefix_map(rng, C2)
        depth = max([len(d) for d, _ in s.pairs] + [0]) + 2
        if C2.commutes_with_cylinders(s, depth):
            assert C2.is_idempotent(s)


def test_units_of_clopens_detect_order():
    # supports inside e stay inside any larger f; when e is not below f an
    # order-3 unit supported in the difference separates them
    rng = random.Random(30)
    for _ in range(50):
        e = cz.random_clopen(rng, C2)
        f = cz.random_clopen(rng, C2)
        g = cz.random_unit(rng, C2)
        ge = C2.multiply(C2.sigma(g), e)
        if C2.leq(e, f):
            if C2.leq(C2.sigma(g), e):
                assert C2.leq(C2.sigma(g), f)
        else:
            diff = C2.multiply(e, C2.complement(f))
            h = C2.f3_witness(diff)
            assert C2.leq(C2.sigma(h), e)
            assert not C2.leq(C2.sigma(h), f)
        assert C2.leq(ge, e)
