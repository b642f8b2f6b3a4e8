import random

import pytest

from ifk import (
    Classification,
    FlatTheory,
    IfkError,
    Infomorphism,
    SequentTheory,
    borrowing_holds,
    bottom_theory,
    close,
    direct_flow,
    flat_closure,
    flat_direct_flow,
    flat_entails,
    flat_inverse_flow,
    identity_infomorphism,
    inverse_flow,
    theory_leq,
    top_theory,
)

import support
from conftest import seq


def theory(types, *axioms):
    return SequentTheory(frozenset(types.split()), frozenset(axioms))


# ---------------------------------------------------------------------------
# direct flow

def test_direct_flow_identity():
    t = theory("a b", seq("a", "b"))
    assert direct_flow({"a": "a", "b": "b"}, t, t.types) == t


def test_direct_flow_collapses_to_tautology():
    t = theory("h p", seq("h", "p"))
    flowed = direct_flow({"h": "u", "p": "u"}, t, {"u"})
    assert flowed.axioms == {seq("u", "u")}


def test_direct_flow_of_empty_theory():
    flowed = direct_flow({"a": "u"}, theory("a"), {"u", "v"})
    assert flowed.axioms == frozenset()
    assert flowed.types == {"u", "v"}


def test_direct_flow_requires_total_map():
    with pytest.raises(IfkError, match="not total"):
        direct_flow({}, theory("a", seq("a", "a")), {"u"})


def test_direct_flow_distributes_over_union():
    rng = random.Random(31)
    for _ in range(30):
        sigma = ["a", "b", "c"]
        t1 = support.rand_theory(rng, sigma, 2)
        t2 = support.rand_theory(rng, sigma, 2)
        f = support.rand_type_map(rng, sigma, ["u", "v"])
        both = SequentTheory(t1.types, t1.axioms | t2.axioms)
        assert (
            direct_flow(f, both, {"u", "v"}).axioms
            == direct_flow(f, t1, {"u", "v"}).axioms | direct_flow(f, t2, {"u", "v"}).axioms
        )


# ---------------------------------------------------------------------------
# inverse flow

def test_inverse_flow_of_bottom_is_inconsistent():
    inv = inverse_flow({"x": "u"}, bottom_theory({"u"}), {"x"})
    assert inv.entails(seq("", ""))
    materialized = inv.materialize()
    assert len(materialized.axioms) == 4  # every sequent over {x}


def test_inverse_flow_pulls_back_axioms():
    target = theory("h p", seq("h", "p"))
    inv = inverse_flow({"x": "h", "y": "p"}, target, {"x", "y"})
    assert inv.entails(seq("x", "y"))
    assert not inv.entails(seq("y", "x"))


def test_inverse_flow_checks_language():
    inv = inverse_flow({"x": "h"}, theory("h"), {"x"})
    with pytest.raises(IfkError, match="outside the language"):
        inv.entails(seq("z", ""))


def test_materialized_inverse_flow_matches_queries():
    rng = random.Random(37)
    for _ in range(30):
        target = support.rand_theory(rng, ["u", "v"], 2)
        f = support.rand_type_map(rng, ["x", "y", "z"], ["u", "v"])
        inv = inverse_flow(f, target, {"x", "y", "z"})
        materialized = inv.materialize()
        for a in materialized.axioms:
            assert inv.entails(a)
        # materialized pullbacks are closed
        assert close(materialized) == materialized


def test_inverse_flow_of_intersection_is_intersection_of_inverse_flows():
    rng = random.Random(41)
    for _ in range(25):
        sigma_t = frozenset({"u", "v"})
        c1 = close(support.rand_theory(rng, sigma_t, 2))
        c2 = close(support.rand_theory(rng, sigma_t, 2))
        meet_theory = SequentTheory(sigma_t, c1.axioms & c2.axioms)
        f = support.rand_type_map(rng, ["x", "y"], sigma_t)
        lhs = inverse_flow(f, meet_theory, {"x", "y"}).materialize()
        rhs1 = inverse_flow(f, c1, {"x", "y"}).materialize()
        rhs2 = inverse_flow(f, c2, {"x", "y"}).materialize()
        assert lhs.axioms == rhs1.axioms & rhs2.axioms


# ---------------------------------------------------------------------------
# the flow adjunction (inverse flow on the left, direct flow on the right)

def rand_flow_triple(rng, max_types=4):
    src = [f"x{k}" for k in range(rng.randint(0, max_types))]
    dst = [f"u{k}" for k in range(rng.randint(1, max_types))]
    f = support.rand_type_map(rng, src, dst)
    t = support.rand_theory(rng, src, 3)
    t_prime = support.rand_theory(rng, dst, 3)
    return f, t, t_prime


def test_flow_adjunction_randomized():
    rng = random.Random(43)
    for _ in range(200):
        f, t, t_prime = rand_flow_triple(rng)
        lhs = theory_leq(inverse_flow(f, t_prime, t.types).materialize(), t)
        rhs = theory_leq(t_prime, direct_flow(f, t, t_prime.types))
        assert lhs == rhs


def test_flow_adjunction_orientation_matters():
    # with a type outside the image of the map, pairing the comparisons the
    # other way around is not an equivalence
    f = {"x": "u"}
    t = top_theory({"x"})
    t_prime = theory("u v", seq("", "v"))
    assert theory_leq(inverse_flow(f, t_prime, t.types).materialize(), t) == theory_leq(
        t_prime, direct_flow(f, t, t_prime.types)
    )
    flipped_lhs = theory_leq(direct_flow(f, t, t_prime.types), t_prime)
    flipped_rhs = theory_leq(t, inverse_flow(f, t_prime, t.types).materialize())
    assert flipped_lhs != flipped_rhs


def test_round_trip_keeps_original_content():
    # pulling the pushed theory back yields something at least as strong
    rng = random.Random(47)
    for _ in range(100):
        f, t, t_prime = rand_flow_triple(rng)
        back = inverse_flow(f, direct_flow(f, t, t_prime.types), t.types)
        assert theory_leq(back.materialize(), t)


def test_push_of_pullback_stays_below():
    rng = random.Random(53)
    for _ in range(100):
        f, t, t_prime = rand_flow_triple(rng)
        pulled = inverse_flow(f, t_prime, t.types).materialize()
        assert theory_leq(t_prime, direct_flow(f, pulled, t_prime.types))


# ---------------------------------------------------------------------------
# flat flows and borrowing

def test_flat_direct_flow_identity(clf_a):
    ft = FlatTheory(clf_a.types, {"human"})
    assert flat_direct_flow({t: t for t in clf_a.types}, ft, clf_a.types) == ft


def test_flat_direct_flow_of_empty(clf_a):
    ft = FlatTheory(clf_a.types, frozenset())
    assert flat_direct_flow({t: t for t in clf_a.types}, ft, clf_a.types).members == frozenset()


def test_flat_inverse_flow_through_clf_a(clf_a):
    f = {"x": "human", "x2": "philosopher"}
    ft_target = FlatTheory(clf_a.types, {"human"})
    pulled = flat_inverse_flow(clf_a, f, ft_target, {"x", "x2"})
    assert pulled.members == {"x", "x2"}


def test_borrowing_identity(clf_a):
    ident = identity_infomorphism(clf_a)
    for t in clf_a.types:
        assert borrowing_holds(ident, FlatTheory(clf_a.types, {t}), t)


def test_borrowing_for_surjective_instance_maps():
    rng = random.Random(59)
    for _ in range(60):
        f = support.rand_infomorphism(rng, max_size=2, surjective_instances=True)
        subsets = [frozenset()]
        for t in sorted(f.source.types):
            subsets += [s | {t} for s in subsets]
        for members in subsets:
            for t in f.source.types:
                assert borrowing_holds(f, FlatTheory(f.source.types, members), t)


def test_borrowing_counterexample_exists():
    # target gains an instance whose pullback breaks the source entailment
    a = Classification("A", ["a", "a2"], ["u", "t"], [("a", "u")])
    b = Classification("B", ["b"], ["fu", "ft"], [])
    f = Infomorphism("f", a, b, {"u": "fu", "t": "ft"}, {"b": "a2"})
    from ifk import check_infomorphism

    assert check_infomorphism(f).ok
    assert set(f.instance_map.values()) != set(a.instances)
    assert not borrowing_holds(f, FlatTheory(a.types, {"u"}), "t")


def test_entailment_preservation_along_infomorphisms():
    rng = random.Random(61)
    for _ in range(100):
        f = support.rand_infomorphism(rng, max_size=3)
        subsets = [frozenset()]
        for t in sorted(f.source.types):
            subsets += [s | {t} for s in subsets]
        for members in subsets[: 2 ** min(len(f.source.types), 3)]:
            ft = FlatTheory(f.source.types, members)
            image = flat_direct_flow(f.type_map, ft, f.target.types)
            for t in f.source.types:
                if flat_entails(f.source, ft, t):
                    assert flat_entails(f.target, image, f.type_map[t])
