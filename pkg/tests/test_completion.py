import random

import pytest

from catring import (
    NotStabilizedError,
    InconsistentPresentationError,
    build_presentation,
    complete,
    normal_form,
    presentation_c4,
    random_associativity_probe,
    verify_ring,
)
from catring.presentation import (
    CONJUGATION,
    INDUCTION,
    MULTIPLICATION,
    RESTRICTION,
    Generator,
    Presentation,
    Relation,
)

from oracles import oracle_complete

# Frozen output of the independent brute-force oracle (tests below re-run
# it at the stabilized bound + 2): total ranks per group order, the rank
# matrix for k = 4, and the absence of torsion.
ORACLE_TOTAL_RANK = {1: 1, 2: 6, 3: 8, 4: 22}
ORACLE_RANKS_K4 = {
    (1, 1): 4, (1, 2): 2, (1, 4): 1,
    (2, 1): 2, (2, 2): 4, (2, 4): 2,
    (4, 1): 1, (4, 2): 2, (4, 4): 4,
}


def test_k1_is_the_integers(ring1):
    assert ring1.total_rank() == 1
    assert ring1.rank(1, 1) == (1, ())
    assert ring1.basis[(1, 1)] == [()]
    u = ring1.unit(1)
    assert u.then(u) == u


def test_frozen_oracle_ranks(ring1, ring2, ring3, ring4):
    for ring, k in ((ring1, 1), (ring2, 2), (ring3, 3), (ring4, 4)):
        assert ring.total_rank() == ORACLE_TOTAL_RANK[k]
        for pair in ring.pairs:
            assert ring.rank(*pair)[1] == ()
    for pair, n in ORACLE_RANKS_K4.items():
        assert ring4.rank(*pair)[0] == n


def test_oracle_rerun_small():
    # re-run the independent enumeration at the stabilized bound + 2
    for k in (1, 2, 3):
        ring = complete(build_presentation(k))
        res = oracle_complete(build_presentation(k), ring.stabilized_at + 2)
        assert sum(n for n, _ in res.values()) == ORACLE_TOTAL_RANK[k]
        assert all(not tors for _, tors in res.values())


@pytest.mark.slow
def test_oracle_rerun_k4(ring4):
    res = oracle_complete(build_presentation(4), ring4.stabilized_at + 2)
    assert {p: n for p, (n, _) in res.items()} == ORACLE_RANKS_K4
    assert all(not tors for _, tors in res.values())


def test_pinned_relation_normal_forms(ring4):
    p = ring4.presentation
    c1 = p.gen(CONJUGATION, 1)
    c2 = p.gen(CONJUGATION, 2)
    m2 = p.gen(MULTIPLICATION, 2)
    m4 = p.gen(MULTIPLICATION, 4)
    r21 = p.gen(RESTRICTION, 2, 1)
    r42 = p.gen(RESTRICTION, 4, 2)
    i21 = p.gen(INDUCTION, 2, 1)
    i42 = p.gen(INDUCTION, 4, 2)

    def check(lhs, rhs, src, tgt):
        a = normal_form(ring4, lhs, source=src, target=tgt)
        b = normal_form(ring4, rhs, source=src, target=tgt)
        assert a == b, (str(a), str(b))

    check((i21, r21), ((1, ()), (1, (c1, c1))), 1, 1)
    check((i42, r42), ((1, ()), (1, (c2,))), 2, 2)
    check((r21, i21), ((1, ()), (1, (m2,))), 2, 2)
    check((r42, i42), ((1, ()), (1, (m4, m4))), 4, 4)
    check((r42, m2, i42), ((1, (m4,)), (1, (m4, m4, m4))), 4, 4)
    # power relations
    check((c1,) * 4, (), 1, 1)
    check((c2,) * 2, (), 2, 2)
    check((m2,) * 2, (), 2, 2)
    check((m4,) * 4, (), 4, 4)


def test_idempotence_and_linearity_of_normal_form(ring4):
    for pair in ring4.pairs:
        for pos, w in enumerate(ring4.basis[pair]):
            elem = normal_form(ring4, w, source=pair[0], target=pair[1])
            assert elem == ring4.basis_element(pair[0], pair[1], pos)
    p = ring4.presentation
    c1 = p.gen(CONJUGATION, 1)
    a = normal_form(ring4, ((2, (c1,)), (3, (c1, c1, c1, c1))), source=1, target=1)
    b = normal_form(ring4, (c1,))
    c = normal_form(ring4, (c1,) * 4)
    assert a.coeffs == tuple(2 * x + 3 * y for x, y in zip(b.coeffs, c.coeffs))


def test_normal_form_rejects_nonparallel(ring4):
    p = ring4.presentation
    c1 = p.gen(CONJUGATION, 1)
    i21 = p.gen(INDUCTION, 2, 1)
    with pytest.raises(ValueError):
        normal_form(ring4, ((1, (c1,)), (1, (i21,))))


def test_verify_ring_passes_k1_through_k4(ring1, ring2, ring3, ring4, ring_c4_hand):
    for ring in (ring1, ring2, ring3, ring4, ring_c4_hand):
        report = verify_ring(ring)
        assert report.ok, report.failures
        assert not report.warnings  # no torsion anywhere


def test_verify_ring_detects_corruption(ring2):
    import copy

    broken = copy.deepcopy(ring2)
    key = next(k for k, v in broken.table.items() if any(v))
    vec = list(broken.table[key])
    vec[0] += 1
    broken.table[key] = tuple(vec)
    report = verify_ring(broken)
    assert not report.ok
    assert report.failures


def test_random_word_associativity(ring4):
    assert random_associativity_probe(ring4, count=1000, max_len=6, seed=0) == []


def test_relation_order_independence(ring4):
    pres = build_presentation(4)
    rng = random.Random(11)
    rels = list(pres.relations)
    rng.shuffle(rels)
    shuffled = Presentation(4, pres.generators, rels, pres.family_counts)
    ring_b = complete(shuffled)
    assert ring_b.basis == ring4.basis
    assert ring_b.torsion == ring4.torsion
    assert ring_b.table == ring4.table


def test_stability_under_larger_cap(ring4):
    ring_b = complete(build_presentation(4), max_len=ring4.max_len + 1)
    assert ring_b.basis == ring4.basis
    assert ring_b.torsion == ring4.torsion
    assert ring_b.table == ring4.table
    assert ring_b.stabilized_at == ring4.stabilized_at


def test_not_stabilized_reports_trajectory():
    with pytest.raises(NotStabilizedError) as info:
        complete(build_presentation(4), max_len=1)
    assert info.value.trajectory


def test_inconsistent_presentation_detected():
    # 1 = 0 on the unique object collapses the unit
    gens = [Generator("identity", 1)]
    rel = Relation("collapse", 1, 1, (((1, ()),), ((2, ()),)))
    pres = Presentation(1, gens, [rel], {"collapse": 1})
    with pytest.raises(InconsistentPresentationError):
        complete(pres)


def test_unknown_component_rejected(ring2):
    with pytest.raises(KeyError):
        ring2.rank(1, 5)


def test_k6_completes_and_verifies():
    ring = complete(build_presentation(6))
    assert ring.total_rank() == 48
    report = verify_ring(ring)
    assert report.ok, report.failures
