import random

import pytest
import sympy

from catring import (
    ABOVE_CAP,
    ModuleMap,
    direct_sum,
    ext,
    free_cover,
    free_resolution,
    hom_module,
    identity_map,
    is_projective,
    kernel_of,
    projective_dimension,
    suspend,
    trivial_group_module,
    uct_terms,
    yoneda,
    yoneda_cyclic_quotient,
    zero_module,
)
from catring.intlin import mat_mul
from catring.modules import GradedModule, compose_maps

from corpus import build_corpus
from oracles import oracle_ext1, oracle_hom


def modules_equal(a, b):
    return a.gens == b.gens and a.rels == b.rels and a.act == b.act


def zero_map(M, N):
    return ModuleMap(M, N, {s: [[0] * N.ngens(s) for _ in range(M.ngens(s))] for s in M.slots})


# -- structure and validation ------------------------------------------


def test_corpus_modules_validate(ring4):
    rng = random.Random(3)
    for m in build_corpus(ring4, rng, size=10):
        m.validate()


def test_validation_rejects_corrupted_action(ring4):
    m = yoneda(ring4, 2, 0)
    act = {k: [list(r) for r in v] for k, v in m.act.items()}
    # corrupt one action entry on a composable basis monomial
    key = next(k for k in act if act[k] and act[k][0])
    act[key][0][0] += 1
    broken = GradedModule(ring4, m.gens, m.rels, act)
    with pytest.raises(ValueError):
        broken.validate()


def test_yoneda_values(ring1, ring4):
    # representable of the point object in degree 1 over the rank-one ring
    y = yoneda(ring1, 1, 1)
    assert y.value_invariants((1, 1)).free_rank == 1
    assert y.value_invariants((1, 0)).is_zero()
    # over the order-4 ring the values are the hom components
    y = yoneda(ring4, 4, 0)
    assert [y.ngens((x, 0)) for x in ring4.objects] == [1, 2, 4]
    assert all(y.ngens((x, 1)) == 0 for x in ring4.objects)


def test_suspension_is_involution_and_shifts_yoneda(ring4):
    m = yoneda_cyclic_quotient(ring4, 2, 0, 1, 0)
    assert modules_equal(suspend(suspend(m)), m)
    assert modules_equal(suspend(yoneda(ring4, 2, 0)), yoneda(ring4, 2, 1))
    for x in ring4.objects:
        assert suspend(m).value_invariants((x, 1)) == m.value_invariants((x, 0))


# -- Hom ----------------------------------------------------------------


def test_classical_hom_with_enumeration_oracle(ring1):
    m = trivial_group_module(ring1, degree0=(6,))
    n = trivial_group_module(ring1, degree0=(4,))
    hom = hom_module(m, n)
    assert (hom.invariants.free_rank, hom.invariants.torsion) == oracle_hom((6,), (4,))


def test_hom_contains_identity(ring4):
    rng = random.Random(5)
    for m in build_corpus(ring4, rng, size=8):
        hom = hom_module(m, m)
        coords = hom.coordinates_of(identity_map(m))
        assert coords is not None
        if not m.is_zero():
            assert not hom.is_zero()


def test_hom_generating_maps_are_module_maps(ring4):
    m = yoneda_cyclic_quotient(ring4, 2, 0, 1, 0)
    n = yoneda(ring4, 2, 0)
    hom = hom_module(m, n)
    for f in hom.maps:
        f.check()


def test_yoneda_lemma(ring4, ring2):
    rng = random.Random(7)
    corpus = build_corpus(ring4, rng, size=10) + build_corpus(ring2, rng, size=10)
    count = 0
    for n in corpus:
        ring = n.ring
        for obj in ring.objects:
            hom = hom_module(yoneda(ring, obj, 0), n)
            assert hom.invariants == n.value_invariants((obj, 0))
            count += 1
            if count >= 20:
                return


# -- covers, kernels, resolutions ----------------------------------------


def test_cover_of_yoneda_is_identity_like(ring4):
    for obj in ring4.objects:
        cover = free_cover(yoneda(ring4, obj, 0))
        assert cover.source.entries == ((obj, 0),)
        k, _ = kernel_of(cover)
        assert k.is_zero()


def test_cover_of_zero_is_empty(ring4):
    cover = free_cover(zero_module(ring4))
    assert cover.source.entries == ()


def test_cover_surjective_on_corpus(ring4):
    from catring.intlin import Lattice

    rng = random.Random(11)
    for m in build_corpus(ring4, rng, size=8):
        cover = free_cover(m)
        cover.check()
        for s in m.slots:
            lat = Lattice(m.ngens(s))
            for row in m.rels[s]:
                lat.add(row)
            for row in cover.mats[s]:
                lat.add(row)
            # cokernel vanishes: every generator is reached
            for p in range(m.ngens(s)):
                e = [0] * m.ngens(s)
                e[p] = 1
                assert e in lat


def test_kernel_of_identity_and_zero(ring4):
    m = yoneda_cyclic_quotient(ring4, 4, 0, 2, 0)
    k, incl = kernel_of(identity_map(m))
    assert k.is_zero()
    n = yoneda(ring4, 1, 0)
    k, incl = kernel_of(zero_map(m, n))
    for s in m.slots:
        assert k.value_invariants(s) == m.value_invariants(s)
    # inclusion followed by the zero map vanishes
    comp = compose_maps(incl, zero_map(m, n))
    assert comp.is_zero()


def test_kernel_ranks_against_objectwise_snf(ring4):
    # independent check: rank of the kernel = dim - rank of the stacked
    # matrix [map; target relations] over Q, computed by sympy
    m = yoneda_cyclic_quotient(ring4, 4, 0, 2, 0)
    cover = free_cover(m)
    k, _ = kernel_of(cover)
    for s in m.slots:
        rows = [list(r) for r in cover.mats[s]] + [list(r) for r in m.rels[s]]
        gf = cover.source.ngens(s)
        gn = m.ngens(s)
        if gf == 0:
            assert k.ngens(s) == 0
            continue
        mat = sympy.Matrix(rows) if rows else sympy.zeros(1, gn)
        stacked_rank = mat.rank()
        rel_rank = sympy.Matrix([list(r) for r in m.rels[s]]).rank() if m.rels[s] else 0
        assert k.ngens(s) == gf - (stacked_rank - rel_rank)


def test_resolution_of_yoneda_has_zero_tail(ring4):
    res = free_resolution(yoneda(ring4, 2, 0), 3)
    assert res.frees[0].entries == ((2, 0),)
    for free in res.frees[1:]:
        assert free.entries == ()


def test_classical_resolution_of_cyclic(ring1):
    for n in (2, 3, 6):
        m = trivial_group_module(ring1, degree0=(n,))
        res = free_resolution(m, 3)
        assert [len(f.entries) for f in res.frees] == [1, 1, 0, 0]
        # the only differential is multiplication by n
        d1 = res.differentials[0]
        assert d1.mats[(1, 0)] == ((n,),)


def test_boundary_composites_vanish(ring4):
    rng = random.Random(13)
    for m in build_corpus(ring4, rng, size=6):
        res = free_resolution(m, 3)
        for a, b in zip(res.differentials[1:], res.differentials[:-1]):
            assert compose_maps(a, b).is_zero()
        # augmentation kills the first differential modulo relations
        if res.differentials:
            comp = compose_maps(res.differentials[0], res.augmentation)
            from catring.intlin import Lattice

            for s in m.slots:
                lat = Lattice(m.ngens(s))
                for row in m.rels[s]:
                    lat.add(row)
                for row in comp.mats[s]:
                    assert list(row) in lat


# -- Ext ------------------------------------------------------------------


def test_classical_ext_against_enumeration(ring1):
    z = trivial_group_module(ring1, degree0=(0,))
    for n in range(2, 7):
        m = trivial_group_module(ring1, degree0=(n,))
        res = ext(m, z, 1)
        assert (res.by_degree[0].free_rank, res.by_degree[0].torsion) == oracle_ext1((n,), (0,))
        assert res.by_degree[1].is_zero()


def test_ext_vanishes_on_representables(ring4):
    n = yoneda_cyclic_quotient(ring4, 2, 0, 1, 0)
    for obj in ring4.objects:
        p = yoneda(ring4, obj, 0)
        for deg in (1, 2):
            assert ext(p, n, deg).is_zero()


def test_ext_degree_zero_is_hom(ring4):
    rng = random.Random(17)
    corpus = build_corpus(ring4, rng, size=6)
    for m in corpus[:3]:
        for n in corpus[3:]:
            e0 = ext(m, n, 0)
            assert e0.by_degree[0] == hom_module(m, n).invariants
            assert e0.by_degree[1] == hom_module(m, suspend(n)).invariants


def test_ext_additive_in_direct_sums(ring4):
    m1 = yoneda_cyclic_quotient(ring4, 2, 0, 1, 0)
    m2 = yoneda(ring4, 4, 1)
    n = yoneda_cyclic_quotient(ring4, 4, 0, 2, 0)
    for deg in (0, 1, 2):
        combined = ext(direct_sum(m1, m2), n, deg)
        a = ext(m1, n, deg)
        b = ext(m2, n, deg)
        for e in (0, 1):
            assert combined.by_degree[e].free_rank == a.by_degree[e].free_rank + b.by_degree[e].free_rank
            assert sorted(combined.by_degree[e].torsion) == sorted(
                a.by_degree[e].torsion + b.by_degree[e].torsion
            )


def test_ext_resolution_independence(ring4):
    m = yoneda_cyclic_quotient(ring4, 2, 0, 1, 0)
    cover = free_cover(m)
    k1, _ = kernel_of(cover)
    for n in (k1, yoneda(ring4, 2, 1)):
        for deg in (1, 2, 3):
            base = ext(m, n, deg)
            shuffled = ext(m, n, deg, rng=random.Random(100 + deg))
            assert base.by_degree == shuffled.by_degree


def test_ext_suspension_invariance(ring4):
    m = yoneda_cyclic_quotient(ring4, 4, 0, 2, 1)
    n = yoneda_cyclic_quotient(ring4, 2, 0, 1, 0)
    for deg in (0, 1, 2):
        a = ext(m, n, deg)
        b = ext(suspend(m), suspend(n), deg)
        assert a.by_degree == b.by_degree


def test_euler_characteristic_additivity(ring1):
    # over the rank-one ring the Ext tail vanishes past degree 1, so the
    # alternating rank sum over 0 -> K -> F -> M -> 0 balances
    for shape in ((6,), (0, 4), (2, 2)):
        m = trivial_group_module(ring1, degree0=shape, degree1=(3,))
        n = trivial_group_module(ring1, degree0=(0, 2), degree1=(8,))
        cover = free_cover(m)
        k, _ = kernel_of(cover)
        f_mod = GradedModule(ring1, cover.source.gens, cover.source.rels, cover.source.act)
        for e in (0, 1):
            def chi(mod):
                return sum(
                    (-1) ** d * ext(mod, n, d).by_degree[e].free_rank for d in range(4)
                )

            assert chi(f_mod) == chi(m) + chi(k)


# -- projectivity ---------------------------------------------------------


def test_projectives(ring1, ring4):
    assert is_projective(yoneda(ring4, 2, 0))
    assert is_projective(yoneda(ring4, 1, 1))
    assert is_projective(direct_sum(yoneda(ring4, 1, 0), yoneda(ring4, 4, 1)))
    assert is_projective(zero_module(ring4))
    assert not is_projective(trivial_group_module(ring1, degree0=(2,)))
    assert is_projective(trivial_group_module(ring1, degree0=(0, 0)))


def test_projective_dimension_classical(ring1, ring4):
    assert projective_dimension(yoneda(ring4, 4, 0), 3) == 0
    for n in (2, 5, 8):
        assert projective_dimension(trivial_group_module(ring1, degree0=(n,)), 3) == 1
    assert projective_dimension(zero_module(ring4), 2) == 0


def test_high_projective_dimension_witness(ring4):
    m = yoneda_cyclic_quotient(ring4, 2, 0, 1, 0)
    pd = projective_dimension(m, 3)
    assert pd is ABOVE_CAP or pd >= 2
    # equivalent witness: a nonzero second Ext group
    cover = free_cover(m)
    k1, _ = kernel_of(cover)
    k2, _ = kernel_of(free_cover(k1))
    assert not ext(m, k2, 2).is_zero()


def test_uct_terms_classical(ring1):
    m = trivial_group_module(ring1, degree0=(2,))
    terms = uct_terms(m, m)
    assert terms.pd_within_one
    assert str(terms.hom.by_degree[0]) == "Z/2"
    assert terms.hom.by_degree[1].is_zero()
    assert terms.ext1_shifted.by_degree[0].is_zero()
    assert str(terms.ext1_shifted.by_degree[1]) == "Z/2"


def test_uct_degenerates_for_projectives(ring4):
    p = direct_sum(yoneda(ring4, 2, 0), yoneda(ring4, 4, 1))
    n = yoneda_cyclic_quotient(ring4, 2, 0, 1, 0)
    terms = uct_terms(p, n)
    assert terms.pd_within_one
    assert terms.ext1_shifted.is_zero()
    assert terms.hom.by_degree == ext(p, n, 0).by_degree


def test_uct_flags_long_resolutions(ring4):
    m = yoneda_cyclic_quotient(ring4, 2, 0, 1, 0)
    n = yoneda(ring4, 2, 0)
    terms = uct_terms(m, n)
    assert not terms.pd_within_one


def test_functoriality_property_on_corpus(ring2):
    # action(normal_form(b then b')) == action(b) . action(b') is part of
    # validate(); spot-check it directly on one module and all pairs
    m = yoneda_cyclic_quotient(ring2, 2, 0, 1, 0)
    ring = ring2
    for fu, (x, y, _) in enumerate(ring.flat):
        for fv, (y2, z, _) in enumerate(ring.flat):
            if y2 != y:
                continue
            vec = ring.table[(fu, fv)]
            off = ring.offset[(x, z)]
            for e in (0, 1):
                lhs = mat_mul(m.act[(fv, e)], m.act[(fu, e)], m.ngens((x, e)))
                rhs = [[0] * m.ngens((x, e)) for _ in range(m.ngens((z, e)))]
                for t, c in enumerate(vec):
                    if c:
                        for i, row in enumerate(m.act[(off + t, e)]):
                            for j, v in enumerate(row):
                                rhs[i][j] += c * v
                assert lhs == rhs
