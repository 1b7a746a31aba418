import random

import numpy as np
import pytest

from sl2unitals import grp


def test_group_orders():
    for q, n in [(2, 6), (3, 24), (4, 60), (5, 120), (9, 720)]:
        assert grp.sl2(q).order == n


def test_enumeration_is_sorted_and_indexed():
    G = grp.sl2(3)
    assert G.elems == sorted(G.elems)
    assert all(G.idx(G.mat(i)) == i for i in range(G.order))
    assert G.mat(G.one) == (1, 0, 0, 1)
    assert G.mat(G.minus_one) == (2, 0, 0, 2)


def test_group_laws_sampled():
    rng = random.Random(7)
    for q in (3, 4, 5):
        G = grp.sl2(q)
        ids = [rng.randrange(G.order) for _ in range(40)]
        for x, y, z in zip(ids, ids[1:], ids[2:]):
            assert G.mul(G.mul(x, y), z) == G.mul(x, G.mul(y, z))
            assert G.mul(x, G.inv(x)) == G.one
            assert G.inv(G.mul(x, y)) == G.mul(G.inv(y), G.inv(x))


def test_perm_tables_match_scalar_ops():
    G = grp.sl2(4)
    rng = random.Random(1)
    for _ in range(20):
        h = rng.randrange(G.order)
        x = rng.randrange(G.order)
        assert G.rmul_perm(h)[x] == G.mul(x, h)
        assert G.lmul_perm(h)[x] == G.mul(h, x)
        m = G.mat(h)
        assert G.conj_perm_gl(m)[x] == G.idx(G.mat_mul(G.mat_mul(G.mat_inv(m), G.mat(x)), m))


def test_frob_perm():
    G = grp.sl2(9)
    F = G.field
    x = G.idx((F.generator, 0, 0, F.inv(F.generator)))
    assert G.frob_perm(1)[x] == G.idx(G.mat_frob(G.mat(x), 1))
    assert np.array_equal(G.frob_perm(2), np.arange(G.order))


def test_generators_generate():
    for q in (2, 3, 4, 5):
        G = grp.sl2(q)
        assert len(grp.mulclose(G, grp.sl_generators(G))) == G.order


def test_sylow_subgroups():
    for q in (2, 3, 4, 5, 9):
        G = grp.sl2(q)
        ts = grp.sylow_p_subgroups(G)
        assert len(ts) == q + 1
        assert all(t.order == q for t in ts)
        # pairwise trivial intersection
        for i, a in enumerate(ts):
            for b in ts[i + 1 :]:
                assert set(a.members) & set(b.members) == {G.one}
        # the canonical one is upper unitriangular, so the lower-left
        # entry is constant on its cosets from either side
        assert all(G.mat(x)[0] == 1 and G.mat(x)[2] == 0 for x in ts[0].members)


def test_normalizer_of_sylow():
    for q in (2, 3, 4, 5):
        G = grp.sl2(q)
        t0 = grp.sylow_p_subgroups(G)[0]
        assert grp.normalizer_sl(G, t0).order == q * (q - 1)


def test_cyclic_subgroup_of_order():
    for q in (2, 3, 4, 5, 9):
        G = grp.sl2(q)
        s = grp.cyclic_subgroup_of_order(G, q + 1)
        assert s.order == q + 1
        assert grp.subgroup_from(G, grp.mulclose(G, list(s.members))).members == s.members
    with pytest.raises(grp.GroupError):
        grp.cyclic_subgroup_of_order(grp.sl2(3), 5)


def test_block_universe_counts():
    for q, n in [(2, 9), (3, 32), (4, 75), (5, 144), (9, 800)]:
        U = grp.short_blocks(q)
        assert len(U.blocks) == n
        assert len(set(U.blocks)) == n


def test_block_sides():
    # every right coset Tg equals the left coset g(T^g)
    for q in (3, 4):
        G = grp.sl2(q)
        U = grp.short_blocks(q)
        for bi, b in enumerate(U.blocks):
            g = b[0]
            right = U.sylows[U.right_of[bi]]
            left = U.sylows[U.left_of[bi]]
            assert tuple(sorted(G.mul(x, g) for x in right.members)) == b
            assert tuple(sorted(G.mul(g, x) for x in left.members)) == b


def test_each_point_lies_on_q_plus_1_short_blocks():
    U = grp.short_blocks(4)
    assert all(len(bs) == 5 for bs in U.by_point)


# -- the ambient group --


def _random_ar(G, rng):
    cls = grp.pgl_classes(G)
    return grp.AR(
        cls[rng.randrange(len(cls))],
        rng.randrange(max(G.field.e, 1)),
        G.mat(rng.randrange(G.order)),
    )


def test_ar_composition_matches_pointwise_action():
    rng = random.Random(11)
    for q in (3, 4, 9):
        G = grp.sl2(q)
        for _ in range(12):
            s = _random_ar(G, rng)
            t = _random_ar(G, rng)
            st = grp.ar_compose(G, s, t)
            for x in (rng.randrange(G.order), rng.randrange(G.order)):
                assert grp.ar_apply(G, st, x) == grp.ar_apply(G, t, grp.ar_apply(G, s, x))
            inv = grp.ar_inverse(G, s)
            assert grp.ar_compose(G, s, inv).is_identity()
            assert grp.ar_compose(G, inv, s).is_identity()


def test_ar_point_perm_is_bijective():
    G = grp.sl2(4)
    rng = random.Random(3)
    for _ in range(8):
        perm = grp.ar_point_perm(G, _random_ar(G, rng))
        assert sorted(perm.tolist()) == list(range(G.order))


def test_ar_order_and_enumeration():
    for q, n in [(2, 36), (3, 576), (4, 7200), (5, 14400)]:
        G = grp.sl2(q)
        assert grp.ar_order(G) == n
    assert len(grp.ar_enumerate(3)) == 576
    assert len(set(grp.ar_enumerate(3))) == 576


def test_pgl_classes_count():
    for q in (2, 3, 4, 5):
        assert len(grp.pgl_classes(grp.sl2(q))) == q**3 - q


def test_theta_factors_as_conjugation_then_translation():
    # x -> h^-1 x bar(h) equals conjugation by h followed by right
    # multiplication with h^-1 bar(h)
    G = grp.sl2(9)
    rng = random.Random(5)
    for _ in range(10):
        h = rng.randrange(G.order)
        th = grp.theta(G, h)
        hm = G.mat(h)
        expect = G.mat_mul(G.mat_inv(hm), G.mat_bar(hm))
        assert th.rmul == expect
        x = rng.randrange(G.order)
        got = grp.ar_apply(G, th, x)
        assert G.mat(got) == G.mat_mul(G.mat_mul(G.mat_inv(hm), G.mat(x)), G.mat_bar(hm))


def test_ar_generators_close_to_full_group():
    for q in (2, 3):
        G = grp.sl2(q)
        gens = grp.ar_generators(G)
        seen = {grp.ar_identity(G)}
        frontier = [grp.ar_identity(G)]
        while frontier:
            nxt = []
            for s in frontier:
                for g in gens:
                    t = grp.ar_compose(G, s, g)
                    if t not in seen:
                        seen.add(t)
                        nxt.append(t)
            frontier = nxt
        assert len(seen) == grp.ar_order(G)
