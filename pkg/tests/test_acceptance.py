"""Numbered acceptance checks over the whole computed landscape.

Each check registers one PASS/FAIL line in RESULTS; the conftest hook
prints them after the run.  Expected values are pinned here as
literals on purpose, independent of the frozen tables the repro module
carries.
"""

import contextlib
import os
import random

from sl2unitals import catalog, closure, gf, grp, iso, para, trans, unital
from sl2unitals.exactcover import BudgetExceededError
from sl2unitals.fingerprint import fingerprint, match_name

RESULTS = {}


class _Line:
    detail = None

    def done(self, text):
        self.detail = text


@contextlib.contextmanager
def criterion(num):
    line = _Line()
    try:
        yield line
    except BaseException as exc:
        note = f"{type(exc).__name__}: {exc}"
        RESULTS[num] = (False, note[:200])
        raise
    assert line.detail, "check ended without recording its summary"
    RESULTS[num] = (True, line.detail)


def test_criterion_01_parallelism_count_at_order_4(q4_paras):
    with criterion(1) as c:
        assert len(q4_paras) == 182
        c.done("exhaustive search at order 4 finds 182 parallelisms")


def test_criterion_02_orbit_size_tables():
    with criterion(2) as c:
        land = catalog.landscape()
        sizes = {
            tag: tuple(sorted(len(o) for o in orbs))
            for tag, orbs in zip(catalog.TAGS, land.orbits)
        }
        assert sizes["H"] == (1, 1, 5, 25, 30, 60, 60)
        assert sizes["E"] == (1, 1, 5, 5, 6, 20, 24, 60, 60)
        c.done("orbit sizes {1,1,5,25,30,60,60} and {1,1,5,5,6,20,24,60,60}")


def test_criterion_03_sixteen_isomorphism_types():
    with criterion(3) as c:
        certs = {label: catalog.certificate(label) for label in catalog.SIXTEEN}
        assert len(set(certs.values())) == len(catalog.SIXTEEN) == 16
        for label in catalog.SIXTEEN:
            ok, problems = closure.verify_design(catalog.closure_of(label), 4)
            assert ok, (label, problems)
        c.done("the 16 closures are pairwise non-isomorphic 2-(65,5,1) designs")


TABLE2 = {
    "H.pi2": (40, "C4:D5"),
    "H.pi4": (48, "C4:A4"),
    "H.pi5": (240, "C4:(A4xC5)"),
    "H.pi6": (20, "C5:C4"),
    "H.pi7": (20, "C5:C4"),
    "E.pi1": (10, "D5"),
    "E.pi2": (40, "C4:D5"),
    "E.pi3": (12, "A4"),
    "E.pi4": (48, "C4:A4"),
    "E.pi5": (48, "C4:A4"),
    "E.pi6": (4, "C4"),
    "E.pi7": (4, "C4"),
}


def test_criterion_04_sporadic_automorphism_table():
    with criterion(4) as c:
        got = {label: catalog.group_profile(label) for label in catalog.LEONIDS}
        assert got == TABLE2
        orders = sorted(order for order, _ in got.values())
        assert orders == sorted([40, 48, 240, 20, 20, 10, 40, 12, 48, 48, 4, 4])
        c.done("twelve sporadic closures match the frozen order/structure table")


def test_criterion_05_late_block_rigidity():
    with criterion(5) as c:
        for label in catalog.LEONIDS:
            D = catalog.closure_of(label)
            assert iso.block_stabilizer_check(D, D.infinity), label
        c.done("no automorphism of any of the twelve moves the late block")


def test_criterion_06_residue_stabilizer_structure():
    with criterion(6) as c:
        notes = []
        for q, name, center in ((3, "S4", 1), (5, "A5xC2", 2)):
            U = grp.short_blocks(q)
            pi = para.named_parallelism(q, "odd")
            stab = para.stabilizer(U, pi)
            assert len(stab) == q * (q**2 - 1)
            order, orbit = para.stabilizer_order_by_orbit(U, pi)
            assert (order, order * orbit) == (len(stab), grp.ar_order(U.group))
            fp = fingerprint([tuple(grp.ar_point_perm(U.group, t)) for t in stab])
            # q = 1 mod 4 gives the direct product with a central
            # involution, q = 3 mod 4 the semidirect one with trivial
            # center
            assert (match_name(fp), fp.center) == (name, center)
            notes.append(f"q={q}: order {order}, {name}")
        c.done("; ".join(notes))


def test_criterion_07_subfield_stabilizer_orders():
    with criterion(7) as c:
        for q2, (p, e) in ((4, (2, 1)), (9, (3, 1))):
            U = grp.short_blocks(q2)
            pi = para.named_parallelism(q2, "sq")
            order, orbit = para.stabilizer_order_by_orbit(U, pi)
            root = p**e
            assert order == 2 * e * (root**2 - 1) * root**2 * (root**2 + 1)
            assert order * orbit == grp.ar_order(U.group)
            if q2 == 4:
                assert len(para.stabilizer(U, pi)) == order  # second route
        c.done("subfield stabilizer orders 120 (order 4) and 1440 (order 9)")


def test_criterion_08_subfield_class_census():
    with criterion(8) as c:
        rows = para.class_structure_report(
            grp.short_blocks(4), para.named_parallelism(4, "sq")
        )
        assert len(rows) == 5
        for row in rows:
            assert row["right_of_p"] == 7
            assert row["right_and_left_of_pbar"] == 3
            assert row["pure_left_of_pbar"] == 8
            assert row["other"] == 0
        c.done("each class: 7 right cosets, 3 doubling as left, 8 pure left")


def test_criterion_09_subfield_inverse_inequivalence():
    with criterion(9) as c:
        for q2 in (4, 9):
            U = grp.short_blocks(q2)
            sq = para.named_parallelism(q2, "sq")
            inv = para.named_parallelism(q2, "sq-inv")
            orb = para.orbit_bfs(U, sq)
            assert inv not in orb
            if q2 == 9:
                odd = para.named_parallelism(9, "odd")
                assert odd not in orb
                assert odd not in para.orbit_bfs(U, inv)
        c.done("sq and sq-inv inequivalent at orders 4 and 9; both differ from odd at order 9")


def test_criterion_10_natural_translation_centers(q4_types, q4_auts):
    with criterion(10) as c:
        for q in (3, 4, 5):
            types = unital.affine_types(q)
            auts = q4_auts if q == 4 else [unital.aut_affine(U) for U in types]
            pi = para.named_parallelism(q, "natural")
            for U, ars in zip(types, auts):
                for s in range(q + 1):
                    rep = trans.translations_at_infinity(U, pi, s, ars)
                    assert rep.is_translation_center and rep.order == q
                    rmuls = {grp.rho(U.group, m) for m in U.shorts.sylows[s].members}
                    assert set(rep.group) == rmuls
        c.done("natural closures: every infinite point is a center with group order q, all right multiplications")


def test_criterion_11_flat_translations(q4_types, q4_auts):
    with criterion(11) as c:
        pi = para.named_parallelism(4, "flat")
        first, auts = q4_types[0], q4_auts[0]
        G = first.group
        taus = []
        for s in range(5):
            rep = trans.translations_at_infinity(first, pi, s, auts)
            assert rep.order == 2
            taus.extend(t for t in rep.group if not t.is_identity())
        assert len(taus) == 5
        # each one is left multiplication by the single nontrivial
        # element its Sylow shares with the normalizer of S
        ident = G.index[(1, 0, 0, 1)]
        ns = set(grp.normalizer_sl(G, first.S).members)
        shared = []
        for P in first.shorts.sylows:
            inside = [x for x in P.members if x in ns and x != ident]
            assert len(inside) == 1
            shared.extend(inside)
        assert set(taus) == set(trans.left_multiplications(G, shared))
        perms = [tuple(grp.ar_point_perm(G, t)) for t in taus]
        els = iso.enumerate_group(perms, G.order)
        fp = fingerprint(els)
        assert (fp.order, match_name(fp)) == (10, "D5")
        second_total = sum(
            trans.translations_at_infinity(q4_types[1], pi, s, q4_auts[1]).order - 1
            for s in range(5)
        )
        assert second_total == 1
        for q in (3, 5):
            U = unital.affine_types(q)[0]
            ars = unital.aut_affine(U)
            flat_q = para.named_parallelism(q, "flat")
            for s in range(q + 1):
                assert trans.translations_at_infinity(U, flat_q, s, ars).order == 1
        c.done(
            "most symmetric order-4 closure: 5 involutions generating a dihedral group "
            "of order 10; other type: 1; odd q: none"
        )


def test_criterion_12_residue_and_subfield_forbid_infinite_centers(q4_types, q4_auts):
    with criterion(12) as c:
        for q in (3, 5):
            U = unital.affine_types(q)[0]
            ars = unital.aut_affine(U)
            pi = para.named_parallelism(q, "odd")
            for s in range(q + 1):
                assert trans.translations_at_infinity(U, pi, s, ars).order == 1
        for kind in ("sq", "sq-inv"):
            pi = para.named_parallelism(4, kind)
            for U, ars in zip(q4_types, q4_auts):
                for s in range(5):
                    assert trans.translations_at_infinity(U, pi, s, ars).order == 1
        c.done("no nontrivial translation centered at infinity for odd (q=3,5) and subfield kinds (order 4)")


LEONIDS_TRANSLATIONS = {
    "H.pi2": (1, "C2"),
    "E.pi2": (1, "C2"),
    "H.pi4": (3, "C2xC2"),
    "H.pi5": (3, "C2xC2"),
    "E.pi3": (3, "C2xC2"),
    "E.pi4": (3, "C2xC2"),
    "E.pi5": (3, "C2xC2"),
}


def test_criterion_13_sporadic_translations():
    with criterion(13) as c:
        unlisted = []
        for label in catalog.LEONIDS:
            reports = trans.all_translations(catalog.closure_of(label))
            total = sum(r.order - 1 for r in reports)
            if label in LEONIDS_TRANSLATIONS:
                want_total, want_name = LEONIDS_TRANSLATIONS[label]
                assert total == want_total, label
                assert len(reports) == 1  # a single center in every listed case
                assert match_name(reports[0].fingerprint) == want_name
                if want_total == 3:
                    assert reports[0].is_translation_center
            else:
                unlisted.append(f"{label}={total}")
        c.done(
            "listed counts and structures reproduced exactly; computed counts for the "
            "others: " + ", ".join(unlisted)
        )


def _parallelism_classes(q, budget=None):
    """All parallelisms at order q, classified up to equivalence; checks
    the classes are exactly those of flat, natural and odd."""
    U = unital.affine_types(q)[0]
    paras = para.enumerate_parallelisms(U.shorts, budget=budget)
    orbits = para.orbit_partition(U.shorts, paras, unital.aut_affine(U))
    assert sorted(len(o) for o in orbits) == [1, 1, len(paras) - 2]
    reps = [{paras[i] for i in o} for o in orbits]
    flat_pi, natural_pi, odd_pi = (
        para.named_parallelism(q, k) for k in ("flat", "natural", "odd")
    )
    assert {len(r) for r in reps if flat_pi in r or natural_pi in r} == {1}
    assert any(odd_pi in r and len(r) == len(paras) - 2 for r in reps)
    return len(paras), len(orbits)


def test_criterion_14_small_order_classification(q5_solutions):
    with criterion(14) as c:
        notes = []
        for q in (3, 5):
            G = grp.sl2(q)
            S = unital.canonical_S(q)
            sols = unital.search_D_sets(G, S) if q == 3 else q5_solutions
            assert len(unital.classify_solutions(G, S, sols)) == 1
        notes.append("q=3 and q=5: a single affine type each")
        assert _parallelism_classes(3) == (26, 3)
        notes.append("q=3: 26 parallelisms in 3 classes (flat, natural, odd)")
        if os.environ.get("UNITAL_Q5", "1") != "0":
            budget = int(os.environ.get("UNITAL_Q5_BUDGET", "0")) or None
            try:
                counts = _parallelism_classes(5, budget=budget)
            except BudgetExceededError:
                notes.append("q=5 parallelisms: search hit the budget, no claim")
            else:
                assert counts == (122, 3)
                notes.append("q=5: 122 parallelisms in 3 classes (search completed)")
        else:
            notes.append("q=5 parallelisms: skipped by UNITAL_Q5=0, no claim")
        c.done("; ".join(notes))


def test_criterion_15_property_suites(q4_types, q4_auts):
    with criterion(15) as c:
        # field axioms, exhaustive through order 9
        for p, e in ((2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2)):
            F = gf.field(p, e)
            for a in range(F.q):
                assert F.add(a, F.neg(a)) == 0
                if a:
                    assert F.mul(a, F.inv(a)) == 1
                for b in range(F.q):
                    assert F.add(a, b) == F.add(b, a)
                    assert F.mul(a, b) == F.mul(b, a)
                    for d in range(F.q):
                        assert F.add(F.add(a, b), d) == F.add(a, F.add(b, d))
                        assert F.mul(F.mul(a, b), d) == F.mul(a, F.mul(b, d))
                        assert F.mul(a, F.add(b, d)) == F.add(F.mul(a, b), F.mul(a, d))
        # sampled action laws
        rng = random.Random(7)
        for q in (3, 4):
            G = grp.sl2(q)
            ambient = grp.ar_enumerate(q)
            for _ in range(40):
                s, t = rng.choice(ambient), rng.choice(ambient)
                st = grp.ar_compose(G, s, t)
                x = rng.randrange(G.order)
                assert grp.ar_apply(G, st, x) == grp.ar_apply(G, t, grp.ar_apply(G, s, x))
                assert grp.ar_compose(G, s, grp.ar_inverse(G, s)).is_identity()
        # every built unital passes its axiom battery
        for q in (3, 4, 5):
            for U in unital.affine_types(q):
                unital.build_affine(U.group, U.S, U.d_sets)
        # every constructed parallelism verifies
        kinds = {
            2: ("flat", "natural"),
            3: ("flat", "natural", "odd", "odd-prime"),
            4: ("flat", "natural", "sq", "sq-inv"),
            5: ("flat", "natural", "odd", "odd-prime"),
            9: ("sq", "sq-inv", "odd"),
        }
        for q, names in kinds.items():
            for kind in names:
                ok, problems = para.verify_parallelism(
                    grp.short_blocks(q), para.named_parallelism(q, kind)
                )
                assert ok, (q, kind, problems)
        # norm of a square is a square, and conversely, through order 169
        for p, e in ((2, 2), (3, 2), (2, 4), (5, 2), (7, 2), (2, 6), (3, 4), (11, 2), (13, 2)):
            assert gf.norm_square_implies_square(gf.field(p, e))
        # marked-coset fixing sets are exactly the Sylow left multiplications
        for q in (3, 4, 5):
            assert trans.lemma_transt_check(grp.sl2(q))
        # dual route: ambient filter vs generic design engine
        U3 = unital.affine_types(3)[0]
        assert iso.automorphisms(closure.Design(U3.point_count, U3.blocks))[1] == len(
            unital.aut_affine(U3)
        )
        for U, ars in zip(q4_types, q4_auts):
            assert iso.automorphisms(closure.Design(U.point_count, U.blocks))[1] == len(ars)
        c.done(
            "field axioms, action laws, unital axioms, parallelism checks, "
            "norm-square lemma, coset fixers and dual-route agreement all hold"
        )
