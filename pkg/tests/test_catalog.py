import pytest

from sl2unitals import catalog, closure, iso


def test_orbit_sizes_under_both_groups():
    land = catalog.landscape()
    assert sorted(len(o) for o in land.orbits[0]) == [1, 1, 5, 25, 30, 60, 60]
    assert sorted(len(o) for o in land.orbits[1]) == [1, 1, 5, 5, 6, 20, 24, 60, 60]


def test_singleton_orbits_are_the_coset_parallelisms():
    land = catalog.landscape()
    for orbits in land.orbits:
        singles = {land.paras[o[0]] for o in orbits if len(o) == 1}
        assert singles == {land.named["flat"], land.named["natural"]}


def test_named_reps_cover_distinct_e_orbits():
    land = catalog.landscape()
    where = {p: i for i, p in enumerate(land.paras)}
    orbit_of = {i: oi for oi, o in enumerate(land.orbits[1]) for i in o}
    names = ["pi" + str(k) for k in range(1, 8)]
    seen = {orbit_of[where[land.named[n]]] for n in names}
    assert len(seen) == 7


def test_fusion_pattern_behind_the_names():
    land = catalog.landscape()
    where = {p: i for i, p in enumerate(land.paras)}
    h_orbit = {i: frozenset(o) for o in land.orbits[0] for i in o}
    e_size = {i: len(o) for o in land.orbits[1] for i in o}

    def at(name):
        return where[land.named[name]]

    assert h_orbit[at("pi1")] == h_orbit[at("pi2")]
    assert (e_size[at("pi1")], e_size[at("pi2")]) == (24, 6)
    assert h_orbit[at("pi3")] == h_orbit[at("pi4")]
    assert (e_size[at("pi3")], e_size[at("pi4")]) == (20, 5)
    assert len(h_orbit[at("pi5")]) == 5 and e_size[at("pi5")] == 5
    # subfield parallelism and its inverse land in the two 60-orbits
    assert where[land.named["sq"]] in h_orbit[at("pi7")]
    assert where[land.named["sq-inv"]] in h_orbit[at("pi6")]


def test_group_profiles_match_the_frozen_table():
    assert {label: catalog.group_profile(label) for label in catalog.LEONIDS} == {
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


def test_sixteen_certificates_pairwise_distinct():
    certs = {catalog.certificate(label) for label in catalog.SIXTEEN}
    assert len(certs) == len(catalog.SIXTEEN) == 16


def test_closures_are_verified_designs():
    for label in ("H.flat", "E.pi5"):
        D = catalog.closure_of(label)
        ok, problems = closure.verify_design(D, 4)
        assert ok, problems


def test_equivalent_parallelisms_give_isomorphic_closures():
    # pi1 and pi2 fuse under the H group, so the H closures agree
    land = catalog.landscape()
    D1 = closure.close(land.types[0], land.named["pi1"])
    answer, _ = iso.isomorphic(D1, catalog.closure_of("H.pi2"))
    assert answer


def test_parse_label():
    assert catalog.parse_label("H.pi2") == (0, "pi2")
    assert catalog.parse_label("E.natural") == (1, "natural")
    for bad in ("X.pi1", "H", "pi2", "H."):
        with pytest.raises(ValueError):
            catalog.parse_label(bad)


def test_classical_closure_is_the_biggest():
    assert catalog.closure_order("H.natural") == 249600
    assert catalog.closure_order("E.natural") == 240
