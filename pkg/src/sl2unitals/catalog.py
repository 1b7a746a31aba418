"""Named landscape of the order-4 case.

The two affine SL(2,4)-unitals are tagged H and E, most symmetric
first (ambient automorphism groups of orders 1200 and 240).  The 182
parallelisms fall into 7 orbits under the H group and 9 under the E
group, and the sporadic ones get stable names pi1..pi7: pi1/pi2 and
pi3/pi4 are the E-orbit pairs that fuse into one H-orbit each, pi5
spans the orbit both groups agree on, pi7 is the subfield parallelism
and pi6 its pointwise group inverse.  Closing H over pi2, pi4..pi7 and
E over pi1..pi7 yields the twelve sporadic closures; together with the
four coset closures they are the sixteen isomorphism types.
"""

from functools import lru_cache
from typing import NamedTuple

from . import closure, grp, iso, para, unital
from .fingerprint import fingerprint, match_name
from .iso import enumerate_group

TAGS = ("H", "E")
LEONIDS = (
    "H.pi2", "H.pi4", "H.pi5", "H.pi6", "H.pi7",
    "E.pi1", "E.pi2", "E.pi3", "E.pi4", "E.pi5", "E.pi6", "E.pi7",
)
SIXTEEN = ("H.flat", "H.natural", "E.flat", "E.natural") + LEONIDS


class Landscape(NamedTuple):
    types: tuple  # the two affine unitals, aligned with TAGS
    auts: tuple  # their ambient automorphism element lists
    paras: tuple  # every parallelism, enumeration order
    orbits: tuple  # orbit index-partitions, aligned with TAGS
    named: dict  # name -> Parallelism


def _rep(orbit_members, paras):
    return paras[min(orbit_members)]


@lru_cache(maxsize=None)
def landscape():
    universe = grp.short_blocks(4)
    paras = tuple(para.enumerate_parallelisms(universe))
    types = unital.affine_types(4)
    assert len(types) == 2
    auts = tuple(unital.aut_affine(u) for u in types)
    assert len(auts[0]) > len(auts[1])  # H first
    orbits = tuple(
        tuple(map(tuple, para.orbit_partition(universe, paras, ars))) for ars in auts
    )
    where = {p: i for i, p in enumerate(paras)}
    named = {k: para.named_parallelism(4, k) for k in ("flat", "natural", "sq", "sq-inv")}
    in_h = {i: frozenset(o) for o in orbits[0] for i in o}
    by_size = {}
    for o in orbits[1]:
        by_size.setdefault(len(o), []).append(o)
    assert sorted(by_size) == [1, 5, 6, 20, 24, 60]
    named["pi1"] = _rep(by_size[24][0], paras)
    named["pi2"] = _rep(by_size[6][0], paras)
    named["pi3"] = _rep(by_size[20][0], paras)
    five_a, five_b = by_size[5]
    if len(in_h[five_a[0]]) != 25:
        five_a, five_b = five_b, five_a
    assert {len(in_h[five_a[0]]), len(in_h[five_b[0]])} == {25, 5}
    named["pi4"] = _rep(five_a, paras)
    named["pi5"] = _rep(five_b, paras)
    sixty_of = lambda p: next(o for o in by_size[60] if where[p] in o)
    named["pi6"] = _rep(sixty_of(named["sq-inv"]), paras)
    named["pi7"] = _rep(sixty_of(named["sq"]), paras)
    assert named["pi6"] != named["pi7"]
    # the pairs that made the names: 24+6 and 20+5 fuse under H
    assert in_h[where[named["pi1"]]] == in_h[where[named["pi2"]]]
    assert in_h[where[named["pi3"]]] == in_h[where[named["pi4"]]]
    assert len(in_h[where[named["pi5"]]]) == 5
    return Landscape(types, auts, paras, orbits, named)


def parse_label(label):
    tag, _, name = label.partition(".")
    if tag not in TAGS or not name:
        raise ValueError(f"unknown closure label {label!r}")
    return TAGS.index(tag), name


@lru_cache(maxsize=None)
def closure_of(label):
    land = landscape()
    ti, name = parse_label(label)
    return closure.close(land.types[ti], land.named[name])


@lru_cache(maxsize=None)
def closure_group(label):
    D = closure_of(label)
    return iso.automorphisms(D)


@lru_cache(maxsize=None)
def certificate(label):
    cert, _ = iso.canonical_form(closure_of(label))
    return cert


def closure_order(label):
    return closure_group(label)[1]


def group_profile(label):
    """(order, structure name) of a closure's automorphism group."""
    gens, order = closure_group(label)
    fp = fingerprint(enumerate_group(gens, closure_of(label).v))
    assert fp.order == order
    return order, match_name(fp)
