"""Structure fingerprints for small permutation groups.

A fingerprint is (order, abelian flag, exponent, element-order
multiset, center order, derived-subgroup order).  That combination
separates every pair of group names appearing in this package, so
fingerprint equality against concretely constructed reference groups
stands in for isomorphism-type names; match_name returns the name or
None for an unrecognized group.
"""

from functools import lru_cache
from math import lcm
from typing import NamedTuple

from .iso import _compose, _inverse, enumerate_group


class Fingerprint(NamedTuple):
    order: int
    abelian: bool
    exponent: int
    element_orders: tuple
    center: int
    derived: int


def element_order(g):
    n = len(g)
    seen = [False] * n
    orders = []
    for s in range(n):
        if not seen[s]:
            length = 0
            x = s
            while not seen[x]:
                seen[x] = True
                x = g[x]
                length += 1
            orders.append(length)
    return lcm(*orders)


def fingerprint(elements):
    """Fingerprint of a group given as a closed list of permutations."""
    elements = [tuple(g) for g in elements]
    ident = tuple(range(len(elements[0])))
    assert ident in elements
    orders = tuple(sorted(element_order(g) for g in elements))
    center = 0
    commutators = set()
    for g in elements:
        central = True
        for h in elements:
            gh = _compose(g, h)
            hg = _compose(h, g)
            if gh != hg:
                central = False
                commutators.add(_compose(gh, _inverse(hg)))
        center += central
    derived = enumerate_group(sorted(commutators), len(ident)) if commutators else [ident]
    return Fingerprint(
        order=len(elements),
        abelian=not commutators,
        exponent=lcm(*orders),
        element_orders=orders,
        center=center,
        derived=len(derived),
    )


# -- reference constructions --


def _cycle(points, degree):
    g = list(range(degree))
    for a, b in zip(points, points[1:] + points[:1]):
        g[a] = b
    return tuple(g)


def cyclic(n):
    return [_cycle(list(range(n)), n)]


def dihedral(n):
    rot = _cycle(list(range(n)), n)
    flip = tuple((n - x) % n for x in range(n))
    return [rot, flip]


def _shift(gens, by, degree):
    """Re-embed generators on points shifted by an offset, identity elsewhere."""
    out = []
    for g in gens:
        h = list(range(degree))
        for x, y in enumerate(g):
            h[x + by] = y + by
        out.append(tuple(h))
    return out


def semidirect_c5_c4(k):
    """C5 : C4 on 5 points plus a free 4-cycle tail: x+1 and x -> k*x."""
    rot = _cycle(list(range(5)), 9)
    mul = tuple([(k * x) % 5 for x in range(5)] + [6, 7, 8, 5])
    return [rot, mul]


_A4_GENS = [(1, 0, 3, 2), (2, 3, 0, 1), (1, 2, 0, 3)]
_S4_GENS = [(1, 0, 2, 3), (1, 2, 3, 0)]


def c4_acting_on_d5():
    """C4 x->2x twists D5; the tail keeps the extension from collapsing."""
    base = _shift(dihedral(5), 0, 9)
    twist = tuple([(2 * x) % 5 for x in range(5)] + [6, 7, 8, 5])
    return base + [twist]


def c4_acting_on_a4():
    """C4 conjugating A4 as the 4-cycle (0 1 2 3) does inside S4."""
    base = _shift(_A4_GENS, 0, 8)
    twist = tuple([1, 2, 3, 0] + [5, 6, 7, 4])
    return base + [twist]


def c4_acting_on_a4xc5():
    base = _shift(_A4_GENS, 0, 9) + _shift(cyclic(5), 4, 9)
    twist = tuple([1, 2, 3, 0] + [(2 * (x - 4)) % 5 + 4 for x in range(4, 9)])
    return base + [twist]


def a5_times_c2():
    evens = [(1, 2, 3, 4, 0), (1, 2, 0, 3, 4)]
    return _shift(evens, 0, 7) + _shift(cyclic(2), 5, 7)


_REFERENCES = {
    "C2": cyclic(2),
    "C3": cyclic(3),
    "C4": cyclic(4),
    "C5": cyclic(5),
    "C2xC2": _shift(cyclic(2), 0, 4) + _shift(cyclic(2), 2, 4),
    "D5": dihedral(5),
    "A4": _A4_GENS,
    "S4": _S4_GENS,
    "C5:C4": semidirect_c5_c4(2),
    "C4:D5": c4_acting_on_d5(),
    "C4:A4": c4_acting_on_a4(),
    "C4:(A4xC5)": c4_acting_on_a4xc5(),
    "A5xC2": a5_times_c2(),
}


@lru_cache(maxsize=None)
def reference_fingerprints():
    table = {}
    for name, gens in _REFERENCES.items():
        fp = fingerprint(enumerate_group(gens, len(gens[0])))
        assert fp not in table.values(), f"references collide: {name}"
        table[name] = fp
    return table


def match_name(fp):
    for name, ref in reference_fingerprints().items():
        if ref == fp:
            return name
    return None
