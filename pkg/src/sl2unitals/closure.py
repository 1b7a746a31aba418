"""Completing an affine unital to a unital: one new point per parallel
class, plus one block collecting the new points.

Points of the completed design keep their affine indices; the q+1 new
points get indices q^3-q .. q^3, assigned in canonical Sylow order via
the subgroup block contained in each parallel class.  The new block is
always last in the canonical block list.  ``hermitian_unital`` builds
the classical unital directly from a Hermitian curve, as an independent
reference object.
"""

from functools import lru_cache
from itertools import product

import numpy as np

from . import gf, grp, para
from .para import ParallelismError


class Design:
    """A finite linear space given by its blocks; here always a unital,
    i.e. a 2-(n^3+1, n+1, 1) design for some order n."""

    __slots__ = ("v", "blocks", "labels", "infinity")

    def __init__(self, v, blocks, labels=None, infinity=None):
        self.v = v
        self.blocks = tuple(sorted(tuple(sorted(b)) for b in blocks))
        self.labels = dict(labels or {})
        self.infinity = infinity

    def __eq__(self, other):
        return (
            isinstance(other, Design)
            and (self.v, self.blocks) == (other.v, other.blocks)
        )

    def __hash__(self):
        return hash((self.v, self.blocks))

    def __repr__(self):
        return f"Design(v={self.v}, b={len(self.blocks)})"


def close(U, pi):
    """Complete the affine unital along a parallelism."""
    shorts = U.shorts
    ok, problems = para.verify_parallelism(shorts, pi)
    if not ok:
        raise ParallelismError(f"not a parallelism: {problems[0]}")
    G = U.group
    q = G.q
    n = G.order
    sylow_ids = set(shorts.sylow_block_ids)
    labels = {}
    blocks = [b for b in U.blocks if len(b) == q + 1]
    for cls in pi:
        own = [bi for bi in cls if bi in sylow_ids]
        assert len(own) == 1  # the class member through the identity
        s = shorts.right_of[own[0]]
        new_pt = n + s
        labels[new_pt] = s
        blocks.extend(shorts.blocks[bi] + (new_pt,) for bi in cls)
    blocks.append(tuple(range(n, n + q + 1)))
    D = Design(n + q + 1, blocks, labels)
    D.infinity = len(D.blocks) - 1
    assert D.blocks[D.infinity] == tuple(range(n, n + q + 1))
    return D


def verify_design(D, n):
    """Check the 2-(n^3+1, n+1, 1) axioms outright; returns (ok, problems)
    where problems name the first few violations."""
    problems = []
    if D.v != n**3 + 1:
        problems.append(f"point count {D.v}, expected {n**3 + 1}")
    if len(D.blocks) != n**2 * (n**2 - n + 1):
        problems.append(f"block count {len(D.blocks)}, expected {n**2 * (n**2 - n + 1)}")
    for b in D.blocks:
        if len(b) != n + 1:
            problems.append(f"block size {len(b)}: {b}")
            break
        if not (0 <= b[0] and b[-1] < D.v):
            problems.append(f"point index out of range in {b}")
            break
    if problems:
        return False, problems
    v = D.v
    cover = bytearray(v * v)
    for b in D.blocks:
        for i, x in enumerate(b):
            for y in b[i + 1 :]:
                k = x * v + y
                if cover[k]:
                    problems.append(f"pair ({x}, {y}) on two blocks")
                    if len(problems) >= 5:
                        return False, problems
                cover[k] = 1
    if not problems:
        for x in range(v):
            for y in range(x + 1, v):
                if not cover[x * v + y]:
                    problems.append(f"pair ({x}, {y}) on no block")
                    if len(problems) >= 5:
                        return False, problems
    return not problems, problems


@lru_cache(maxsize=None)
def hermitian_unital(n):
    """The classical unital of order n: absolute points of the standard
    unitary polarity of PG(2, n^2), blocks cut out by secant lines."""
    F = gf.field_of_order(n * n)
    norm_exp = n + 1  # x * bar(x) = x^(n+1)

    def hermitian_value(p):
        out = 0
        for x in p:
            out = F.add(out, F.pow(x, norm_exp))
        return out

    # projective triples, first nonzero coordinate 1
    triples = [(0, 0, 1)]
    triples += [(0, 1, z) for z in range(F.q)]
    triples += [(1, y, z) for y in range(F.q) for z in range(F.q)]
    points = [p for p in triples if not hermitian_value(p)]
    assert len(points) == n**3 + 1
    index = {p: i for i, p in enumerate(points)}
    blocks = set()
    for a in triples:
        on_line = [
            index[p]
            for p in points
            if not F.add(F.mul(a[0], p[0]), F.add(F.mul(a[1], p[1]), F.mul(a[2], p[2])))
        ]
        if len(on_line) == n + 1:
            blocks.add(tuple(sorted(on_line)))
        else:
            assert len(on_line) == 1  # tangent line at an absolute point
    return Design(n**3 + 1, blocks)


def closure_block_arrays(D):
    """(point array form of the blocks, [infinity] index) for numpy work."""
    return np.array(D.blocks), D.infinity
