"""Design isomorphism and automorphisms via partition refinement plus
individualization backtracking.

The incidence structure is treated as a graph on point vertices and
block vertices with two relations, both isomorphism-invariant:
point-block incidence and block-block disjointness.  Pure incidence
signatures stall on designs with one block per point pair: every
pairwise and triple count is forced by the axioms (75 blocks meet a
given block, 81 avoid a disjoint pair, and so on), refinement leaves
huge cells and the search tree is astronomic.  The statistics that
actually vary first appear at the quadruple level, so the initial
coloring is seeded with the number of pairwise-disjoint block triples
over each block (4-cliques of the disjointness graph, a partial-spread
count).  That splits the blocks of the closures with small groups into
a dozen classes before any individualization.

Refinement iterates neighborhood color signatures to a stable
coloring; the search individualizes points of the first smallest
non-singleton point cell, prunes sibling branches with the
automorphisms discovered so far, and discards whole subtrees whose
cell-size invariant sequence falls outside the reference path
(automorphic leaves share the sequence, so generators survive).  The
least certificate among reference-path leaves is the canonical form.
Group orders come from a stabilizer chain over the discovered
generators.

Certificates depend only on the isomorphism type (plus any color tags
supplied), so equality of certificates decides isomorphism and the two
canonical labelings compose to an explicit bijection.
"""

import numpy as np

from .grp import GroupTooLargeError

MAX_POINTS = 130  # generous cap; the engine promises nothing beyond v = 100
_PAD = 32767  # sorts after every real color
_DISJ = 4096  # color offset separating the two relations in signatures


def _pad_rows(rows, n):
    width = max(map(len, rows)) if rows else 1
    A = np.full((n, max(width, 1)), -1, np.int16)
    for x, row in enumerate(rows):
        A[x, : len(row)] = row
    return A


def _neighbor_matrix(v, blocks):
    """Padded adjacency, one row per vertex: incidence for all vertices,
    plus the disjoint-block lists for block vertices."""
    n = v + len(blocks)
    inc = [[] for _ in range(n)]
    for bi, b in enumerate(blocks):
        bv = v + bi
        for p in b:
            inc[p].append(bv)
            inc[bv].append(p)
    I = np.zeros((len(blocks), v), np.uint8)
    for bi, b in enumerate(blocks):
        I[bi, list(b)] = 1
    meets = I @ I.T
    dis = [[] for _ in range(v)]
    for bi, row in enumerate(meets == 0):
        dis.append((np.nonzero(row)[0] + v).tolist())
    return _pad_rows(inc, n), _pad_rows(dis, n)


def quad_counts(v, blocks):
    """Per block, the number of unordered triples of further blocks that
    are pairwise disjoint from it and from each other."""
    I = np.zeros((len(blocks), v), np.uint8)
    for bi, b in enumerate(blocks):
        I[bi, list(b)] = 1
    Dj = ((I @ I.T.astype(np.int16)) == 0).astype(np.float64)
    out = []
    for L in range(len(blocks)):
        idx = np.nonzero(Dj[L])[0]
        S = Dj[np.ix_(idx, idx)]
        out.append(round(np.trace(S @ S @ S) / 6))
    return out


def initial_coloring(v, blocks, point_tags=None, block_tags=None, quads=None):
    """Start colors: points before blocks, blocks split by size and the
    quadruple invariant, both sides refined by the optional integer tags
    (tagged vertices separate)."""
    point_tags = point_tags or {}
    block_tags = block_tags or {}
    if quads is None:
        quads = quad_counts(v, blocks)
    keys = [(0, point_tags.get(p, -1)) for p in range(v)]
    keys += [
        (1, len(b), quads[bi], block_tags.get(bi, -1)) for bi, b in enumerate(blocks)
    ]
    ids = {k: i for i, k in enumerate(sorted(set(keys)))}
    return [ids[k] for k in keys]


def _refine_np(A, colors):
    """Stable equitable coloring; ids follow the lexicographic order of
    the (color, sorted signature) rows, so the result is invariant
    under relabeling."""
    inc, dis = A
    colors = np.asarray(colors, np.int16)
    pad_i, pad_d = inc < 0, dis < 0
    ncol = int(colors.max()) + 1
    while True:
        Ci = colors[inc]
        Ci[pad_i] = _PAD
        Ci.sort(axis=1)
        Cd = colors[dis] + _DISJ
        Cd[pad_d] = _PAD
        Cd.sort(axis=1)
        K = np.column_stack([colors, Ci, Cd])
        _, new = np.unique(K, axis=0, return_inverse=True)
        new = new.astype(np.int16)
        grown = int(new.max()) + 1
        if grown == ncol:
            return new
        colors, ncol = new, grown


def refine(v, blocks, colors, nbrs=None):
    """Public wrapper returning a plain list."""
    A = nbrs if nbrs is not None else _neighbor_matrix(v, blocks)
    return _refine_np(A, colors).tolist()


def _target_cell(colors_pts):
    """First smallest non-singleton point cell, as an array of points."""
    counts = np.bincount(colors_pts)
    open_cols = np.nonzero(counts > 1)[0]
    if not len(open_cols):
        return None
    col = open_cols[np.argmin(counts[open_cols])]
    return np.nonzero(colors_pts == col)[0]


class _Search:
    def __init__(self, v, blocks, colors):
        self.v = v
        self.blocks = blocks
        self.A = _neighbor_matrix(v, blocks)
        sizes = sorted({len(b) for b in blocks})
        self.size_groups = [
            np.array([b for b in blocks if len(b) == s], np.int16) for s in sizes
        ]
        self.ref = []  # invariant sequence of the reference path
        self.first_cert = None
        self.first_inv = None
        self.best_cert = None
        self.best_perm = None
        self.gens = []
        self._genset = set()
        self._idperm = tuple(range(v))
        self.prefix = []
        self.explore(np.asarray(colors, np.int16), 0)

    def _invariant(self, colors):
        counts = np.bincount(colors)
        return len(counts).to_bytes(2, "big") + counts.astype(np.int16).tobytes()

    def _cert(self, pos):
        parts = []
        for arr in self.size_groups:
            M = np.sort(pos[arr], axis=1)
            order = np.lexsort(M.T[::-1])
            parts.append(M[order].tobytes())
        return tuple(parts)

    def leaf(self, colors):
        v = self.v
        pos = np.empty(v, np.int16)
        pos[np.argsort(colors[:v], kind="stable")] = np.arange(v, dtype=np.int16)
        cert = self._cert(pos)
        if self.first_cert is None:
            self.first_cert = cert
            inv = np.empty(v, np.int16)
            inv[pos] = np.arange(v, dtype=np.int16)
            self.first_inv = inv
            self.best_cert, self.best_perm = cert, tuple(pos.tolist())
            return
        if cert == self.first_cert:
            g = tuple(self.first_inv[pos].tolist())
            if g != self._idperm and g not in self._genset:
                self.gens.append(g)
                self._genset.add(g)
        if cert < self.best_cert:
            self.best_cert, self.best_perm = cert, tuple(pos.tolist())

    def explore(self, colors, depth):
        colors = _refine_np(self.A, colors)
        inv = self._invariant(colors)
        if depth < len(self.ref):
            r = self.ref[depth]
            if inv < r:
                return
            if inv > r:
                # better reference path: restart certificates, keep gens
                del self.ref[depth:]
                self.ref.append(inv)
                self.first_cert = None
                self.first_inv = None
                self.best_cert = None
                self.best_perm = None
        else:
            self.ref.append(inv)
        cell = _target_cell(colors[: self.v])
        if cell is None:
            self.leaf(colors)
            return
        fresh = np.int16(int(colors.max()) + 1)
        tried = []
        for x in cell.tolist():
            if tried and self._in_orbit_of(x, tried):
                continue
            tried.append(x)
            split = colors.copy()
            split[x] = fresh
            self.prefix.append(x)
            self.explore(split, depth + 1)
            self.prefix.pop()

    def _in_orbit_of(self, x, seeds):
        prefix = self.prefix
        usable = [g for g in self.gens if all(g[p] == p for p in prefix)]
        if not usable:
            return False
        orb = set(seeds)
        frontier = list(seeds)
        while frontier:
            z = frontier.pop()
            for g in usable:
                y = g[z]
                if y not in orb:
                    if y == x:
                        return True
                    orb.add(y)
                    frontier.append(y)
        return False


def _checked(D):
    if D.v > MAX_POINTS:
        raise GroupTooLargeError(f"{D.v} points is beyond this engine")
    return D.v, D.blocks


def canonical_form(D, point_tags=None, block_tags=None):
    """(certificate, labeling): the labeling sends original point indices
    to canonical positions and maps the block set onto the certificate."""
    v, blocks = _checked(D)
    s = _Search(v, blocks, initial_coloring(v, blocks, point_tags, block_tags))
    return s.best_cert, s.best_perm


def automorphisms(D, point_tags=None, block_tags=None):
    """(generators, group order) of the color-preserving automorphisms."""
    v, blocks = _checked(D)
    s = _Search(v, blocks, initial_coloring(v, blocks, point_tags, block_tags))
    return s.gens, group_order(s.gens, v)


def isomorphic(D1, D2, tags1=None, tags2=None):
    """(answer, point bijection D1 -> D2 or None); the bijection is
    verified to map the block set onto the block set."""
    tags1 = tags1 or {}
    tags2 = tags2 or {}
    if D1.v != D2.v or sorted(map(len, D1.blocks)) != sorted(map(len, D2.blocks)):
        return False, None
    c1, l1 = canonical_form(D1, **tags1)
    c2, l2 = canonical_form(D2, **tags2)
    if c1 != c2:
        return False, None
    inv2 = [0] * D2.v
    for p in range(D2.v):
        inv2[l2[p]] = p
    m = tuple(inv2[l1[p]] for p in range(D1.v))
    mapped = {tuple(sorted(m[p] for p in b)) for b in D1.blocks}
    assert mapped == set(D2.blocks)
    return True, m


def block_stabilizer_check(D, block_index):
    """Does every automorphism fix the given block setwise?"""
    gens, _ = automorphisms(D)
    target = set(D.blocks[block_index])
    return all({g[p] for p in target} == target for g in gens)


# -- permutation group utilities over tuple perms --


def _compose(a, b):
    """Apply a, then b."""
    return tuple(b[x] for x in a)


def _inverse(a):
    out = [0] * len(a)
    for i, x in enumerate(a):
        out[x] = i
    return tuple(out)


def group_order(gens, degree):
    """Order of the permutation group, by a stabilizer chain.

    Base points are chosen greedily; the strong set grows by sifted
    Schreier generators, restarting the verification pass after each
    addition, until every level's Schreier generators sift to identity.
    """
    ident = tuple(range(degree))
    strong = []
    for g in gens:
        g = tuple(g)
        if g != ident and g not in strong:
            strong.append(g)
    if not strong:
        return 1
    base = []

    def extend_base(g):
        # every strong generator must move some base point
        for b in base:
            if g[b] != b:
                return
        base.append(next(p for p in range(degree) if g[p] != p))

    def build_levels():
        for g in strong:
            extend_base(g)
        levels = []
        for i, b in enumerate(base):
            lgens = [g for g in strong if all(g[x] == x for x in base[:i])]
            T = {b: ident}
            frontier = [b]
            while frontier:
                nxt = []
                for x in frontier:
                    for g in lgens:
                        y = g[x]
                        if y not in T:
                            T[y] = _compose(T[x], g)
                            nxt.append(y)
                frontier = nxt
            levels.append({"b": b, "gens": lgens, "T": T})
        return levels

    def sift(g, levels, start):
        for lv in levels[start:]:
            y = g[lv["b"]]
            if y not in lv["T"]:
                return g
            g = _compose(g, _inverse(lv["T"][y]))
        return None if g == ident else g

    while True:
        levels = build_levels()
        residue = None
        for i, lv in enumerate(levels):
            for x, t in lv["T"].items():
                for g in lv["gens"]:
                    rep = lv["T"][g[x]]
                    schreier = _compose(_compose(t, g), _inverse(rep))
                    if schreier == ident:
                        continue
                    residue = sift(schreier, levels, i + 1)
                    if residue is not None:
                        break
                if residue is not None:
                    break
            if residue is not None:
                break
        if residue is None:
            order = 1
            for lv in levels:
                order *= len(lv["T"])
            return order
        strong.append(residue)


def enumerate_group(gens, degree, limit=200000):
    """All elements, for small groups (fingerprints, translation reports)."""
    ident = tuple(range(degree))
    gens = [tuple(g) for g in gens]
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                c = _compose(a, g)
                if c not in seen:
                    if len(seen) >= limit:
                        raise GroupTooLargeError(f"more than {limit} elements")
                    seen.add(c)
                    nxt.append(c)
        frontier = nxt
    return sorted(seen)
