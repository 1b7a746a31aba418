"""The group SL(2,q) and its ambient permutation machinery.

Matrices are 4-tuples (a, b, c, d) of field codes, row major.  A
``GroupTable`` enumerates all of SL(2,q) once, sorted ascending by code
tuple, and afterwards everything is dense integer indices into that list.
Point sets (subgroups, cosets, blocks) travel as sorted index tuples plus
int bitmasks.

The ambient group acting on everything is Aut(SL(2,q)) extended by right
translations.  Its elements are ``AR`` triples: a projective GL(2,q)
matrix (conjugation), a Frobenius power (applied entrywise after the
conjugation) and an SL(2,q) right factor.  Composition is left to right:
``ar_apply(ar_compose(s, t), x) == ar_apply(t, ar_apply(s, x))``.
"""

from functools import lru_cache
from typing import NamedTuple

import numpy as np

from .gf import GF, NotSquareOrderError

GROUP_MAX = 100_000
AR_ENUM_MAX = 100_000


class GroupError(ValueError):
    pass


class GroupTooLargeError(GroupError):
    pass


class Subgroup(NamedTuple):
    members: tuple  # sorted point indices
    mask: int

    @property
    def order(self):
        return len(self.members)


def mask_of(idxs):
    m = 0
    for i in idxs:
        m |= 1 << i
    return m


class GroupTable:
    """SL(2,q) with dense indices and vectorized translation perms."""

    def __init__(self, F: GF):
        q = F.q
        n = (q - 1) * q * (q + 1)
        if n > GROUP_MAX:
            raise GroupTooLargeError(f"#SL(2,{q}) = {n} exceeds {GROUP_MAX}")
        self.field = F
        self.q = q
        elems = []
        for a in range(q):
            for b in range(q):
                for c in range(q):
                    for d in range(q):
                        if F.sub(F.mul(a, d), F.mul(b, c)) == 1:
                            elems.append((a, b, c, d))
        assert len(elems) == n
        self.elems = elems
        self.order = n
        self.index = {m: i for i, m in enumerate(elems)}
        self.one = self.index[(1, 0, 0, 1)]
        self.inv_list = [self.index[self.mat_inv(m)] for m in elems]
        self.minus_one = self.index[(F.neg(1), 0, 0, F.neg(1))]
        # numpy field tables for vectorized matrix work
        self._np_add = np.array([[F.add(a, b) for b in range(q)] for a in range(q)], np.int16)
        self._np_mul = np.array([[F.mul(a, b) for b in range(q)] for a in range(q)], np.int16)
        cols = np.array(elems, np.int64)
        self._A, self._B, self._C, self._D = (cols[:, j].copy() for j in range(4))
        self._lookup = np.full(q**4, -1, np.int32)
        self._lookup[((cols[:, 0] * q + cols[:, 1]) * q + cols[:, 2]) * q + cols[:, 3]] = np.arange(n)
        self._perm_cache = {}
        self._order_cache = {}

    # -- scalar matrix ops --

    def mat(self, i):
        return self.elems[i]

    def idx(self, m):
        return self.index[m]

    def mat_mul(self, m1, m2):
        F = self.field
        a1, b1, c1, d1 = m1
        a2, b2, c2, d2 = m2
        return (
            F.add(F.mul(a1, a2), F.mul(b1, c2)),
            F.add(F.mul(a1, b2), F.mul(b1, d2)),
            F.add(F.mul(c1, a2), F.mul(d1, c2)),
            F.add(F.mul(c1, b2), F.mul(d1, d2)),
        )

    def mat_det(self, m):
        F = self.field
        return F.sub(F.mul(m[0], m[3]), F.mul(m[1], m[2]))

    def mat_inv(self, m):
        """Inverse of a GL(2,q) matrix."""
        F = self.field
        det = self.mat_det(m)
        di = F.inv(det)
        return (F.mul(di, m[3]), F.mul(di, F.neg(m[1])), F.mul(di, F.neg(m[2])), F.mul(di, m[0]))

    def mat_frob(self, m, k):
        F = self.field
        return tuple(F.frobenius(x, k) for x in m)

    def mat_bar(self, m):
        F = self.field
        return tuple(F.bar(x) for x in m)

    def mul(self, i, j):
        return self.index[self.mat_mul(self.elems[i], self.elems[j])]

    def inv(self, i):
        return self.inv_list[i]

    def order_of(self, i):
        got = self._order_cache.get(i)
        if got is None:
            n, x = 1, i
            while x != self.one:
                x = self.mul(x, i)
                n += 1
            got = self._order_cache[i] = n
        return got

    # -- vectorized permutations of the point set --

    def _pack_lookup(self, a, b, c, d):
        q = self.q
        idx = self._lookup[((a.astype(np.int64) * q + b) * q + c) * q + d]
        assert (idx >= 0).all()
        return idx

    def _mul_all(self, m):
        """Entries of x @ m for every group element x at once."""
        add, mul = self._np_add, self._np_mul
        a2, b2, c2, d2 = m
        na = add[mul[self._A, a2], mul[self._B, c2]]
        nb = add[mul[self._A, b2], mul[self._B, d2]]
        nc = add[mul[self._C, a2], mul[self._D, c2]]
        nd = add[mul[self._C, b2], mul[self._D, d2]]
        return na, nb, nc, nd

    def _mul_all_left(self, m):
        """Entries of m @ x for every group element x at once."""
        add, mul = self._np_add, self._np_mul
        a1, b1, c1, d1 = m
        na = add[mul[self._A, a1], mul[self._C, b1]]
        nb = add[mul[self._B, a1], mul[self._D, b1]]
        nc = add[mul[self._A, c1], mul[self._C, d1]]
        nd = add[mul[self._B, c1], mul[self._D, d1]]
        return na, nb, nc, nd

    def rmul_perm(self, h):
        """perm[x] = x * h as a numpy index array."""
        key = ("r", h)
        got = self._perm_cache.get(key)
        if got is None:
            got = self._perm_cache[key] = self._pack_lookup(*self._mul_all(self.elems[h]))
            got.setflags(write=False)
        return got

    def lmul_perm(self, h):
        key = ("l", h)
        got = self._perm_cache.get(key)
        if got is None:
            got = self._perm_cache[key] = self._pack_lookup(*self._mul_all_left(self.elems[h]))
            got.setflags(write=False)
        return got

    def conj_perm_gl(self, m):
        """perm[x] = m^-1 x m for a GL(2,q) matrix m."""
        key = ("c", m)
        got = self._perm_cache.get(key)
        if got is None:
            mi = self.mat_inv(m)
            add, mul = self._np_add, self._np_mul
            a1, b1, c1, d1 = mi
            ta = add[mul[self._A, a1], mul[self._C, b1]]
            tb = add[mul[self._B, a1], mul[self._D, b1]]
            tc = add[mul[self._A, c1], mul[self._C, d1]]
            td = add[mul[self._B, c1], mul[self._D, d1]]
            a2, b2, c2, d2 = m
            na = add[mul[ta, a2], mul[tb, c2]]
            nb = add[mul[ta, b2], mul[tb, d2]]
            nc = add[mul[tc, a2], mul[td, c2]]
            nd = add[mul[tc, b2], mul[td, d2]]
            got = self._perm_cache[key] = self._pack_lookup(na, nb, nc, nd)
            got.setflags(write=False)
        return got

    def frob_perm(self, k):
        key = ("f", k % self.field.e)
        got = self._perm_cache.get(key)
        if got is None:
            F = self.field
            tab = np.array([F.frobenius(x, k) for x in range(self.q)], np.int16)
            got = self._perm_cache[key] = self._pack_lookup(
                tab[self._A], tab[self._B], tab[self._C], tab[self._D]
            )
            got.setflags(write=False)
        return got

    def __repr__(self):
        return f"SL(2,{self.q})"


@lru_cache(maxsize=None)
def sl2(q):
    from .gf import field_of_order

    return GroupTable(field_of_order(q))


def mulclose(G, gens):
    """Subgroup generated by the given indices, as a sorted tuple."""
    seen = set(gens) | {G.one}
    frontier = list(seen)
    while frontier:
        nxt = []
        for g in gens:
            for x in frontier:
                y = G.mul(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return tuple(sorted(seen))


def subgroup_from(G, idxs):
    members = tuple(sorted(idxs))
    return Subgroup(members, mask_of(members))


def sl_generators(G):
    """A small generating set: elementary upper transvections plus the
    standard Weyl element.  Verified by closure in the test suite."""
    F = G.field
    gens = []
    for j in range(F.e):
        lam = F.pow(F.generator, j) if F.q > 2 else 1
        gens.append(G.index[(1, lam, 0, 1)])
    w = G.index[(0, 1, F.neg(1), 0)]
    gens.append(w)
    return gens


def sylow_p_subgroups(G):
    """All q+1 Sylow p-subgroups; the upper unitriangular one comes first,
    the rest are sorted by member tuple."""
    q = G.q
    t0 = subgroup_from(G, (G.index[(1, b, 0, 1)] for b in range(q)))
    seen = {t0.members: t0}
    for g in range(G.order):
        m = G.mat(g)
        conj = {G.index[self_conj(G, x, m)] for x in t0.members}
        sub = tuple(sorted(conj))
        if sub not in seen:
            seen[sub] = Subgroup(sub, mask_of(sub))
    subs = [t0] + sorted((s for k, s in seen.items() if k != t0.members), key=lambda s: s.members)
    assert len(subs) == q + 1
    return subs


def self_conj(G, x, m):
    return G.mat_mul(G.mat_inv(m), G.mat_mul(G.mat(x), m))


def conj_subgroup(G, sub, g):
    m = G.mat(g)
    return subgroup_from(G, (G.index[self_conj(G, x, m)] for x in sub.members))


def cyclic_subgroup_of_order(G, n):
    """Powers of the first element (in enumeration order) of order n."""
    for i in range(G.order):
        if G.order_of(i) == n:
            powers = [G.one]
            x = i
            while x != G.one:
                powers.append(x)
                x = G.mul(x, i)
            return subgroup_from(G, powers)
    raise GroupError(f"no element of order {n} in {G!r}")


def normalizer_sl(G, sub):
    out = []
    member_set = set(sub.members)
    for g in range(G.order):
        m = G.mat(g)
        if all(G.index[self_conj(G, x, m)] in member_set for x in sub.members):
            out.append(g)
    return subgroup_from(G, out)


# -- short blocks: the cosets of the Sylow p-subgroups --


class BlockUniverse:
    """Every right coset Tg of every Sylow p-subgroup T, indexed canonically.

    Each such block is simultaneously a left coset g(g^-1 T g); ``right_of``
    and ``left_of`` record the two Sylow subgroups involved.
    """

    def __init__(self, G):
        self.group = G
        sylows = sylow_p_subgroups(G)
        self.sylows = sylows
        sylow_ids = {s.members: i for i, s in enumerate(sylows)}
        blocks = set()
        for si, s in enumerate(sylows):
            member_arr = np.array(s.members)
            for g in range(G.order):
                perm = G.rmul_perm(g)
                blocks.add(tuple(sorted(perm[member_arr].tolist())))
        self.blocks = sorted(blocks)
        assert len(self.blocks) == (G.q + 1) * (G.q**2 - 1)
        self.index = {b: i for i, b in enumerate(self.blocks)}
        self.masks = [mask_of(b) for b in self.blocks]
        right_of = []
        left_of = []
        for b in self.blocks:
            x_inv = G.inv(b[0])
            right_of.append(sylow_ids[tuple(sorted(G.mul(p, x_inv) for p in b))])
            left_of.append(sylow_ids[tuple(sorted(G.mul(x_inv, p) for p in b))])
        self.right_of = right_of
        self.left_of = left_of
        self.sylow_block_ids = [self.index[s.members] for s in sylows]
        by_point = [[] for _ in range(G.order)]
        for bi, b in enumerate(self.blocks):
            for p in b:
                by_point[p].append(bi)
        self.by_point = by_point
        self._block_arr = np.array(self.blocks)  # all blocks have q points
        self._bperm_cache = {}

    def block_image(self, point_perm, bi):
        return tuple(sorted(point_perm[p] for p in self.blocks[bi]))

    def block_perm_from_points(self, point_perm):
        """Induced permutation of block ids, given a point permutation that
        maps blocks to blocks."""
        imgs = np.sort(np.asarray(point_perm)[self._block_arr], axis=1)
        out = np.fromiter(
            (self.index[t] for t in map(tuple, imgs.tolist())), np.int32, len(self.blocks)
        )
        return out


@lru_cache(maxsize=None)
def short_blocks(q):
    return BlockUniverse(sl2(q))


# -- the ambient group: Aut(SL(2,q)) plus right translations --


class AR(NamedTuple):
    mat: tuple  # projective GL(2,q) part, first nonzero entry is 1
    frob: int
    rmul: tuple  # SL(2,q) matrix

    def is_identity(self):
        return self.frob == 0 and self.mat == (1, 0, 0, 1) and self.rmul == (1, 0, 0, 1)


def normalize_proj(F, m):
    for x in m:
        if x:
            s = F.inv(x)
            return tuple(F.mul(s, y) for y in m)
    raise GroupError("zero matrix has no projective class")


def ar_identity(G):
    one = (1, 0, 0, 1)
    return AR(one, 0, one)


def gamma(G, m):
    """Conjugation x -> m^-1 x m as an ambient element."""
    if G.mat_det(m) == 0:
        raise GroupError("conjugating matrix must be invertible")
    return AR(normalize_proj(G.field, m), 0, (1, 0, 0, 1))


def phi(G, k=1):
    return AR((1, 0, 0, 1), k % G.field.e, (1, 0, 0, 1))


def rho(G, h):
    """Right translation x -> x*h."""
    return AR((1, 0, 0, 1), 0, G.mat(h) if isinstance(h, int) else h)


def theta(G, h):
    """x -> h^-1 x bar(h); only over fields of square order."""
    if G.field.e % 2:
        raise NotSquareOrderError("theta needs an index-2 subfield")
    hm = G.mat(h) if isinstance(h, int) else h
    r = G.mat_mul(G.mat_inv(hm), G.mat_bar(hm))
    return AR(normalize_proj(G.field, hm), 0, r)


def ar_apply(G, t, x):
    m = G.mat(x) if isinstance(x, int) else x
    y = G.mat_mul(G.mat_inv(t.mat), G.mat_mul(m, t.mat))
    y = G.mat_frob(y, t.frob)
    y = G.mat_mul(y, t.rmul)
    return G.index[y] if isinstance(x, int) else y


def ar_point_perm(G, t):
    perm = G.conj_perm_gl(t.mat)
    if t.frob:
        perm = G.frob_perm(t.frob)[perm]
    return G.rmul_perm(G.index[t.rmul])[perm]


def ar_compose(G, s, t):
    """First s, then t."""
    F = G.field
    e = F.e
    m = G.mat_mul(s.mat, G.mat_frob(t.mat, (-s.frob) % e if s.frob else 0))
    frob = (s.frob + t.frob) % e
    h = G.mat_mul(G.mat_inv(t.mat), G.mat_mul(s.rmul, t.mat))
    h = G.mat_mul(G.mat_frob(h, t.frob), t.rmul)
    return AR(normalize_proj(F, m), frob, h)


def ar_inverse(G, t):
    F = G.field
    e = F.e
    m = G.mat_frob(G.mat_inv(t.mat), t.frob)
    frob = (-t.frob) % e
    mi = G.mat_inv(m)
    h = G.mat_frob(G.mat_mul(mi, G.mat_mul(t.rmul, m)), frob)
    return AR(normalize_proj(F, m), frob, G.mat_inv(h))


def pgl_classes(G):
    """All projective classes of GL(2,q), as normalized matrices."""
    q = G.q
    F = G.field
    out = set()
    for a in range(q):
        for b in range(q):
            for c in range(q):
                for d in range(q):
                    m = (a, b, c, d)
                    if G.mat_det(m) != 0:
                        out.add(normalize_proj(F, m))
    classes = sorted(out)
    assert len(classes) == q**3 - q
    return classes


def ar_order(G):
    return (G.q**3 - G.q) * G.field.e * G.order


@lru_cache(maxsize=None)
def ar_enumerate(q):
    """Every ambient element, for small q."""
    G = sl2(q)
    total = ar_order(G)
    if total > AR_ENUM_MAX:
        raise GroupTooLargeError(f"ambient group of size {total} exceeds {AR_ENUM_MAX}")
    out = []
    for m in pgl_classes(G):
        for k in range(G.field.e):
            for h in G.elems:
                out.append(AR(m, k, h))
    return out


def ar_generators(G):
    """Generators of the full ambient group."""
    F = G.field
    gens = [gamma(G, G.mat(g)) for g in sl_generators(G)]
    if F.q > 2:
        gens.append(gamma(G, (F.generator, 0, 0, 1)))
    if F.e > 1:
        gens.append(phi(G))
    gens.extend(rho(G, g) for g in sl_generators(G))
    return gens
