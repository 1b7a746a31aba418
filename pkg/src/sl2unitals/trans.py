"""Translations of closed unitals.

A translation with center c is an automorphism fixing c and every
block through c.  Two independent routes compute them: an algebraic
filter inside the ambient affine group (centers at infinity only),
and a tagged run of the generic automorphism engine on the closed
design (any center).  Their agreement is the main cross-check; the
groups involved are tiny and easy to get subtly wrong.
"""

from typing import NamedTuple

import numpy as np

from . import grp, iso, para, unital
from .fingerprint import Fingerprint, fingerprint


class TranslationReport(NamedTuple):
    center: int
    group: tuple  # ambient elements (infinite centers) or point perms
    order: int
    fingerprint: Fingerprint
    is_translation_center: bool


def fixing_set(G, pi, blocks, ars=None):
    """Ambient elements fixing each listed short block individually.

    ``blocks`` may be an iterable of block ids, or a single Sylow index,
    which selects the parallel class of ``pi`` through that subgroup.
    Defaults to filtering the whole ambient group.
    """
    universe = grp.short_blocks(G.q)
    if isinstance(blocks, int):
        own = universe.sylow_block_ids[blocks]
        blocks = next(c for c in pi.classes if own in c)
    ids = np.fromiter(blocks, np.int64)
    if ars is None:
        ars = grp.ar_enumerate(G.q)
    semi, trans = para._split_bperms(universe, ars)
    out = []
    for t in ars:
        bp = trans[t.rmul][semi[(t.mat, t.frob)]]
        if (bp[ids] == ids).all():
            out.append(t)
    return out


def left_multiplications(G, members):
    """x -> t*x for each t in the list, as ambient elements."""
    out = []
    for t in members:
        tm = G.mat(t) if isinstance(t, int) else t
        out.append(grp.ar_compose(G, grp.gamma(G, G.mat_inv(tm)), grp.rho(G, tm)))
    return out


def translations_at_infinity(U, pi, sylow_id, auts=None):
    """Translations of the closure along pi centered at the infinite
    point attached to the given Sylow subgroup.

    Works inside the ambient affine group: any translation with an
    infinite center fixes the late block, so it restricts to the affine
    part, and for q >= 3 every affine automorphism is ambient.
    """
    G = U.group
    q = G.q
    if auts is None:
        auts = unital.aut_affine(U)
    stab = para.stabilizer(U.shorts, pi, auts)
    taus = fixing_set(G, pi, sylow_id, ars=stab)
    perms = [grp.ar_point_perm(G, t) for t in taus]
    affine = np.arange(G.order)
    for t, perm in zip(taus, perms):
        if not t.is_identity():
            assert not (perm == affine).any(), "translation fixes an affine point"
    assert len(taus) <= q
    fp = fingerprint([tuple(p) for p in perms])
    return TranslationReport(G.order + sylow_id, tuple(taus), len(taus), fp, len(taus) == q)


def blocks_through(D, p):
    return [bi for bi, b in enumerate(D.blocks) if p in b]


def translation_group(D, c):
    """All automorphisms of a design fixing the point c and each block
    through c setwise, via a search with those blocks pinned by tags."""
    btags = {bi: i + 2 for i, bi in enumerate(blocks_through(D, c))}
    gens, order = iso.automorphisms(D, point_tags={c: 1}, block_tags=btags)
    els = iso.enumerate_group(gens, D.v)
    assert len(els) == order
    return els


def all_translations(D):
    """Translation reports for every point of a closed design that
    admits a nontrivial one."""
    if D.v > 100:
        raise grp.GroupTooLargeError(f"{D.v} points is beyond the per-point sweep")
    sizes = {len(b) for b in D.blocks}
    assert len(sizes) == 1  # linear-space sweep assumes a 2-design
    q = sizes.pop() - 1
    reports = []
    for c in range(D.v):
        els = translation_group(D, c)
        if len(els) == 1:
            continue
        ident = tuple(range(D.v))
        for g in els:
            assert g[c] == c
            if g != ident and any(g[p] == p for p in range(D.v) if p != c):
                raise AssertionError(f"translation at {c} is not semiregular")
        assert len(els) <= q
        reports.append(
            TranslationReport(c, tuple(els), len(els), fingerprint(els), len(els) == q)
        )
    return reports


def lemma_transt_check(G):
    """Property oracle over the full ambient group: the elements fixing
    every right coset Tg with g normalizing the unitriangular Sylow
    subgroup T, plus one extra coset (lower unitriangular rep), are
    exactly the q left multiplications by T."""
    universe = grp.short_blocks(G.q)
    t0 = next(
        si
        for si, s in enumerate(universe.sylows)
        if all(G.mat(x)[0] == 1 and G.mat(x)[2] == 0 for x in s.members)
    )
    T = universe.sylows[t0]
    coset = lambda g: universe.index[tuple(sorted(G.mul(x, g) for x in T.members))]
    marked = {coset(g) for g in grp.normalizer_sl(G, T).members}
    marked.add(coset(G.index[(1, 0, 1, 1)]))
    fixed = fixing_set(G, None, marked)
    return set(fixed) == set(left_multiplications(G, T.members))
