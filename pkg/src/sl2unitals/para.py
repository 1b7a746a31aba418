"""Parallelisms: partitions of the short-block universe into parallel classes.

A parallelism of SL(2,q) splits all (q+1)(q^2-1) short blocks into q+1
classes of q^2-1 pairwise disjoint blocks, each class covering every group
element once.  Everything here works on block ids of a ``BlockUniverse``;
a ``Parallelism`` is just the canonical tuple-of-tuples form (classes
sorted by least block id, ids sorted inside each class).

Constructions: the two coset parallelisms (``flat`` by right cosets,
``natural`` by left cosets), the square-residue family for odd q and the
subfield family for square q, plus blockwise inversion.  Enumeration runs
exact cover twice: points by blocks (spreads), then blocks by spreads.
"""

import os
from functools import lru_cache

import numpy as np

from . import grp
from .exactcover import exact_covers
from .grp import ar_generators, ar_identity, ar_point_perm


class ParallelismError(ValueError):
    pass


class Parallelism:
    __slots__ = ("classes",)

    def __init__(self, classes):
        self.classes = tuple(sorted(tuple(sorted(c)) for c in classes))

    def __eq__(self, other):
        return isinstance(other, Parallelism) and self.classes == other.classes

    def __hash__(self):
        return hash(self.classes)

    def __len__(self):
        return len(self.classes)

    def __iter__(self):
        return iter(self.classes)

    def __repr__(self):
        return f"Parallelism({len(self.classes)} classes)"

    def label_array(self, n_blocks):
        lab = np.full(n_blocks, -1, np.int32)
        for ci, cls in enumerate(self.classes):
            lab[list(cls)] = ci
        return lab


def flat(U):
    """Classes are the right-coset families: one class per Sylow subgroup."""
    classes = [[] for _ in U.sylows]
    for bi, si in enumerate(U.right_of):
        classes[si].append(bi)
    return Parallelism(classes)


def natural(U):
    """Classes are the left-coset families."""
    classes = [[] for _ in U.sylows]
    for bi, si in enumerate(U.left_of):
        classes[si].append(bi)
    return Parallelism(classes)


def lower_left_selector(G, mode):
    """Point set picked by the lower-left matrix entry: a square in odd
    characteristic mode, a subfield element in square-order mode."""
    F = G.field
    if mode == "square":
        test = F.is_square
        if F.q % 2 == 0:
            raise ParallelismError("square residues split nothing in characteristic 2")
    elif mode == "subfield":
        test = F.in_subfield
    else:
        raise ParallelismError(f"unknown selector mode {mode!r}")
    return frozenset(x for x in range(G.order) if test(G.mat(x)[2]))


def _seed_class(U, inside, primed=False):
    """Right cosets of the canonical Sylow subgroup inside the selected
    point set, left cosets outside it (roles swapped when primed)."""
    G = U.group
    ids = []
    for bi in range(len(U.blocks)):
        if U.right_of[bi] == 0 and ((U.blocks[bi][0] in inside) ^ primed):
            ids.append(bi)
        elif U.left_of[bi] == 0 and ((U.blocks[bi][0] not in inside) ^ primed):
            ids.append(bi)
    return ids


def residue_parallelism(U, primed=False):
    """The odd-q parallelism from the square/nonsquare split; conjugation
    spreads the seed class over all of SL(2,q)."""
    G = U.group
    if G.q % 2 == 0:
        raise ParallelismError("square/nonsquare split needs an odd order")
    omega = lower_left_selector(G, "square")
    seed = _seed_class(U, omega, primed)
    if len(seed) != G.q**2 - 1:
        raise ParallelismError("selector did not cut a full class")
    classes = set()
    seed_arr = np.array(seed)
    for h in range(G.order):
        perm = G.conj_perm_gl(G.mat(h))
        imgs = np.sort(np.asarray(perm)[U._block_arr[seed_arr]], axis=1)
        cls = tuple(sorted(U.index[tuple(r)] for r in imgs.tolist()))
        classes.add(cls)
    if len(classes) != G.q + 1:
        raise ParallelismError(f"expected {G.q + 1} conjugate classes, got {len(classes)}")
    return Parallelism(classes)


def subfield_parallelism(U):
    """The square-order parallelism from the subfield split, spread by the
    twisted conjugation x -> h^-1 x bar(h)."""
    G = U.group
    if G.field.e % 2:
        raise ParallelismError(f"subfield split needs a square order, not {G.q}")
    omega = lower_left_selector(G, "subfield")
    seed = _seed_class(U, omega)
    if len(seed) != G.q**2 - 1:
        raise ParallelismError("selector did not cut a full class")
    classes = set()
    seed_arr = np.array(seed)
    for h in range(G.order):
        perm = ar_point_perm(G, grp.theta(G, h))
        imgs = np.sort(perm[U._block_arr[seed_arr]], axis=1)
        cls = tuple(sorted(U.index[tuple(r)] for r in imgs.tolist()))
        classes.add(cls)
    if len(classes) != G.q + 1:
        raise ParallelismError(f"expected {G.q + 1} twisted classes, got {len(classes)}")
    return Parallelism(classes)


def invert_parallelism(U, pi):
    """Map every block pointwise through group inversion."""
    G = U.group
    inv_perm = np.array(G.inv_list)
    bperm = U.block_perm_from_points(inv_perm)
    return Parallelism(tuple(sorted(bperm[list(c)].tolist())) for c in pi)


def verify_parallelism(U, pi):
    """Return (ok, problems); problems name the first few violations."""
    G = U.group
    problems = []
    q = G.q
    if len(pi.classes) != q + 1:
        problems.append(f"expected {q + 1} classes, got {len(pi.classes)}")
    seen = {}
    for ci, cls in enumerate(pi.classes):
        if len(cls) != q**2 - 1:
            problems.append(f"class {ci} has {len(cls)} blocks, expected {q**2 - 1}")
        cover = 0
        for bi in cls:
            if bi in seen:
                problems.append(f"block {bi} appears in classes {seen[bi]} and {ci}")
            seen[bi] = ci
            if not 0 <= bi < len(U.blocks):
                problems.append(f"class {ci} references unknown block {bi}")
                continue
            mask = U.masks[bi]
            if cover & mask:
                other = next(
                    b for b in cls if b != bi and U.masks[b] & mask
                )
                problems.append(f"class {ci}: blocks {other} and {bi} intersect")
                break
            cover |= mask
        else:
            if cover != (1 << G.order) - 1 and len(cls) == q**2 - 1:
                problems.append(f"class {ci} does not cover every point")
        if len(problems) >= 5:
            break
    if not problems and len(seen) != len(U.blocks):
        problems.append(f"only {len(seen)} of {len(U.blocks)} blocks used")
    return (not problems, problems)


# -- enumeration --


def enumerate_spreads(U, budget=None):
    """All maximal sets of pairwise disjoint short blocks covering SL(2,q)."""
    G = U.group
    return sorted(exact_covers(G.order, U.masks, budget=budget))


def enumerate_parallelisms(U, budget=None, workers=None, spreads=None):
    """All parallelisms, via exact cover of the block universe by spreads.

    ``workers`` > 1 splits the top branch across processes; results are
    identical to the serial order.  Budget counts search nodes in each
    phase separately.
    """
    if spreads is None:
        spreads = enumerate_spreads(U, budget=budget)
    n = len(U.blocks)
    rows = [grp.mask_of(s) for s in spreads]
    if workers is None:
        workers = int(os.environ.get("UNITAL_THREADS", "1"))
    if workers > 1:
        sols = _parallel_covers(U.group.q, n, rows, budget, workers)
    else:
        sols = list(exact_covers(n, rows, budget=budget))
    return [Parallelism(spreads[si] for si in sol) for sol in sorted(sols)]


def _parallel_covers(q, n_cols, rows, budget, workers):
    import concurrent.futures as cf

    first_rows = [ri for ri, mask in enumerate(rows) if mask & 1]
    out = []
    with cf.ProcessPoolExecutor(max_workers=workers) as pool:
        jobs = [pool.submit(_cover_branch, n_cols, rows, budget, ri) for ri in first_rows]
        for job in jobs:
            out.extend(job.result())
    return out


def _cover_branch(n_cols, rows, budget, forced_row):
    return list(exact_covers(n_cols, rows, budget=budget, forced=(forced_row,)))


# -- group action on parallelisms --


def block_perm(U, t):
    """Induced permutation of block ids for an ambient element."""
    got = U._bperm_cache.get(t)
    if got is None:
        got = U.block_perm_from_points(ar_point_perm(U.group, t))
        got.setflags(write=False)
        U._bperm_cache[t] = got
    return got


def apply_parallelism(U, pi, t):
    bp = block_perm(U, t)
    return Parallelism(bp[list(c)].tolist() for c in pi)


def _split_bperms(U, ars):
    """Block perms for composite elements via (semilinear) x (translation)."""
    G = U.group
    semi = {}
    trans = {}
    for t in ars:
        skey = (t.mat, t.frob)
        if skey not in semi:
            semi[skey] = block_perm(U, grp.AR(t.mat, t.frob, (1, 0, 0, 1)))
        if t.rmul not in trans:
            trans[t.rmul] = block_perm(U, grp.AR((1, 0, 0, 1), 0, t.rmul))
    return semi, trans


def stabilizer(U, pi, ars=None):
    """Filter a list of ambient elements down to the stabilizer of pi.

    Defaults to the full ambient group, which must then be enumerable.
    """
    G = U.group
    if ars is None:
        ars = grp.ar_enumerate(G.q)
    lab = pi.label_array(len(U.blocks))
    class_arrs = [np.array(c) for c in pi.classes]
    semi, trans = _split_bperms(U, ars)
    out = []
    for t in ars:
        bp = trans[t.rmul][semi[(t.mat, t.frob)]]
        img = lab[bp]
        ok = True
        for ids in class_arrs:
            vals = img[ids]
            if (vals != vals[0]).any():
                ok = False
                break
        if ok:
            out.append(t)
    return out


def orbit(U, pi, ars):
    """Orbit of pi under a full subgroup given by its element list."""
    semi, trans = _split_bperms(U, ars)
    seen = set()
    for t in ars:
        bp = trans[t.rmul][semi[(t.mat, t.frob)]]
        seen.add(Parallelism(bp[list(c)].tolist() for c in pi))
    return seen


def orbit_bfs(U, pi, gens=None):
    """Orbit under the group generated by ``gens`` (default: full ambient)."""
    G = U.group
    if gens is None:
        gens = ar_generators(G)
    gen_perms = [block_perm(U, t) for t in gens]
    seen = {pi}
    frontier = [pi]
    while frontier:
        nxt = []
        for p in frontier:
            for bp in gen_perms:
                img = Parallelism(bp[list(c)].tolist() for c in p)
                if img not in seen:
                    seen.add(img)
                    nxt.append(img)
        frontier = nxt
    return seen


def stabilizer_order_by_orbit(U, pi):
    """Order of the full ambient stabilizer, via the orbit of pi."""
    size = len(orbit_bfs(U, pi))
    total = grp.ar_order(U.group)
    assert total % size == 0
    return total // size, size


def orbit_partition(U, paras, ars):
    """Partition a list of parallelisms into orbits under a subgroup's
    element list; returns lists of indices, smallest orbit first."""
    where = {p: i for i, p in enumerate(paras)}
    unseen = set(range(len(paras)))
    orbits = []
    while unseen:
        i = min(unseen)
        orb = orbit(U, paras[i], ars)
        members = sorted(where[p] for p in orb if p in where)
        if len(members) != len(orb):
            raise ParallelismError("orbit leaves the supplied parallelism list")
        orbits.append(members)
        unseen -= set(members)
    return sorted(orbits, key=lambda o: (len(o), o))


def class_structure_report(U, pi):
    """Per class: the Sylow subgroup P whose coset family dominates, and the
    census of right cosets of P vs left cosets of bar(P)."""
    G = U.group
    F = G.field
    sylow_of_block = U.right_of
    out = []
    bar_sylow = {}
    for si, s in enumerate(U.sylows):
        barred = tuple(sorted(G.index[G.mat_bar(G.mat(x))] for x in s.members))
        bar_sylow[si] = U.right_of[U.index[barred]] if barred in U.index else None
    for cls in pi.classes:
        own = [bi for bi in cls if bi in U.sylow_block_ids]
        if len(own) != 1:
            raise ParallelismError("class does not contain exactly one subgroup block")
        p_id = sylow_of_block[own[0]]
        pbar_id = bar_sylow[p_id]
        n_right = sum(1 for bi in cls if U.right_of[bi] == p_id)
        n_right_left = sum(
            1 for bi in cls if U.right_of[bi] == p_id and U.left_of[bi] == pbar_id
        )
        n_pure_left = sum(
            1 for bi in cls if U.right_of[bi] != p_id and U.left_of[bi] == pbar_id
        )
        other = len(cls) - n_right - n_pure_left
        out.append(
            {
                "sylow": p_id,
                "right_of_p": n_right,
                "right_and_left_of_pbar": n_right_left,
                "pure_left_of_pbar": n_pure_left,
                "other": other,
            }
        )
    return out


@lru_cache(maxsize=None)
def named_parallelism(q, kind):
    """The constructible parallelisms, by CLI kind name."""
    U = grp.short_blocks(q)
    if kind == "flat":
        return flat(U)
    if kind == "natural":
        return natural(U)
    if kind == "odd":
        return residue_parallelism(U)
    if kind == "odd-prime":
        return residue_parallelism(U, primed=True)
    if kind == "sq":
        return subfield_parallelism(U)
    if kind == "sq-inv":
        return invert_parallelism(U, subfield_parallelism(U))
    raise ParallelismError(f"unknown parallelism kind {kind!r}")
