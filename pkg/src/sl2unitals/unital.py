"""Affine unitals built on SL(2,q): cosets of a subgroup of order q+1,
all Sylow cosets, and translates of supplementary difference-style sets.

The construction data is a subgroup S of order q+1 together with q-2
sets D through the identity, each of size q+1, whose pairwise quotients
x*y^-1 are all distinct (condition Q) and tile, together with S and the
Sylow subgroups, the whole nonidentity part of the group (condition P).
Blocks are then the right cosets of S, every short block, and every
right translate of every D.  Right cosets preserve quotients, so the
tiling is exactly what makes two points lie on a unique block.

``search_D_sets`` enumerates all valid collections for a given S by
bitmask backtracking over the residual point set; ``aut_affine`` filters
the ambient group (semilinear maps fixing S, times right translations)
down to the block-preserving elements.
"""

from functools import lru_cache

import numpy as np

from . import grp, para
from .exactcover import BudgetExceededError
from .grp import AR, GroupTooLargeError, mask_of


class UnitalError(ValueError):
    pass


class BadBlockSizeError(UnitalError):
    pass


class AxiomViolationError(UnitalError):
    def __init__(self, axiom, witness, message):
        super().__init__(f"{axiom}: {message} (witness {witness})")
        self.axiom = axiom
        self.witness = witness


# -- conditions (Q) and (P) --


def quotient_set(G, D):
    """All quotients x*y^-1 over distinct x, y in D."""
    inv = G.inv_list
    return {G.mul(x, inv[y]) for x in D for y in D if x != y}


def verify_Q(G, D):
    """True iff the q(q+1) ordered quotients of D are pairwise distinct."""
    q = G.q
    members = sorted(set(D))
    if len(members) != q + 1:
        raise BadBlockSizeError(f"D must have q+1 = {q + 1} points, got {len(members)}")
    if G.one not in members:
        raise UnitalError("D must contain the identity")
    return len(quotient_set(G, members)) == q * (q + 1)


def residual_set(G, S):
    """Points outside the identity, S and every Sylow p-subgroup."""
    left = set(range(G.order)) - set(S.members) - {G.one}
    for t in grp.sylow_p_subgroups(G):
        left -= set(t.members)
    return sorted(left)


def verify_P(G, S, d_sets):
    """True iff S, the Sylow subgroups and the quotient sets of the given
    D-sets tile the nonidentity elements with no overlap."""
    pieces = [set(S.members) - {G.one}]
    pieces.extend(set(t.members) - {G.one} for t in grp.sylow_p_subgroups(G))
    pieces.extend(quotient_set(G, D) for D in d_sets)
    union = set()
    total = 0
    for piece in pieces:
        union |= piece
        total += len(piece)
    return total == G.order - 1 and len(union) == G.order - 1 and G.one not in union


# -- exhaustive search for the D-collections --


def search_D_sets(G, S, budget=None, method="auto"):
    """All collections of q-2 valid D-sets for the given S, canonically
    sorted.  No quotienting by symmetry: every collection appears once.

    Two interchangeable strategies; "auto" picks by problem size and the
    tests pin both to the same output.  "direct" backtracks over members
    in ascending index order with first elements increasing across the
    collection (which kills only the orderings of one and the same
    collection).  "twophase" enumerates every valid single D, then tiles
    the residual set with their quotient masks.
    """
    q = G.q
    if S.order != q + 1:
        raise UnitalError(f"S must have order q+1 = {q + 1}, got {S.order}")
    if method == "auto":
        method = "direct" if q <= 4 else "twophase"
    if method == "twophase":
        return _search_twophase(G, S, budget)
    if method != "direct":
        raise UnitalError(f"unknown search method {method!r}")
    one = G.one
    inv = G.inv_list
    mul = G.mul
    res = residual_set(G, S)
    assert len(res) == q * (q - 2) * (q + 1)
    res_mask = mask_of(res)
    wanted = q - 2
    if wanted == 0:
        return [()]
    sols = []
    nodes = 0

    def bump():
        nonlocal nodes
        nodes += 1
        if budget is not None and nodes > budget:
            raise BudgetExceededError(f"search exceeded {budget} nodes")

    def grow(cur, used, completed):
        if len(cur) == q:
            D = tuple(sorted(cur + [one]))
            done = completed + [D]
            if len(done) == wanted:
                assert used == res_mask
                sols.append(tuple(done))
            else:
                begin(done, used, cur[0])
            return
        rest = (res_mask & ~used) >> (cur[-1] + 1) << (cur[-1] + 1)
        while rest:
            low = rest & -rest
            rest ^= low
            cand = low.bit_length() - 1
            bump()
            acc = try_add(cur, used, cand)
            if acc is not None:
                grow(cur + [cand], used | acc, completed)

    def try_add(cur, used, cand):
        # fresh quotients: cand and its inverse (against the identity),
        # then both quotients against every current member
        ci = inv[cand]
        acc = 0
        free = res_mask & ~used
        for y in (cand, ci):
            bit = 1 << y
            if not free & bit or acc & bit:
                return None
            acc |= bit
        for x in cur:
            for y in (mul(cand, inv[x]), mul(x, ci)):
                bit = 1 << y
                if not free & bit or acc & bit:
                    return None
                acc |= bit
        return acc

    def begin(completed, used, prev_first):
        rest = (res_mask & ~used) >> (prev_first + 1) << (prev_first + 1)
        while rest:
            low = rest & -rest
            rest ^= low
            cand = low.bit_length() - 1
            bump()
            acc = try_add([], used, cand)
            if acc is not None:
                grow([cand], used | acc, completed)

    begin([], 0, -1)
    return sorted(tuple(sorted(sol)) for sol in sols)


_W = np.uint64


def _mask_words(idxs):
    """Pack point indices into a (lo, hi) pair of 64-bit words."""
    lo = hi = 0
    for i in idxs:
        if i < 64:
            lo |= 1 << i
        else:
            hi |= 1 << (i - 64)
    return _W(lo), _W(hi)


def _word_arrays(idx):
    """Per-entry (lo, hi) bit words for an index array."""
    u = idx.astype(np.uint64)
    low = idx < 64
    lo = np.where(low, np.left_shift(_W(1), np.where(low, u, _W(0))), _W(0))
    hi = np.where(low, _W(0), np.left_shift(_W(1), np.where(low, _W(0), u - _W(64))))
    return lo, hi


def _mul_table(G):
    """Dense index-level multiplication table, cached on the group."""
    tbl = getattr(G, "_mul_table", None)
    if tbl is None:
        tbl = np.stack([G.rmul_perm(j) for j in range(G.order)], axis=1).astype(np.int16)
        tbl.setflags(write=False)
        G._mul_table = tbl
    return tbl


def _all_valid_D(G, S, budget=None):
    """Row-wise members and quotient-mask words of every single valid D.

    Levelwise frontier expansion: all partial member lists of one length
    are grown together, so the per-candidate quotient tests run as array
    operations instead of an inner Python loop.
    """
    q = G.q
    res = np.array(residual_set(G, S), np.int16)
    res_lo, res_hi = _mask_words(res.tolist())
    not_lo, not_hi = ~res_lo, ~res_hi
    mul = _mul_table(G)
    inv_arr = np.array(G.inv_list, np.int16)
    clo, chi = _word_arrays(res)
    mem = np.zeros((1, 0), np.int16)
    lo = np.zeros(1, np.uint64)
    hi = np.zeros(1, np.uint64)
    spent = 0
    for k in range(q):
        outs = []
        chunk = max(1, 3_000_000 // (len(res) * (2 * k + 2)))
        for at in range(0, len(mem), chunk):
            m = mem[at : at + chunk]
            mlo = lo[at : at + chunk]
            mhi = hi[at : at + chunk]
            last = m[:, -1] if k else np.full(len(m), -1, np.int16)
            ok = res[None, :] > last[:, None]
            ok &= ((mlo[:, None] & clo[None, :]) | (mhi[:, None] & chi[None, :])) == 0
            rows, cs = np.nonzero(ok)
            spent += len(rows)
            if budget is not None and spent > budget:
                raise BudgetExceededError(f"search exceeded {budget} nodes")
            cand = res[cs]
            ic = inv_arr[cand]
            parts = [cand[:, None], ic[:, None]]
            if k:
                cur = m[rows]
                parts.append(mul[cand[:, None], inv_arr[cur]])
                parts.append(mul[cur, ic[:, None]])
            delta = np.concatenate(parts, axis=1)
            dlo_e, dhi_e = _word_arrays(delta)
            dlo = np.bitwise_or.reduce(dlo_e, axis=1)
            dhi = np.bitwise_or.reduce(dhi_e, axis=1)
            good = (np.bitwise_count(dlo) + np.bitwise_count(dhi)) == 2 * k + 2
            good &= ((dlo & mlo[rows]) | (dhi & mhi[rows])) == 0
            good &= ((dlo & not_lo) | (dhi & not_hi)) == 0
            rows = rows[good]
            outs.append(
                (
                    np.column_stack([m[rows], cand[good]]),
                    mlo[rows] | dlo[good],
                    mhi[rows] | dhi[good],
                )
            )
        mem = np.concatenate([o[0] for o in outs])
        lo = np.concatenate([o[1] for o in outs])
        hi = np.concatenate([o[2] for o in outs])
    return mem, lo, hi


def _search_twophase(G, S, budget=None):
    """Tile the residual set by quotient masks of prebuilt single D's."""
    q = G.q
    one = G.one
    wanted = q - 2
    res = residual_set(G, S)
    assert len(res) == q * (q - 2) * (q + 1)
    if wanted == 0:
        return [()]
    mem, lo, hi = _all_valid_D(G, S, budget)
    fam = {}
    for i in range(len(mem)):
        fam.setdefault((int(lo[i]), int(hi[i])), []).append(i)
    keys = sorted(fam)
    klo = np.array([k[0] for k in keys], np.uint64)
    khi = np.array([k[1] for k in keys], np.uint64)
    res_lo, res_hi = (int(w) for w in _mask_words(res))
    sols = []

    def as_D(row):
        return tuple(sorted(mem[row].tolist() + [one]))

    def emit(chosen):
        from itertools import product

        for combo in product(*(fam[key] for key in chosen)):
            sols.append(tuple(sorted(as_D(row) for row in combo)))

    def pick(chosen, cur_lo, cur_hi):
        av_lo, av_hi = res_lo & ~cur_lo, res_hi & ~cur_hi
        if len(chosen) == wanted - 1:
            # the final quotient mask is forced: look it up
            if (av_lo, av_hi) in fam:
                emit(chosen + [(av_lo, av_hi)])
            return
        # next mask must carry the lowest uncovered bit
        t_lo = av_lo & -av_lo if av_lo else 0
        t_hi = 0 if av_lo else av_hi & -av_hi
        cand = np.nonzero(
            (((klo & _W(cur_lo)) | (khi & _W(cur_hi))) == 0)
            & (((klo & _W(t_lo)) | (khi & _W(t_hi))) != 0)
        )[0]
        for f in cand:
            pick(chosen + [keys[f]], cur_lo | int(klo[f]), cur_hi | int(khi[f]))

    pick([], 0, 0)
    return sorted(sols)


# -- the unital itself --


class AffineUnital:
    """Immutable block structure on the q^3-q group elements."""

    __slots__ = ("group", "S", "d_sets", "blocks", "index", "s_blocks", "d_blocks")

    def __init__(self, G, S, d_sets, blocks, s_blocks, d_blocks):
        self.group = G
        self.S = S
        self.d_sets = d_sets
        self.blocks = blocks
        self.index = {b: i for i, b in enumerate(blocks)}
        self.s_blocks = s_blocks
        self.d_blocks = d_blocks

    @property
    def point_count(self):
        return self.group.order

    @property
    def shorts(self):
        return grp.short_blocks(self.group.q)

    def __repr__(self):
        return f"AffineUnital(q={self.group.q}, {len(self.blocks)} blocks)"


def _coset_family(G, members):
    arr = np.array(sorted(members))
    return {tuple(np.sort(G.rmul_perm(g)[arr]).tolist()) for g in range(G.order)}


def build_affine(G, S, d_sets):
    """Assemble and fully check the unital for a search solution."""
    q = G.q
    d_sets = tuple(tuple(sorted(D)) for D in d_sets)
    for D in d_sets:
        if not verify_Q(G, D):
            raise UnitalError(f"quotient condition fails for D = {D}")
    if not verify_P(G, S, d_sets):
        raise UnitalError("tiling condition fails for the collection")
    s_blocks = sorted(_coset_family(G, S.members))
    shorts = grp.short_blocks(q)
    d_blocks = set()
    for D in d_sets:
        fam = _coset_family(G, D)
        assert len(fam) == G.order  # translates stay distinct under (Q)
        d_blocks |= fam
    assert len(d_blocks) == len(d_sets) * G.order
    blocks = sorted(set(s_blocks) | set(shorts.blocks) | d_blocks)
    expect = q * (q - 1) + (q + 1) * (q**2 - 1) + (q - 2) * G.order
    if len(blocks) != expect:
        raise UnitalError(f"block families overlap: {len(blocks)} != {expect}")
    U = AffineUnital(G, S, d_sets, tuple(blocks), tuple(s_blocks), tuple(sorted(d_blocks)))
    _check_axioms(U)
    return U


def _check_axioms(U):
    """(AU1)-(AU4) by direct count, (AU5) witnessed by the right-coset
    parallelism.  Witnesses are the least violating point or pair."""
    G = U.group
    q = G.q
    n = G.order
    if n != q**3 - q:
        raise AxiomViolationError("AU1", n, f"expected {q**3 - q} points")
    bad = sorted(b for b in U.blocks if len(b) not in (q, q + 1))
    if bad:
        raise AxiomViolationError("AU2", bad[0], "block size out of range")
    degree = [0] * n
    cover = bytearray(n * n)
    doubled = []
    for b in U.blocks:
        for i, x in enumerate(b):
            degree[x] += 1
            for y in b[i + 1 :]:
                k = x * n + y
                if cover[k]:
                    doubled.append((x, y))
                else:
                    cover[k] = 1
    for x in range(n):
        if degree[x] != q * q:
            raise AxiomViolationError("AU3", x, f"point lies on {degree[x]} blocks, expected {q * q}")
    missing = [(x, y) for x in range(n) for y in range(x + 1, n) if not cover[x * n + y]]
    bad_pairs = sorted(doubled + missing)
    if bad_pairs:
        raise AxiomViolationError("AU4", bad_pairs[0], "pair not on exactly one block")
    ok, problems = para.verify_parallelism(U.shorts, para.flat(U.shorts))
    if not ok:
        raise AxiomViolationError("AU5", problems[0], "right cosets fail as a parallelism")


# -- automorphisms inside the ambient group --


def semilinear_s_stabilizer(G, S):
    """Semilinear maps (projective matrix, Frobenius power) fixing S
    setwise, each paired with its point permutation."""
    smask = S.mask
    members = np.array(S.members)
    out = []
    for m in grp.pgl_classes(G):
        cperm = G.conj_perm_gl(m)
        for l in range(G.field.e):
            perm = G.frob_perm(l)[cperm]
            if mask_of(perm[members].tolist()) == smask:
                out.append((m, l, perm))
    return out


_SHIFT = 7  # enough for q <= 5, where there are at most 120 points


def _block_codes(arr):
    """Sorted injective int64 codes of the rows, rows sorted first."""
    weights = np.int64(1) << (_SHIFT * np.arange(arr.shape[1], dtype=np.int64))
    return np.sort(np.sort(arr, axis=1).astype(np.int64) @ weights)


def aut_affine(U):
    """Every ambient element mapping the block set onto itself.

    Filters all pairs (semilinear map fixing S, right translation); for
    q >= 3 this set is known to contain the full automorphism group.
    """
    G = U.group
    q = G.q
    if q < 3:
        raise UnitalError("ambient containment needs q >= 3")
    if q > 5:
        raise GroupTooLargeError(f"will not filter the ambient group at q = {q}")
    long_arr = np.array([b for b in U.blocks if len(b) == q + 1])
    short_arr = np.array([b for b in U.blocks if len(b) == q])
    ref_long = _block_codes(long_arr)
    ref_short = _block_codes(short_arr)
    out = []
    for m, l, sperm in semilinear_s_stabilizer(G, S=U.S):
        for h in range(G.order):
            perm = G.rmul_perm(h)[sperm]
            if np.array_equal(_block_codes(perm[long_arr]), ref_long) and np.array_equal(
                _block_codes(perm[short_arr]), ref_short
            ):
                out.append(AR(m, l, G.mat(h)))
    return out


# -- classification of search output --


def d_family_key(G, d_sets):
    """The full set of D-translate blocks; equal collections of blocks
    mean equal unitals, whatever normalization the D-sets carry."""
    fam = set()
    for D in d_sets:
        fam |= _coset_family(G, D)
    return frozenset(fam)


def classify_solutions(G, S, solutions):
    """Group search solutions into unital isomorphism classes.

    Solutions sharing a block family are the same unital; families in
    one orbit under the S-fixing semilinear maps give isomorphic unitals
    (right translations already fix each family).  Returns one entry per
    class: representative solution, solution count, automorphism order.
    """
    by_key = {}
    for sol in solutions:
        by_key.setdefault(d_family_key(G, sol), []).append(sol)
    semis = semilinear_s_stabilizer(G, S)
    unseen = dict(by_key)
    classes = []
    while unseen:
        key = min(unseen, key=sorted)
        orbit_keys = set()
        for m, l, perm in semis:
            img = frozenset(tuple(np.sort(perm[list(b)]).tolist()) for b in key)
            if img not in by_key:
                raise UnitalError("family orbit leaves the solution set; search incomplete?")
            orbit_keys.add(img)
        members = []
        for k in orbit_keys:
            members.extend(by_key[k])
            unseen.pop(k, None)
        stab = len(semis) // len(orbit_keys)
        assert len(semis) % len(orbit_keys) == 0
        classes.append(
            {
                "rep": min(members),
                "n_solutions": len(members),
                "aut_order": stab * G.order,
            }
        )
    return sorted(classes, key=lambda c: (-c["aut_order"], c["rep"]))


def subgroups_of_order_qplus1(G):
    """Every subgroup of order q+1, by scanning cyclic generators.

    Complete at desk scale: for q in {2,3,4,5} the order q+1 is 3, 4, 5
    or 6, and a noncyclic group of order 4 or 6 needs several
    involutions while SL(2,odd) has only -1.
    """
    q = G.q
    found = {}
    for x in range(G.order):
        if G.order_of(x) == q + 1:
            sub = grp.subgroup_from(G, grp.mulclose(G, [x]))
            found.setdefault(sub.members, sub)
    return [found[k] for k in sorted(found)]


@lru_cache(maxsize=None)
def canonical_S(q):
    """The default S: powers of the first element of order q+1."""
    return grp.cyclic_subgroup_of_order(grp.sl2(q), q + 1)


@lru_cache(maxsize=None)
def affine_types(q):
    """One built unital per isomorphism class, most symmetric first."""
    G = grp.sl2(q)
    S = canonical_S(q)
    classes = classify_solutions(G, S, search_D_sets(G, S))
    return tuple(build_affine(G, S, c["rep"]) for c in classes)
