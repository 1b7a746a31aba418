"""Exact cover over int bitmasks (Algorithm X, least-candidates branching).

Columns are bits of a universe mask, rows are subsets given as masks.  The
solver yields every exact cover as a sorted tuple of row indices, in a
deterministic order.  An optional node budget aborts long searches with
``BudgetExceededError`` instead of returning a partial answer silently.
"""


class BudgetExceededError(RuntimeError):
    def __init__(self, budget):
        super().__init__(f"exact cover search exceeded {budget} nodes")
        self.budget = budget


class _Search:
    def __init__(self, n_cols, rows, budget):
        self.rows = rows
        self.budget = budget
        self.nodes = 0
        self.full = (1 << n_cols) - 1
        col_rows = [0] * n_cols
        for ri, mask in enumerate(rows):
            m = mask
            while m:
                c = (m & -m).bit_length() - 1
                col_rows[c] |= 1 << ri
                m &= m - 1
        self.col_rows = col_rows

    def run(self, uncovered, alive, chosen):
        if uncovered == 0:
            yield tuple(sorted(chosen))
            return
        self.nodes += 1
        if self.budget is not None and self.nodes > self.budget:
            raise BudgetExceededError(self.budget)
        # branch on the uncovered column with fewest live candidate rows
        best_c, best_cand, best_n = -1, 0, None
        m = uncovered
        while m:
            c = (m & -m).bit_length() - 1
            m &= m - 1
            cand = alive & self.col_rows[c]
            n = cand.bit_count()
            if n == 0:
                return
            if best_n is None or n < best_n:
                best_c, best_cand, best_n = c, cand, n
                if n == 1:
                    break
        cand = best_cand
        while cand:
            ri = (cand & -cand).bit_length() - 1
            cand &= cand - 1
            rmask = self.rows[ri]
            conflict = 0
            m = rmask
            while m:
                c = (m & -m).bit_length() - 1
                m &= m - 1
                conflict |= self.col_rows[c]
            chosen.append(ri)
            yield from self.run(uncovered & ~rmask, alive & ~conflict, chosen)
            chosen.pop()


def exact_covers(n_cols, rows, budget=None, forced=()):
    """Iterate over all exact covers of range(n_cols) by ``rows``.

    ``forced`` preselects row indices; only covers containing all of them
    are produced (used to split work deterministically across workers).
    """
    search = _Search(n_cols, rows, budget)
    uncovered = search.full
    alive = (1 << len(rows)) - 1
    chosen = []
    for ri in forced:
        rmask = rows[ri]
        if rmask & ~uncovered:
            return iter(())
        conflict = 0
        m = rmask
        while m:
            c = (m & -m).bit_length() - 1
            m &= m - 1
            conflict |= search.col_rows[c]
        uncovered &= ~rmask
        alive &= ~conflict
        chosen.append(ri)
    return search.run(uncovered, alive, chosen)
