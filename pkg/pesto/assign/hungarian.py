"""
Kuhn-Munkres assignment with potentials, O(n³), on the square zero-padded
cost matrix.  Among optimal assignments the lexicographically smallest
column sequence (row 0 first) is returned.
"""
import numpy as np

from pesto.util import ArgumentError


def _potentials(cost):
    """
    Shortest augmenting path Hungarian method; returns the row -> column
    matching and the dual potentials `u`, `v` with
    `cost[i, j] - u[i] - v[j] >= 0`, tight on matched pairs.
    """
    n = cost.shape[0]
    # 1-based bookkeeping, index 0 is the virtual source column
    u = np.zeros(n + 1)
    v = np.zeros(n + 1)
    owner = np.zeros(n + 1, dtype=np.int64)
    way = np.zeros(n + 1, dtype=np.int64)
    for i in range(1, n + 1):
        owner[0] = i
        j0 = 0
        minv = np.full(n + 1, np.inf)
        used = np.zeros(n + 1, dtype=bool)
        while True:
            used[j0] = True
            i0 = owner[j0]
            free = ~used[1:]
            reduced = cost[i0 - 1] - u[i0] - v[1:]
            improve = free & (reduced < minv[1:])
            minv[1:][improve] = reduced[improve]
            way[1:][improve] = j0
            candidates = np.where(free, minv[1:], np.inf)
            j1 = int(np.argmin(candidates)) + 1
            delta = candidates[j1 - 1]
            u[owner[used]] += delta
            v[used] -= delta
            minv[~used] -= delta
            j0 = j1
            if owner[j0] == 0:
                break
        while j0:
            j1 = way[j0]
            owner[j0] = owner[j1]
            j0 = j1
    match = np.empty(n, dtype=np.int64)
    match[owner[1:] - 1] = np.arange(n)
    return match, u[1:], v[1:]


def _rematch(tight, match, owner, fixed, row, col):
    """
    Moves `row` onto `col` through an alternating path of tight edges that
    leaves fixed rows alone, ending at the column `row` gives up.  Updates
    `match` and `owner` and returns True on success.
    """
    target = match[row]
    start = int(owner[col])
    # displaced row -> (row taking its column, that column)
    parent = {start: None}
    stack = [start]
    found = None
    while stack and found is None:
        r = stack.pop()
        for c in np.flatnonzero(tight[r]):
            c = int(c)
            if c == target:
                found = r
                break
            if c == col:
                continue
            other = int(owner[c])
            if fixed[other] or other == row or other in parent:
                continue
            parent[other] = (r, c)
            stack.append(other)
    if found is None:
        return False
    r, c = found, target
    while True:
        previous = parent[r]
        match[r] = c
        owner[c] = r
        if previous is None:
            break
        r, c = previous
    match[row] = col
    owner[col] = row
    return True


def _lexicographic(cost, match, u, v):
    n = cost.shape[0]
    scale = max(1.0, float(np.abs(cost).max(initial=0)))
    tight = np.abs(cost - u[:, None] - v[None, :]) <= 1e-9 * scale
    tight[np.arange(n), match] = True
    owner = np.empty(n, dtype=np.int64)
    owner[match] = np.arange(n)
    fixed = np.zeros(n, dtype=bool)
    for row in range(n):
        for col in np.flatnonzero(tight[row]):
            col = int(col)
            if col == match[row]:
                break
            if fixed[owner[col]]:
                continue
            if _rematch(tight, match, owner, fixed, row, col):
                break
        fixed[row] = True
    return match


def hungarian(cost, objective='minimize'):
    """
    Optimal one-to-one assignment of `min(r, c)` pairs of an `r × c` matrix.

    Returns a list of `(row, col)` pairs sorted by row.
    """
    cost = np.asarray(cost, dtype=np.float64)
    if cost.ndim != 2:
        raise ArgumentError('The cost must be a matrix.')
    if not np.all(np.isfinite(cost)):
        raise ArgumentError('The cost matrix has non-finite entries.')
    if objective not in ('minimize', 'maximize'):
        raise ArgumentError('Unrecognized objective {!r}.'.format(objective))
    rows, cols = cost.shape
    if not rows or not cols:
        return []
    if objective == 'maximize':
        cost = -cost
    n = max(rows, cols)
    square = np.zeros((n, n))
    square[:rows, :cols] = cost
    match, u, v = _potentials(square)
    match = _lexicographic(square, match, u, v)
    return [(i, int(match[i])) for i in range(rows) if match[i] < cols]


def assignment_cost(cost, pairs):
    cost = np.asarray(cost, dtype=np.float64)
    return float(sum(cost[i, j] for i, j in pairs))
