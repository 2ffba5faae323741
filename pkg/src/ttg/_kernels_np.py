"""Pure-numpy versions of the bitmask kernels.

Every function here has a twin of the same name and signature in
``_kernels_nb``; the two are required to return identical arrays.
"""
import numpy as np


def downset_masks(below):
    n = len(below)
    masks = np.arange(1 << n, dtype=np.int64)
    ok = np.ones(masks.shape, dtype=bool)
    for i in range(n):
        has = ((masks >> i) & 1).astype(bool)
        ok &= ~has | ((below[i] & ~masks) == 0)
    return masks[ok]


def union_rows(rows, masks):
    out = np.zeros(len(masks), dtype=np.int64)
    for i in range(len(rows)):
        has = ((masks >> i) & 1).astype(bool)
        out |= np.where(has, rows[i], 0)
    return out


def meet_rows(rows, masks, full):
    out = np.full(len(masks), full, dtype=np.int64)
    for i in range(len(rows)):
        has = ((masks >> i) & 1).astype(bool)
        out &= np.where(has, rows[i], full)
    return out


def phi_theta(dsets, sig, vs):
    inside = (sig[None, :] & ~vs[:, None]) == 0
    picked = np.where(inside, dsets[None, :], 0)
    if picked.shape[1] == 0:
        return np.zeros(len(vs), dtype=np.int64)
    return np.bitwise_or.reduce(picked, axis=1).astype(np.int64)


def perm_codes(leq, perms):
    n = leq.shape[0]
    if n == 0:
        return np.zeros(len(perms), dtype=np.int64)
    rel = leq[perms[:, :, None], perms[:, None, :]].reshape(len(perms), n * n)
    weights = np.left_shift(np.int64(1), np.arange(n * n - 1, -1, -1, dtype=np.int64))
    return (rel.astype(np.int64) * weights[None, :]).sum(axis=1)


def monotone_maps(leq_dom, leq_cod, injective, surjective):
    n = leq_dom.shape[0]
    m = leq_cod.shape[0]
    if n == 0:
        return np.zeros((1 if not surjective or m == 0 else 0, 0), dtype=np.int64)
    total = m ** n
    grid = np.stack(np.unravel_index(np.arange(total, dtype=np.int64), (m,) * n), axis=1)
    grid = grid.astype(np.int64)
    ok = np.ones(total, dtype=bool)
    for i in range(n):
        for j in range(n):
            if i != j and leq_dom[i, j]:
                ok &= leq_cod[grid[:, i], grid[:, j]]
    if injective:
        srt = np.sort(grid, axis=1)
        ok &= np.all(srt[:, 1:] != srt[:, :-1], axis=1)
    if surjective:
        for t in range(m):
            ok &= np.any(grid == t, axis=1)
    return grid[ok]


def extension_pairs(downs, ups, above, full):
    common = meet_rows(above, downs, full)
    d = downs[:, None]
    u = ups[None, :]
    ok = ((d & u) == 0) & ((u & ~common[:, None]) == 0)
    di, ui = np.nonzero(ok)
    return downs[di], ups[ui]
