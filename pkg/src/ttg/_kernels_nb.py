"""Numba-compiled versions of the bitmask kernels (see ``_kernels_np``)."""
import numpy as np
from numba import njit


@njit(cache=True, nogil=True)
def downset_masks(below):
    n = below.shape[0]
    out = np.empty(1 << n, dtype=np.int64)
    k = 0
    for m in range(1 << n):
        ok = True
        for i in range(n):
            if (m >> i) & 1 and (below[i] & ~m) != 0:
                ok = False
                break
        if ok:
            out[k] = m
            k += 1
    return out[:k]


@njit(cache=True, nogil=True)
def union_rows(rows, masks):
    out = np.zeros(masks.shape[0], dtype=np.int64)
    for k in range(masks.shape[0]):
        acc = 0
        m = masks[k]
        for i in range(rows.shape[0]):
            if (m >> i) & 1:
                acc |= rows[i]
        out[k] = acc
    return out


@njit(cache=True, nogil=True)
def meet_rows(rows, masks, full):
    out = np.empty(masks.shape[0], dtype=np.int64)
    for k in range(masks.shape[0]):
        acc = full
        m = masks[k]
        for i in range(rows.shape[0]):
            if (m >> i) & 1:
                acc &= rows[i]
        out[k] = acc
    return out


@njit(cache=True, nogil=True)
def phi_theta(dsets, sig, vs):
    out = np.zeros(vs.shape[0], dtype=np.int64)
    for k in range(vs.shape[0]):
        acc = 0
        v = vs[k]
        for j in range(dsets.shape[0]):
            if (sig[j] & ~v) == 0:
                acc |= dsets[j]
        out[k] = acc
    return out


@njit(cache=True, nogil=True)
def perm_codes(leq, perms):
    n = leq.shape[0]
    out = np.zeros(perms.shape[0], dtype=np.int64)
    for p in range(perms.shape[0]):
        code = 0
        for i in range(n):
            for j in range(n):
                code = code * 2
                if leq[perms[p, i], perms[p, j]]:
                    code += 1
        out[p] = code
    return out


@njit(cache=True, nogil=True)
def monotone_maps(leq_dom, leq_cod, injective, surjective):
    n = leq_dom.shape[0]
    m = leq_cod.shape[0]
    if n == 0:
        rows = 1 if (not surjective or m == 0) else 0
        return np.zeros((rows, 0), dtype=np.int64)
    total = 1
    for _ in range(n):
        total *= m
    out = np.empty((total, n), dtype=np.int64)
    cur = np.empty(n, dtype=np.int64)
    seen = np.empty(m, dtype=np.bool_)
    k = 0
    for idx in range(total):
        r = idx
        for i in range(n - 1, -1, -1):
            cur[i] = r % m
            r //= m
        ok = True
        for i in range(n):
            for j in range(n):
                if i != j and leq_dom[i, j] and not leq_cod[cur[i], cur[j]]:
                    ok = False
                    break
            if not ok:
                break
        if ok and (injective or surjective):
            seen[:] = False
            hits = 0
            for i in range(n):
                if seen[cur[i]]:
                    if injective:
                        ok = False
                        break
                else:
                    seen[cur[i]] = True
                    hits += 1
            if ok and surjective and hits != m:
                ok = False
        if ok:
            out[k, :] = cur
            k += 1
    return out[:k]


@njit(cache=True, nogil=True)
def extension_pairs(downs, ups, above, full):
    common = meet_rows(above, downs, full)
    nd = downs.shape[0]
    nu = ups.shape[0]
    out_d = np.empty(nd * nu, dtype=np.int64)
    out_u = np.empty(nd * nu, dtype=np.int64)
    k = 0
    for a in range(nd):
        d = downs[a]
        c = common[a]
        for b in range(nu):
            u = ups[b]
            if (d & u) == 0 and (u & ~c) == 0:
                out_d[k] = d
                out_u[k] = u
                k += 1
    return out_d[:k], out_u[:k]
