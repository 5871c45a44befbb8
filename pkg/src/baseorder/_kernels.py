"""Compiled inner loops for exhaustive basis-pair sweeps.

All kernels read a 0/1 table ``isb`` over every subset bitmask of the ground
set (1 = basis). Bases are int64 bitmasks. Scratch space lives in an int64
work array ``w`` of shape (8, 64) plus a 64 x 64 ``adm`` matrix so the inner
loop allocates nothing.
"""
import numpy as np
from numba import njit

# rows of the work array
DA, DB, MATCH, SEEN, STACK, NXT, VIA, SIGMA = range(8)
USED, CHOICE = SEEN, NXT  # reused once matching is done


def workspace():
    return np.zeros((8, 64), dtype=np.int64), np.zeros((64, 64), dtype=np.uint8)


@njit(cache=True)
def _popcount(x):
    c = 0
    while x:
        x &= x - 1
        c += 1
    return c


@njit(cache=True)
def _elements(mask, out):
    d = 0
    e = 0
    while mask:
        if mask & 1:
            out[d] = e
            d += 1
        mask >>= 1
        e += 1
    return d


@njit(cache=True)
def _perfect_matching(adm, d, w):
    """Kuhn's augmenting paths on a d x d 0/1 matrix; True iff perfect."""
    match_b, seen, stack, nxt, via = w[MATCH], w[SEEN], w[STACK], w[NXT], w[VIA]
    for j in range(d):
        match_b[j] = -1
    for root in range(d):
        for j in range(d):
            seen[j] = 0
        # iterative DFS: stack of left vertices, nxt = next column to try
        depth = 0
        stack[0] = root
        nxt[0] = 0
        found = False
        while depth >= 0:
            u = stack[depth]
            advanced = False
            while nxt[depth] < d:
                j = nxt[depth]
                nxt[depth] += 1
                if adm[u, j] and not seen[j]:
                    seen[j] = 1
                    via[depth] = j
                    if match_b[j] == -1:
                        found = True
                    else:
                        depth += 1
                        stack[depth] = match_b[j]
                        nxt[depth] = 0
                    advanced = True
                    break
            if found:
                break
            if not advanced:
                depth -= 1
        if not found:
            return False
        for lvl in range(depth, -1, -1):
            match_b[via[lvl]] = stack[lvl]
    return True


@njit(cache=True)
def _k_ordering(a, b, d, kp, isb, w, adm):
    """Backtracking search for a kp-exchange-ordering of the differences.

    Position p is given an image only after every subset X of positions <= p
    that contains p and has at most kp members passes on both sides.
    """
    da, db, sigma, used, choice = w[DA], w[DB], w[SIGMA], w[USED], w[CHOICE]
    for i in range(d):
        used[i] = 0
    choice[0] = -1
    p = 0
    while p >= 0:
        if p == d:
            return True
        q = choice[p] + 1
        if choice[p] >= 0:
            used[choice[p]] = 0
        placed = False
        while q < d:
            if not used[q] and adm[p, q]:
                ok = True
                # subsets S of earlier positions with |S| <= kp - 1
                for s in range(1, 1 << p):
                    if _popcount(s) > kp - 1:
                        continue
                    rem = np.int64(1) << da[p]
                    add = np.int64(1) << db[q]
                    t = s
                    i = 0
                    while t:
                        if t & 1:
                            rem |= np.int64(1) << da[i]
                            add |= np.int64(1) << db[sigma[i]]
                        t >>= 1
                        i += 1
                    if not isb[(a & ~rem) | add] or not isb[(b & ~add) | rem]:
                        ok = False
                        break
                if ok:
                    choice[p] = q
                    sigma[p] = q
                    used[q] = 1
                    placed = True
                    break
            q += 1
        if placed:
            p += 1
            if p < d:
                choice[p] = -1
        else:
            choice[p] = -1
            p -= 1
    return False


@njit(cache=True)
def _pair(a, b, k, isb, w, adm):
    d = _elements(a & ~b, w[DA])
    _elements(b & ~a, w[DB])
    # the complement trick: X and (A-B) - X give the same two exchanges
    kp = min(k, d // 2)
    if kp == 0:
        return True
    da, db = w[DA], w[DB]
    for p in range(d):
        x = np.int64(1) << da[p]
        for q in range(d):
            y = np.int64(1) << db[q]
            adm[p, q] = isb[(a & ~x) | y] and isb[(b & ~y) | x]
    if not _perfect_matching(adm, d, w):
        return False
    if kp == 1:
        return True
    return _k_ordering(a, b, d, kp, isb, w, adm)


@njit(cache=True)
def pair_has_ordering(a, b, k, isb):
    """True iff bases a, b admit a k-exchange-ordering fixing a & b."""
    w = np.zeros((8, 64), dtype=np.int64)
    adm = np.zeros((64, 64), dtype=np.uint8)
    return _pair(a, b, k, isb, w, adm)


@njit(cache=True)
def sweep(bases, isb, k, count_all):
    """Scan unordered basis pairs i < j in order.

    Returns (number of failing pairs, i, j) for the first failure; stops at
    the first one unless ``count_all``.
    """
    w = np.zeros((8, 64), dtype=np.int64)
    adm = np.zeros((64, 64), dtype=np.uint8)
    nb = bases.shape[0]
    fails = 0
    fi = -1
    fj = -1
    for i in range(nb):
        for j in range(i + 1, nb):
            if not _pair(bases[i], bases[j], k, isb, w, adm):
                if fails == 0:
                    fi = i
                    fj = j
                fails += 1
                if not count_all:
                    return fails, fi, fj
    return fails, fi, fj


@njit(cache=True)
def sweep_disjoint(bases, isb, k, full):
    """Failing pairs (i, j), i < j, among complementary bases."""
    w = np.zeros((8, 64), dtype=np.int64)
    adm = np.zeros((64, 64), dtype=np.uint8)
    nb = bases.shape[0]
    out = np.full((nb, 2), -1, dtype=np.int64)
    c = 0
    for i in range(nb):
        comp = full & ~bases[i]
        for j in range(i + 1, nb):
            if bases[j] == comp and not _pair(bases[i], bases[j], k, isb, w, adm):
                out[c, 0] = i
                out[c, 1] = j
                c += 1
    return out[:c]


@njit(cache=True)
def _kl_search(a, b, r, k, l, isb, ea, eb, sigma, used, choice):
    """Bijection from positions of a to positions of b, one-sided (k, l) condition."""
    for i in range(r):
        used[i] = 0
    choice[0] = -1
    p = 0
    while p >= 0:
        if p == r:
            return True
        if choice[p] >= 0:
            used[choice[p]] = 0
        q = choice[p] + 1
        placed = False
        while q < r:
            if not used[q]:
                ok = True
                for s in range(1 << p):
                    size = _popcount(s) + 1
                    # large subsets are checked once every member is placed
                    if size > k and size < r - l:
                        continue
                    rem = np.int64(1) << ea[p]
                    add = np.int64(1) << eb[q]
                    t = s
                    i = 0
                    while t:
                        if t & 1:
                            rem |= np.int64(1) << ea[i]
                            add |= np.int64(1) << eb[sigma[i]]
                        t >>= 1
                        i += 1
                    x = (a & ~rem) | add
                    if _popcount(x) != r or not isb[x]:
                        ok = False
                        break
                if ok:
                    choice[p] = q
                    sigma[p] = q
                    used[q] = 1
                    placed = True
                    break
            q += 1
        if placed:
            p += 1
            if p < r:
                choice[p] = -1
        else:
            choice[p] = -1
            p -= 1
    return False


@njit(cache=True)
def kl_sweep(bases, isb, r, k, l):
    """First ordered pair (i, j) with no (k, l)-ordering, or (-1, -1)."""
    w = np.zeros((8, 64), dtype=np.int64)
    nb = bases.shape[0]
    for i in range(nb):
        _elements(bases[i], w[0])
        for j in range(nb):
            if i == j:
                continue
            _elements(bases[j], w[1])
            if not _kl_search(bases[i], bases[j], r, k, l, isb, w[0], w[1], w[2], w[3], w[4]):
                return i, j
    return -1, -1


@njit(cache=True)
def kl_pair(a, b, r, k, l, isb):
    w = np.zeros((8, 64), dtype=np.int64)
    _elements(a, w[0])
    _elements(b, w[1])
    return _kl_search(a, b, r, k, l, isb, w[0], w[1], w[2], w[3], w[4])
