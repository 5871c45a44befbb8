"""Structural tests: transversality, paving, isomorphism, minor containment."""
from __future__ import annotations

from collections import Counter
from itertools import combinations

import numpy as np

from .core import (
    TABLE_LIMIT,
    BudgetError,
    Matroid,
    bits,
    cyclic_flats_from_table,
    expand_table,
    popcount,
    popcount_table,
)

MINOR_PATTERN_LIMIT = 8
ANTICHAIN_BUDGET = 2_000_000


# ----------------------------------------------------------------------------
# transversal matroids


def mason_ingleton_slack(m: Matroid, antichain) -> int:
    """Alternating sum of union ranks minus the rank of the intersection.

    Non-negative for every antichain of cyclic flats iff ``m`` is transversal.
    """
    antichain = list(antichain)
    inter = m.ground
    for f in antichain:
        inter &= f
    total = 0
    for k in range(1, len(antichain) + 1):
        sign = 1 if k % 2 else -1
        for sub in combinations(antichain, k):
            u = 0
            for f in sub:
                u |= f
            total += sign * m.rank(u)
    return total - m.rank(inter)


def transversal_violation(m: Matroid, min_size: int = 3):
    """First antichain of cyclic flats (size >= ``min_size``) with negative slack.

    Antichains are grown in order of flat index, keeping the signed union
    terms of every sub-family so each extension costs one pass over them.
    """
    flats = [f for f, _ in m.flats]
    k = len(flats)
    comparable = [[(a & b) in (a, b) for b in flats] for a in flats]
    visited = 0

    def grow(chosen, terms, inter, start):
        nonlocal visited
        for j in range(start, k):
            if any(comparable[i][j] for i in chosen):
                continue
            visited += 1
            if visited > ANTICHAIN_BUDGET:
                raise BudgetError("too many antichains of cyclic flats")
            g = flats[j]
            # new sub-families are the old ones with g added, sign flipped
            new_terms = dict(terms)
            new_terms[g] = new_terms.get(g, 0) + 1
            for u, c in terms.items():
                new_terms[u | g] = new_terms.get(u | g, 0) - c
            new_terms = {u: c for u, c in new_terms.items() if c}
            new_chosen = chosen + [j]
            new_inter = inter & g
            if len(new_chosen) >= min_size:
                rhs = sum(c * m.rank(u) for u, c in new_terms.items())
                if rhs < m.rank(new_inter):
                    return [flats[i] for i in new_chosen]
            found = grow(new_chosen, new_terms, new_inter, j + 1)
            if found:
                return found
        return None

    return grow([], {}, m.ground, 0)


def is_transversal(m: Matroid) -> bool:
    return transversal_violation(m) is None


def is_cotransversal(m: Matroid) -> bool:
    return is_transversal(m.dual())


# ----------------------------------------------------------------------------
# paving


def is_paving(m: Matroid) -> bool:
    """No circuit has fewer than r(M) elements.

    Equivalent to: every nonempty cyclic flat has rank at least r(M) - 1,
    since a cyclic flat A of rank below r(M) - 1 holds a circuit of size at
    most r(A) + 1 < r(M).
    """
    r = m.rank_total
    return all(f == 0 or rf >= r - 1 for f, rf in m.flats)


def is_sparse_paving(m: Matroid) -> bool:
    return is_paving(m) and is_paving(m.dual())


def is_paving_by_circuits(m: Matroid) -> bool:
    """Reference check by direct circuit search (small ground sets only)."""
    return not m.circuits(max_size=m.rank_total - 1)


# ----------------------------------------------------------------------------
# isomorphism


def _twin_classes(m: Matroid):
    """Group elements lying in exactly the same cyclic flats."""
    groups: dict[tuple, list[int]] = {}
    for e in range(m.n):
        key = tuple(i for i, (f, _) in enumerate(m.flats) if f >> e & 1)
        groups.setdefault(key, []).append(e)
    return list(groups.values())


def _signature(m: Matroid, cls: list[int]):
    e = cls[0]
    return (len(cls), tuple(sorted((popcount(f), r) for f, r in m.flats if f >> e & 1)))


def find_isomorphism(m: Matroid, n: Matroid) -> dict[int, int] | None:
    """An element map from ``m`` to ``n`` carrying cyclic flats to cyclic flats.

    Twin classes of ``m`` are matched to twin classes of ``n`` with equal size
    and flat signature; a partial map is kept only if the traces of the flats
    on the mapped classes agree as multisets.
    """
    if m.n != n.n or m.rank_total != n.rank_total or len(m.flats) != len(n.flats):
        return None
    if Counter((popcount(f), r) for f, r in m.flats) != Counter((popcount(f), r) for f, r in n.flats):
        return None
    cm, cn = _twin_classes(m), _twin_classes(n)
    if len(cm) != len(cn):
        return None
    sm = [_signature(m, c) for c in cm]
    sn = [_signature(n, c) for c in cn]
    if Counter(sm) != Counter(sn):
        return None
    # most constrained classes first
    freq = Counter(sm)
    order = sorted(range(len(cm)), key=lambda i: (freq[sm[i]], -len(cm[i])))
    cls_mask_m = [sum(1 << e for e in c) for c in cm]
    cls_mask_n = [sum(1 << e for e in c) for c in cn]
    fm = [(f, r) for f, r in m.flats]
    fn = [(f, r) for f, r in n.flats]

    def consistent(assign):
        # trace of each flat on assigned classes, expressed via images
        tm = Counter()
        for f, r in fm:
            trace = frozenset(assign[i] for i in assign if f & cls_mask_m[i])
            tm[popcount(f), r, trace] += 1
        targets = set(assign.values())
        tn = Counter()
        for g, r in fn:
            trace = frozenset(j for j in targets if g & cls_mask_n[j])
            tn[popcount(g), r, trace] += 1
        return tm == tn

    used = set()
    assign: dict[int, int] = {}

    def search(pos):
        if pos == len(order):
            return True
        i = order[pos]
        for j in range(len(cn)):
            if j in used or sn[j] != sm[i]:
                continue
            assign[i] = j
            used.add(j)
            if consistent(assign) and search(pos + 1):
                return True
            del assign[i]
            used.discard(j)
        return False

    if not search(0):
        return None
    perm = {}
    for i, j in assign.items():
        for a, b in zip(cm[i], cn[j]):
            perm[a] = b
    return perm


def is_isomorphic(m: Matroid, n: Matroid) -> bool:
    return find_isomorphism(m, n) is not None


# ----------------------------------------------------------------------------
# minors


def _profile_key(table: np.ndarray, k: int) -> tuple:
    pc = popcount_table(k).astype(np.int64)
    keys = pc * 128 + table.astype(np.int64)
    return tuple(np.bincount(keys, minlength=(k + 1) * 128).tolist())


def has_minor_isomorphic(m: Matroid, pattern: Matroid) -> bool:
    """Exhaustive search for a minor of ``m`` isomorphic to ``pattern``.

    Every minor is M / C restricted to T with C independent and T u C
    spanning, so we range over kept sets T and independent C of size
    r(M) - r(pattern). Candidates are filtered by their rank profile before
    the isomorphism test.
    """
    k = pattern.n
    if k > MINOR_PATTERN_LIMIT:
        raise BudgetError(f"minor patterns are limited to {MINOR_PATTERN_LIMIT} elements")
    if m.n > TABLE_LIMIT:
        raise BudgetError(f"minor search needs at most {TABLE_LIMIT} elements")
    if k > m.n or pattern.rank_total > m.rank_total:
        return False
    if m.n - k < m.rank_total - pattern.rank_total:
        return False
    table = m.rank_table()
    rp = pattern.rank_total
    csize = m.rank_total - rp
    target = _profile_key(pattern.rank_table(), k)
    tried = set()
    for kept in combinations(range(m.n), k):
        kmask = sum(1 << e for e in kept)
        sub = expand_table(list(kept))
        rest = [e for e in range(m.n) if not kmask >> e & 1]
        for cset in combinations(rest, csize):
            c = sum(1 << e for e in cset)
            if table[c] != csize or table[c | kmask] != m.rank_total:
                continue
            minor_table = (table[sub | c] - csize).astype(np.int8)
            key = _profile_key(minor_table, k)
            if key != target:
                continue
            sig = minor_table.tobytes()
            if sig in tried:
                continue
            tried.add(sig)
            cand = Matroid.from_rank_table(minor_table, pattern.labels)
            if is_isomorphic(cand, pattern):
                return True
    return False
