"""Operations that build new matroids: sums, extensions, induction, relaxation.

Everything that cannot be expressed directly on cyclic flats goes through a
rank table, so those constructions are limited to ``TABLE_LIMIT`` elements.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (
    TABLE_LIMIT,
    BudgetError,
    DomainError,
    Matroid,
    Presentation,
    bits,
    cyclic_flats_from_table,
    popcount,
)


def _fresh_labels(taken, wanted):
    out = []
    used = set(taken)
    for lab in wanted:
        lab = str(lab)
        while lab in used:
            lab += "'"
        used.add(lab)
        out.append(lab)
    return out


def direct_sum(m: Matroid, n: Matroid) -> Matroid:
    """M (+) N; colliding labels of ``n`` get a prime suffix."""
    labels = list(m.labels) + _fresh_labels(m.labels, n.labels)
    shift = m.n
    flats = [(f | g << shift, rf + rg) for f, rf in m.flats for g, rg in n.flats]
    return Matroid(Presentation.build(m.n + n.n, flats, labels), validate=False)


def _need_table(k: int, what: str):
    if k > TABLE_LIMIT:
        raise BudgetError(f"{what} needs at most {TABLE_LIMIT} elements, got {k}")


def _new_label(m: Matroid, e) -> str:
    if e is None:
        return _fresh_labels(m.labels, ["e"])[0]
    e = str(e)
    if e in m.labels:
        raise DomainError(f"element {e!r} is already in the ground set")
    return e


def simultaneous_extensions(m: Matroid, additions) -> Matroid:
    """Add each new element ``e_i`` freely to its target set ``F_i``.

    The new elements take indices ``n, n+1, ...`` in the order given. Ranks
    follow r(X u e_J) = min over I in J of r(X u F_I) + |J - I|, computed by a
    subset recursion over J.
    """
    additions = [(str(e), int(f)) for e, f in additions]
    new = [e for e, _ in additions]
    if len(set(new)) != len(new):
        raise DomainError("new elements must be distinct")
    for e in new:
        _new_label(m, e)
    for _, f in additions:
        m._check(f)
    k = len(additions)
    _need_table(m.n + k, "simultaneous extension")
    base = m.rank_table().astype(np.int16)
    masks = np.arange(1 << m.n, dtype=np.int64)
    union = [0] * (1 << k)
    for j in range(1, 1 << k):
        low = (j & -j).bit_length() - 1
        union[j] = union[j & (j - 1)] | additions[low][1]
    rows = np.empty((1 << k, 1 << m.n), dtype=np.int16)
    for j in range(1 << k):
        best = base[masks | union[j]]
        for i in bits(j):
            np.minimum(best, rows[j ^ 1 << i] + 1, out=best)
        rows[j] = best
    table = rows.reshape(-1).astype(np.int8)
    return Matroid.from_rank_table(table, list(m.labels) + new)


def principal_extension(m: Matroid, y: int, e=None) -> Matroid:
    """M +_Y e: add a new element freely to the flat spanned by ``y``."""
    return simultaneous_extensions(m, [(_new_label(m, e), y)])


def free_extension(m: Matroid, e=None) -> Matroid:
    return principal_extension(m, m.ground, e)


def truncation(m: Matroid) -> Matroid:
    """The truncation, with rank min(r(X), r(M) - 1)."""
    if m.rank_total < 1:
        raise DomainError("cannot truncate a rank-0 matroid")
    _need_table(m.n, "truncation")
    table = np.minimum(m.rank_table(), m.rank_total - 1).astype(np.int8)
    return Matroid.from_rank_table(table, m.labels)


@dataclass(frozen=True)
class BipartiteGraph:
    """New elements ``left`` joined to elements of an existing matroid.

    ``adjacency[i]`` is the bitmask of right-hand neighbours of ``left[i]``.
    """

    left: tuple[str, ...]
    adjacency: tuple[int, ...]

    def neighbours(self, x: int) -> int:
        out = 0
        for i in bits(x):
            out |= self.adjacency[i]
        return out


def induce_bipartite(m: Matroid, g: BipartiteGraph) -> Matroid:
    """Matroid on ``g.left`` whose independent sets match to independents of ``m``."""
    left = [str(x) for x in g.left]
    if len(set(left)) != len(left):
        raise DomainError("left labels must be distinct")
    if set(left) & set(m.labels):
        raise DomainError("left and right ground sets overlap")
    if len(g.adjacency) != len(left):
        raise DomainError("one neighbourhood per left element is required")
    for a in g.adjacency:
        m._check(a)
    k = len(left)
    _need_table(k, "induced matroid")
    # f(X) = min(r(N(X)), f(X - x) + 1)
    f = np.zeros(1 << k, dtype=np.int16)
    nb = [0] * (1 << k)
    for x in range(1, 1 << k):
        low = (x & -x).bit_length() - 1
        nb[x] = nb[x & (x - 1)] | g.adjacency[low]
        best = m.rank(nb[x])
        for i in bits(x):
            best = min(best, int(f[x ^ 1 << i]) + 1)
        f[x] = best
    return Matroid.from_rank_table(f.astype(np.int8), left)


def parallel_connection(m: Matroid, n: Matroid, p) -> Matroid:
    """P(M, N) at the common element ``p``: ((M (+) N') +_{p,p'} e) / e \\ p'."""
    p = str(p)
    shared = set(m.labels) & set(n.labels)
    if shared != {p}:
        raise DomainError(f"ground sets must meet exactly in {{{p}}}, they share {sorted(shared)}")
    pn = _fresh_labels(set(m.labels) | set(n.labels), [p + "_N"])[0]
    n2 = n.relabel([pn if x == p else x for x in n.labels])
    s = direct_sum(m, n2)
    e = _fresh_labels(s.labels, ["e"])[0]
    ext = principal_extension(s, s.mask([p, pn]), e)
    return ext.minor(contract=ext.mask([e]), delete=ext.mask([pn]))


def relax_circuit_hyperplane(m: Matroid, x: int) -> Matroid:
    """Declare the circuit-hyperplane ``x`` a basis.

    Only the rank of ``x`` changes, so the cyclic flats are those of ``m``
    without ``x``; the result is re-validated.
    """
    m._check(x)
    if not (m.is_circuit(x) and m.is_hyperplane(x)):
        raise DomainError(f"{m.describe(x)} is not a circuit-hyperplane")
    flats = [(f, r) for f, r in m.flats if f != x]
    return Matroid(Presentation.build(m.n, flats, m.labels))


def freer_than(n: Matroid, m: Matroid) -> bool:
    """True iff r_m(X) <= r_n(X) for all X, checked on the cyclic flats of ``n``."""
    if n.n != m.n:
        raise DomainError("ground sets differ")
    return all(m.rank(f) <= r for f, r in n.flats)


def graphic_matroid(edges, labels=None) -> Matroid:
    """Cycle matroid of a multigraph given as a list of vertex pairs."""
    k = len(edges)
    _need_table(k, "graphic matroid")
    if labels is None:
        labels = [f"{u}{v}" for u, v in edges]
    verts = sorted({v for e in edges for v in e}, key=str)
    pos = {v: i for i, v in enumerate(verts)}

    def rank(x):
        parent = list(range(len(verts)))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        r = 0
        for i in bits(x):
            u, v = find(pos[edges[i][0]]), find(pos[edges[i][1]])
            if u != v:
                parent[u] = v
                r += 1
        return r

    return Matroid.from_rank_function(k, rank, labels)


def sparse_paving(r: int, n: int, hyperplanes, labels=None) -> Matroid:
    """Rank-r matroid whose circuit-hyperplanes are the given r-sets."""
    hyperplanes = list(hyperplanes)
    for h in hyperplanes:
        if popcount(h) != r:
            raise DomainError("circuit-hyperplanes of a sparse paving matroid have r elements")
    full = (1 << n) - 1
    if not hyperplanes or n >= r + 2 and r >= 2:
        return Matroid.from_flats(n, [(0, 0), (full, r)] + [(h, r - 1) for h in hyperplanes],
                                  labels)
    # a loop or a coloop appears, so the empty set or E stops being cyclic

    def rank(x):
        return min([popcount(x), r] + [r - 1 + popcount(x & ~h) for h in hyperplanes])

    return Matroid.from_rank_function(n, rank, labels)
