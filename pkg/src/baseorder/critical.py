"""Critical graphs, their obstructions, and the matroids built from them.

A critical graph of rank r is an orientation of K_{s,t} (s + t = r + 1,
s, t >= 2) with no source or sink, padded with isolated vertices so that each
side has r vertices. It is stored as an s x t boolean matrix: ``O[i][j]`` is
True for the edge x_i -> y_j and False for y_j -> x_i.

Elements are labelled a1..ar (indices 0..r-1) and b1..br (indices r..2r-1);
the supports X and Y occupy the lowest indices of each side.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement, permutations

import numpy as np

from .core import (
    BudgetError,
    DomainError,
    InvariantError,
    Matroid,
    Presentation,
    PresentationError,
    bits,
    mask_of,
    popcount,
    validate_presentation,
)

MIN_RANK, MAX_RANK = 3, 9


@dataclass(frozen=True)
class CriticalGraph:
    r: int
    s: int
    t: int
    orientation: tuple[tuple[bool, ...], ...]

    def __post_init__(self):
        if self.s + self.t != self.r + 1 or self.s < 2 or self.t < 2:
            raise DomainError(f"bad shape s={self.s}, t={self.t} for rank {self.r}")
        if len(self.orientation) != self.s or any(len(row) != self.t for row in self.orientation):
            raise DomainError("orientation must be an s x t matrix")
        for i, row in enumerate(self.orientation):
            if all(row) or not any(row):
                raise DomainError(f"x{i + 1} is a source or sink")
        for j in range(self.t):
            col = [row[j] for row in self.orientation]
            if all(col) or not any(col):
                raise DomainError(f"y{j + 1} is a source or sink")

    @classmethod
    def from_rows(cls, rows) -> "CriticalGraph":
        rows = tuple(tuple(bool(v) for v in row) for row in rows)
        s, t = len(rows), len(rows[0])
        return cls(s + t - 1, s, t, rows)

    # element indices
    def a(self, i: int) -> int:
        return i

    def b(self, j: int) -> int:
        return self.r + j

    @property
    def n(self) -> int:
        return 2 * self.r

    @property
    def labels(self) -> list[str]:
        return [f"a{i + 1}" for i in range(self.r)] + [f"b{j + 1}" for j in range(self.r)]

    @property
    def side_a(self) -> int:
        return (1 << self.r) - 1

    @property
    def side_b(self) -> int:
        return ((1 << self.r) - 1) << self.r

    @property
    def x_set(self) -> int:
        return (1 << self.s) - 1

    @property
    def y_set(self) -> int:
        return ((1 << self.t) - 1) << self.r

    def reversed(self) -> "CriticalGraph":
        """Every edge turned around."""
        return CriticalGraph(self.r, self.s, self.t,
                             tuple(tuple(not v for v in row) for row in self.orientation))

    def swapped(self) -> "CriticalGraph":
        """The same digraph read with the sides exchanged (needs s == t to keep shape)."""
        rows = tuple(tuple(not self.orientation[i][j] for i in range(self.s))
                     for j in range(self.t))
        return CriticalGraph(self.r, self.t, self.s, rows)

    def columns(self) -> tuple[int, ...]:
        return tuple(sum(1 << i for i in range(self.s) if self.orientation[i][j])
                     for j in range(self.t))

    def canonical_key(self) -> int:
        return int(canonical_keys(np.array([self.columns()], dtype=np.int64), self.s)[0])

    def canonical_form(self) -> "CriticalGraph":
        return graph_from_key(self.canonical_key(), self.r, self.s, self.t)

    def to_dict(self) -> dict:
        return {"r": self.r, "s": self.s, "t": self.t,
                "orientation": [list(row) for row in self.orientation]}

    @classmethod
    def from_dict(cls, d: dict) -> "CriticalGraph":
        g = cls.from_rows(d["orientation"])
        if (g.r, g.s, g.t) != (d["r"], d["s"], d["t"]):
            raise DomainError("shape fields disagree with the orientation matrix")
        return g

    def expected_edges(self) -> set:
        """Edge set in the form produced by ExchangeDigraph.edges()."""
        out = set()
        for i in range(self.s):
            for j in range(self.t):
                if self.orientation[i][j]:
                    out.add(("A", self.a(i), self.b(j)))
                else:
                    out.add(("B", self.b(j), self.a(i)))
        return out


# ----------------------------------------------------------------------------
# canonical forms and enumeration

_PERM_CACHE: dict[int, np.ndarray] = {}


def _bit_perms(s: int) -> np.ndarray:
    """For every permutation of s rows, the induced map on s-bit column values."""
    if s not in _PERM_CACHE:
        vals = np.arange(1 << s, dtype=np.int64)
        rows = []
        for p in permutations(range(s)):
            img = np.zeros(1 << s, dtype=np.int64)
            for i, pi in enumerate(p):
                img |= ((vals >> i) & 1) << pi
            rows.append(img)
        _PERM_CACHE[s] = np.array(rows)
    return _PERM_CACHE[s]


def _encode(cols: np.ndarray, s: int) -> np.ndarray:
    """Pack sorted column tuples into integers, first column most significant."""
    key = np.zeros(cols.shape[:-1], dtype=np.int64)
    for j in range(cols.shape[-1]):
        key = (key << s) | cols[..., j]
    return key


def _min_over_rows(cols: np.ndarray, s: int) -> np.ndarray:
    perms = _bit_perms(s)
    best = None
    for img in perms:
        key = _encode(np.sort(img[cols], axis=1), s)
        best = key if best is None else np.minimum(best, key)
    return best


def _swap_columns(cols: np.ndarray, s: int) -> np.ndarray:
    """Columns of the side-swapped matrix (not O) transposed; needs s == t."""
    t = cols.shape[1]
    out = np.zeros_like(cols)
    for i in range(s):
        for j in range(t):
            bit = 1 - ((cols[:, j] >> i) & 1)
            out[:, i] |= bit << j
    return out


def canonical_keys(cols: np.ndarray, s: int) -> np.ndarray:
    """Canonical key per row of ``cols`` (an N x t array of column values).

    The key is the least packed sorted column tuple over all row permutations,
    and over the side swap when s == t.
    """
    key = _min_over_rows(cols, s)
    if cols.shape[1] == s:
        key = np.minimum(key, _min_over_rows(_swap_columns(cols, s), s))
    return key


def graph_from_key(key: int, r: int, s: int, t: int) -> CriticalGraph:
    cols = []
    for _ in range(t):
        cols.append(key & ((1 << s) - 1))
        key >>= s
    cols.reverse()
    rows = tuple(tuple(bool(c >> i & 1) for c in cols) for i in range(s))
    return CriticalGraph(r, s, t, rows)


def shapes(r: int) -> list[tuple[int, int]]:
    return [(s, r + 1 - s) for s in range(2, (r + 1) // 2 + 1)]


def enumerate_shape(s: int, t: int, chunk: int = 200_000) -> list[CriticalGraph]:
    """Isomorphism classes of source/sink-free orientations of K_{s,t}."""
    full = (1 << s) - 1
    values = list(range(1, full))  # columns that are neither source nor sink
    keys = set()
    it = combinations_with_replacement(values, t)
    while True:
        block = np.array([c for _, c in zip(range(chunk), it)], dtype=np.int64)
        if block.size == 0:
            break
        union = np.bitwise_or.reduce(block, axis=1)
        inter = np.bitwise_and.reduce(block, axis=1)
        # rows must be neither all-out (in every column) nor all-in (in none)
        ok = (union == full) & (inter == 0)
        block = block[ok]
        if len(block):
            keys.update(canonical_keys(block, s).tolist())
    r = s + t - 1
    return [graph_from_key(k, r, s, t) for k in sorted(keys)]


def enumerate_critical_graphs(r: int) -> list[CriticalGraph]:
    """One canonical representative per class, ordered by (s, canonical key)."""
    if not MIN_RANK <= r <= MAX_RANK:
        raise BudgetError(f"enumeration supports {MIN_RANK} <= r <= {MAX_RANK}")
    out = []
    for s, t in shapes(r):
        out.extend(enumerate_shape(s, t))
    return out


# ----------------------------------------------------------------------------
# obstructions


@dataclass(frozen=True)
class Obstruction:
    k_side: int  # subset of X, element indices
    l_side: int  # subset of Y, element indices

    def names(self, d: CriticalGraph) -> tuple[list[str], list[str]]:
        labels = d.labels
        return [labels[i] for i in bits(self.k_side)], [labels[i] for i in bits(self.l_side)]


def is_obstruction(d: CriticalGraph, k: int, l: int) -> bool:
    ks = [i for i in range(d.s) if k >> d.a(i) & 1]
    ls = [j for j in range(d.t) if l >> d.b(j) & 1]
    if not (0 < len(ks) < d.s and 0 < len(ls) < d.t):
        return False
    o = d.orientation
    if any(not o[i][j] for i in ks for j in range(d.t) if j not in ls):
        return False
    if any(o[i][j] for j in ls for i in range(d.s) if i not in ks):
        return False
    return True


def find_obstructions(d: CriticalGraph, prune: bool = True):
    """All obstructions plus the component-wise minimum and maximum (or None).

    With ``prune`` only K, L with |K|, |L|, |X-K|, |Y-L| >= 2 are examined,
    which loses nothing since every obstruction has that shape.
    """
    lo = 2 if prune else 1
    found = []
    ks = [m for m in range(1, 1 << d.s) if lo <= popcount(m) <= d.s - lo]
    ls = [m for m in range(1, 1 << d.t) if lo <= popcount(m) <= d.t - lo]
    for km in ks:
        k = mask_of(d.a(i) for i in bits(km))
        for lm in ls:
            l = mask_of(d.b(j) for j in bits(lm))
            if is_obstruction(d, k, l):
                found.append(Obstruction(k, l))
    if not found:
        return found, None, None
    kmin = lmin = ~0
    kmax = lmax = 0
    for ob in found:
        kmin &= ob.k_side
        lmin &= ob.l_side
        kmax |= ob.k_side
        lmax |= ob.l_side
    lo_ob, hi_ob = Obstruction(kmin, lmin), Obstruction(kmax, lmax)
    if lo_ob not in found or hi_ob not in found:
        raise InvariantError("obstructions are not closed under meet and join")
    return found, lo_ob, hi_ob


# ----------------------------------------------------------------------------
# cyclic-flat presentations


def circuit_a(d: CriticalGraph, j: int) -> int:
    """C(b_j, A): b_j with every a that b_j has no edge into."""
    out = (1 << d.b(j)) | (d.side_a & ~d.x_set)
    if j >= d.t:
        return out | d.x_set
    for i in range(d.s):
        if d.orientation[i][j]:
            out |= 1 << d.a(i)
    return out


def circuit_b(d: CriticalGraph, i: int) -> int:
    """C(a_i, B): a_i with every b that a_i has no edge into."""
    out = (1 << d.a(i)) | (d.side_b & ~d.y_set)
    if i >= d.s:
        return out | d.y_set
    for j in range(d.t):
        if not d.orientation[i][j]:
            out |= 1 << d.b(j)
    return out


def _closure_family(d: CriticalGraph, side: int, circ: list[int], other: int):
    """{ D(S) : S subset of side }, D(S) = C(S) plus every c with C(c) - c inside C(S)."""
    elems = bits(side)
    fam = {}
    for sub in range(1 << len(elems)):
        c = 0
        for idx in bits(sub):
            c |= circ[idx]
        dset = c
        for idx, e in enumerate(elems):
            if circ[idx] & ~(1 << e) & ~c == 0:
                dset |= 1 << e
        # re-check D(S) = C(D(S) & side)
        back = 0
        for idx, e in enumerate(elems):
            if dset >> e & 1:
                back |= circ[idx]
        if back != dset:
            raise InvariantError("closure is not a fixed point")
        fam[dset] = popcount(dset & other)
    return fam


@dataclass(frozen=True)
class ZDeltaPresentation:
    z_a: Presentation
    z_b: Presentation
    merged: Presentation  # Z_A u Z_B
    p_set: int | None
    q_set: int | None

    @property
    def presentation(self) -> Presentation:
        """Z_A u Z_B, with P and Q adjoined when the graph has an obstruction."""
        if self.p_set is None:
            return self.merged
        r = max(rk for _, rk in self.merged.flats)
        extra = [(self.p_set, popcount(self.p_set) - 1), (self.q_set, r - 1)]
        return Presentation.build(self.merged.n, list(self.merged.flats) + extra,
                                  self.merged.labels)


def build_z_delta(d: CriticalGraph) -> ZDeltaPresentation:
    labels = d.labels
    za = _closure_family(d, d.side_b, [circuit_a(d, j) for j in range(d.r)], d.side_a)
    zb = _closure_family(d, d.side_a, [circuit_b(d, i) for i in range(d.r)], d.side_b)
    shared = set(za) & set(zb)
    full = d.side_a | d.side_b
    if shared != {0, full}:
        raise InvariantError("the two families share more than the bottom and top")
    merged = {**za, **zb}
    p = q = None
    _, lo, hi = find_obstructions(d)
    if lo is not None:
        p = lo.k_side | lo.l_side
        q = hi.k_side | hi.l_side | (d.side_a & ~d.x_set) | (d.side_b & ~d.y_set)
    return ZDeltaPresentation(
        Presentation.build(d.n, za.items(), labels),
        Presentation.build(d.n, zb.items(), labels),
        Presentation.build(d.n, merged.items(), labels),
        p, q)


def build_m_delta(d: CriticalGraph) -> Matroid:
    """The matroid on A u B whose cyclic flats are Z_Delta (with P, Q if obstructed)."""
    z = build_z_delta(d)
    try:
        return Matroid(z.presentation)
    except PresentationError as exc:
        raise InvariantError(f"cyclic-flat family failed validation: {exc}") from exc


# ----------------------------------------------------------------------------
# reports


def conjecture_report(d: CriticalGraph, jobs: int = 1) -> dict:
    from .exchange import certify_excluded_minor

    m = build_m_delta(d)
    obstructed = find_obstructions(d)[1] is not None
    bo = certify_excluded_minor(m, "bo", jobs=jobs)
    sbo = certify_excluded_minor(m, "sbo", jobs=jobs)
    expected_sbo = not obstructed
    return {
        "graph": d.to_dict(),
        "has_obstruction": obstructed,
        "excluded_minor_bo": bo.certified,
        "excluded_minor_sbo": sbo.certified,
        "consistent": bo.certified and sbo.certified == expected_sbo,
        "note": "obstructed graphs use the family with P and Q adjoined" if obstructed else None,
    }


# ----------------------------------------------------------------------------
# fixtures drawn as in the standard examples


def delta3() -> CriticalGraph:
    """The directed 4-cycle; its matroid is M(K4)."""
    return CriticalGraph.from_rows([[True, False], [False, True]])


def delta5() -> CriticalGraph:
    return CriticalGraph.from_rows([
        [True, False, True],
        [False, True, False],
        [True, True, False],
    ])


def delta7() -> CriticalGraph:
    """Smallest critical graph with an obstruction."""
    return CriticalGraph.from_rows([
        [True, False, False, False],
        [False, True, False, False],
        [True, True, True, False],
        [True, True, False, True],
    ])


def z_delta_report(d: CriticalGraph):
    """Validation report for Z_A u Z_B without P and Q."""
    return validate_presentation(build_z_delta(d).merged)
