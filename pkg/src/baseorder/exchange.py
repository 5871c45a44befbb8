"""Basis-exchange digraphs and the base-orderability classifiers.

For bases A and B an exchange-ordering is a bijection s: A -> B such that
(A - x) u s(x) and (B - s(x)) u x are bases for every x; a k-exchange-ordering
asks the same for every subset X of A with |X| <= k.
"""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations, permutations

import numpy as np

from . import _kernels
from .core import (
    TABLE_LIMIT,
    BudgetError,
    DomainError,
    InvariantError,
    Matroid,
    MatroidError,
    bits,
    mask_of,
    popcount,
)


class PreconditionError(MatroidError, ValueError):
    pass


# ----------------------------------------------------------------------------
# digraphs


@dataclass(frozen=True)
class ExchangeDigraph:
    """Edges (a, b): (B - b) u a is not a basis; edges (b, a): (A - a) u b is not.

    A and B are treated as disjoint vertex copies even when they overlap.
    ``edges_ab[a]`` is the bitmask of heads b, ``edges_ba[b]`` of heads a.
    """

    basis_a: int
    basis_b: int
    edges_ab: dict
    edges_ba: dict

    def has_ab(self, a: int, b: int) -> bool:
        return bool(self.edges_ab[a] >> b & 1)

    def has_ba(self, b: int, a: int) -> bool:
        return bool(self.edges_ba[b] >> a & 1)

    def edge_count(self) -> int:
        return sum(popcount(v) for v in self.edges_ab.values()) + \
            sum(popcount(v) for v in self.edges_ba.values())

    def admissible(self, a: int, b: int) -> bool:
        return not self.has_ab(a, b) and not self.has_ba(b, a)

    def reversed(self) -> "ExchangeDigraph":
        """Same vertices, every edge turned around."""
        ab = {a: 0 for a in bits(self.basis_a)}
        ba = {b: 0 for b in bits(self.basis_b)}
        for b, heads in self.edges_ba.items():
            for a in bits(heads):
                ab[a] |= 1 << b
        for a, heads in self.edges_ab.items():
            for b in bits(heads):
                ba[b] |= 1 << a
        return ExchangeDigraph(self.basis_a, self.basis_b, ab, ba)

    def edges(self) -> set:
        out = set()
        for a, heads in self.edges_ab.items():
            out.update(("A", a, b) for b in bits(heads))
        for b, heads in self.edges_ba.items():
            out.update(("B", b, a) for a in bits(heads))
        return out


def _require_basis(m: Matroid, x: int, name: str):
    m._check(x)
    if not m.is_basis(x):
        raise DomainError(f"{name} = {m.describe(x)} is not a basis")


def exchange_digraph(m: Matroid, a: int, b: int) -> ExchangeDigraph:
    _require_basis(m, a, "a")
    _require_basis(m, b, "b")
    ab = {}
    for x in bits(a):
        ab[x] = mask_of(y for y in bits(b) if not m.is_basis((b & ~(1 << y)) | 1 << x))
    ba = {}
    for y in bits(b):
        ba[y] = mask_of(x for x in bits(a) if not m.is_basis((a & ~(1 << x)) | 1 << y))
    return ExchangeDigraph(a, b, ab, ba)


# ----------------------------------------------------------------------------
# witnesses


@dataclass(frozen=True)
class ExchangeOrdering:
    basis_a: int
    basis_b: int
    map: dict  # element of basis_a -> element of basis_b
    strength: int

    def inverse(self) -> "ExchangeOrdering":
        return ExchangeOrdering(self.basis_b, self.basis_a,
                                {v: u for u, v in self.map.items()}, self.strength)

    def verify(self, m: Matroid, k: int | None = None) -> bool:
        """Recheck both exchange conditions for every |X| <= k."""
        if k is None:
            k = self.strength
        a, b, s = self.basis_a, self.basis_b, self.map
        if sorted(s) != bits(a) or sorted(s.values()) != bits(b):
            return False
        if any(s[x] != x for x in bits(a & b)):
            return False
        elems = bits(a)
        for size in range(1, min(k, len(elems)) + 1):
            for xs in combinations(elems, size):
                x = mask_of(xs)
                sx = mask_of(s[e] for e in xs)
                if not (m.is_basis((a & ~x) | sx) and m.is_basis((b & ~sx) | x)):
                    return False
        return True

    def to_dict(self, m: Matroid) -> dict:
        return {"kind": "ordering", "strength": self.strength,
                "map": {m.labels[u]: m.labels[v] for u, v in sorted(self.map.items())}}


@dataclass(frozen=True)
class BlockingSubgraph:
    """Sides X of A and Y of B, |X| + |Y| = r + 1, no admissible cross pair.

    Every cross pair carries at least one directed edge (both directions can
    occur when the pair straddles a direct sum).
    """

    basis_a: int
    basis_b: int
    x_side: int
    y_side: int

    def verify(self, m: Matroid, digraph: ExchangeDigraph | None = None) -> bool:
        if digraph is None:
            digraph = exchange_digraph(m, self.basis_a, self.basis_b)
        s, t = popcount(self.x_side), popcount(self.y_side)
        if s + t != m.rank_total + 1 or s < 2 or t < 2:
            return False
        if self.x_side & ~self.basis_a or self.y_side & ~self.basis_b:
            return False
        return all(not digraph.admissible(x, y)
                   for x in bits(self.x_side) for y in bits(self.y_side))

    def is_orientation(self, digraph: ExchangeDigraph) -> bool:
        """True when every cross pair carries exactly one edge."""
        return all(digraph.has_ab(x, y) != digraph.has_ba(y, x)
                   for x in bits(self.x_side) for y in bits(self.y_side))

    def to_dict(self, m: Matroid) -> dict:
        return {"kind": "blocking", "x_side": m.names(self.x_side),
                "y_side": m.names(self.y_side)}


# ----------------------------------------------------------------------------
# single pairs


def _max_matching(adj: dict, left: list, right: list):
    """Augmenting-path maximum matching; adj[u] is a list of right vertices."""
    match_r = {}

    def augment(u, seen):
        for v in adj[u]:
            if v in seen:
                continue
            seen.add(v)
            if v not in match_r or augment(match_r[v], seen):
                match_r[v] = u
                return True
        return False

    for u in left:
        augment(u, set())
    return {u: v for v, u in match_r.items()}


def has_exchange_ordering(m: Matroid, a: int, b: int):
    """Decide whether a and b have an exchange-ordering.

    Returns (True, ExchangeOrdering) from a perfect matching of admissible
    pairs, or (False, BlockingSubgraph) built from a Hall violator.
    """
    d = exchange_digraph(m, a, b)
    left, right = bits(a), bits(b)
    adj = {x: [y for y in right if d.admissible(x, y)] for x in left}
    match = _max_matching(adj, left, right)
    if len(match) == len(left):
        return True, ExchangeOrdering(a, b, match, 1)
    # Koenig: vertices reachable from unmatched left vertices by alternating paths
    match_r = {v: u for u, v in match.items()}
    reach_l = {x for x in left if x not in match}
    frontier = list(reach_l)
    reach_r = set()
    while frontier:
        u = frontier.pop()
        for v in adj[u]:
            if v not in reach_r:
                reach_r.add(v)
                w = match_r[v]
                if w not in reach_l:
                    reach_l.add(w)
                    frontier.append(w)
    xs = sorted(reach_l)
    ys = [y for y in right if y not in reach_r]
    # |xs| > |N(xs)| so |xs| + |ys| >= r + 1; trim to exactly r + 1
    excess = len(xs) + len(ys) - (m.rank_total + 1)
    while excess > 0 and len(xs) > 2:
        xs.pop()
        excess -= 1
    while excess > 0:
        ys.pop()
        excess -= 1
    block = BlockingSubgraph(a, b, mask_of(xs), mask_of(ys))
    if not block.verify(m, d):
        raise InvariantError("Hall violator did not give a blocking subgraph")
    return False, block


def _difference_minor(m: Matroid, a: int, b: int):
    """m / (a & b) restricted to the symmetric difference, with both bases."""
    common = a & b
    keep = a ^ b
    minor = m.minor(contract=common, delete=m.ground & ~(a | b))
    kept = [i for i in range(m.n) if keep >> i & 1]
    pos = {e: j for j, e in enumerate(kept)}
    return minor, mask_of(pos[e] for e in bits(a & ~b)), mask_of(pos[e] for e in bits(b & ~a)), kept


def find_k_exchange_ordering(m: Matroid, a: int, b: int, k: int) -> ExchangeOrdering | None:
    """Backtracking search for a k-exchange-ordering fixing a & b pointwise."""
    _require_basis(m, a, "a")
    _require_basis(m, b, "b")
    if not 1 <= k <= max(m.rank_total, 1):
        raise DomainError(f"k = {k} outside 1..{m.rank_total}")
    da, db = bits(a & ~b), bits(b & ~a)
    d = len(da)
    kp = min(k, d // 2)
    ident = {x: x for x in bits(a & b)}
    if kp == 0:
        return ExchangeOrdering(a, b, {**ident, **dict(zip(da, db))}, k)
    adm = [[m.is_basis((a & ~(1 << x)) | 1 << y) and m.is_basis((b & ~(1 << y)) | 1 << x)
            for y in db] for x in da]
    sigma: list[int] = []
    used = [False] * d

    def fits(p, q):
        for size in range(1, kp):
            for sub in combinations(range(p), size):
                rem = 1 << da[p]
                add = 1 << db[q]
                for i in sub:
                    rem |= 1 << da[i]
                    add |= 1 << db[sigma[i]]
                if not (m.is_basis((a & ~rem) | add) and m.is_basis((b & ~add) | rem)):
                    return False
        return True

    def search(p):
        if p == d:
            return True
        for q in range(d):
            if not used[q] and adm[p][q] and fits(p, q):
                used[q] = True
                sigma.append(q)
                if search(p + 1):
                    return True
                sigma.pop()
                used[q] = False
        return False

    if not search(0):
        return None
    mapping = {**ident, **{da[p]: db[q] for p, q in enumerate(sigma)}}
    return ExchangeOrdering(a, b, mapping, k)


def exchange_failures(m: Matroid, a: int, b: int, k: int):
    """Every bijection a -> b fixing a & b, with the subsets X (|X| <= k) it fails on.

    Meant for small ranks; returns a list of (map, failing subsets), where a
    subset fails if either side of the exchange is not a basis.
    """
    da, db = bits(a & ~b), bits(b & ~a)
    if math.factorial(len(da)) > 50_000:
        raise BudgetError("too many bijections to trace")
    out = []
    for img in permutations(db):
        s = dict(zip(da, img))
        bad = []
        for size in range(1, min(k, len(da)) + 1):
            for xs in combinations(da, size):
                x = mask_of(xs)
                sx = mask_of(s[e] for e in xs)
                if not (m.is_basis((a & ~x) | sx) and m.is_basis((b & ~sx) | x)):
                    bad.append(x)
        out.append((s, bad))
    return out


def has_exchange_ordering_bruteforce(m: Matroid, a: int, b: int, k: int = 1) -> bool:
    """Reference oracle: try every bijection a -> b (no fixing assumed)."""
    ea, eb = bits(a), bits(b)
    for img in permutations(eb):
        s = dict(zip(ea, img))
        good = True
        for size in range(1, min(k, len(ea)) + 1):
            for xs in combinations(ea, size):
                x = mask_of(xs)
                sx = mask_of(s[e] for e in xs)
                if not (m.is_basis((a & ~x) | sx) and m.is_basis((b & ~sx) | x)):
                    good = False
                    break
            if not good:
                break
        if good:
            return True
    return False


# ----------------------------------------------------------------------------
# classifiers


def _tables(m: Matroid):
    if m.n > TABLE_LIMIT:
        raise BudgetError(f"exhaustive classification needs at most {TABLE_LIMIT} elements")
    return np.fromiter(m.bases(), dtype=np.int64), m.basis_table()


def first_failing_pair(m: Matroid, k: int):
    """Lexicographically first unordered basis pair with no k-exchange-ordering."""
    bases, isb = _tables(m)
    fails, i, j = _kernels.sweep(bases, isb, k, False)
    return None if fails == 0 else (int(bases[i]), int(bases[j]))


def count_failing_pairs(m: Matroid, k: int) -> int:
    bases, isb = _tables(m)
    return int(_kernels.sweep(bases, isb, k, True)[0])


def failing_disjoint_pairs(m: Matroid, k: int) -> list[tuple[int, int]]:
    """Unordered pairs of complementary bases with no k-exchange-ordering."""
    bases, isb = _tables(m)
    if m.n != 2 * m.rank_total:
        return []
    pairs = _kernels.sweep_disjoint(bases, isb, k, np.int64(m.ground))
    return [(int(bases[i]), int(bases[j])) for i, j in pairs]


def pair_has_k_ordering(m: Matroid, a: int, b: int, k: int) -> bool:
    _bases, isb = _tables(m)
    return bool(_kernels.pair_has_ordering(np.int64(a), np.int64(b), k, isb))


def sbo_strength(m: Matroid) -> int:
    return max(1, math.ceil(m.rank_total / 2))


def is_k_base_orderable(m: Matroid, k: int) -> bool:
    if k < 1:
        raise DomainError("k must be positive")
    if m.rank_total <= 1:
        return True
    return first_failing_pair(m, min(k, m.rank_total)) is None


def is_base_orderable(m: Matroid) -> bool:
    return is_k_base_orderable(m, 1)


def is_strongly_base_orderable(m: Matroid) -> bool:
    return is_k_base_orderable(m, sbo_strength(m))


def is_kl_base_orderable(m: Matroid, k: int, l: int) -> bool:
    """Every ordered basis pair has a bijection valid for |X| <= k or |X| >= r - l."""
    r = m.rank_total
    if not (0 <= k <= r and 0 <= l <= r and k + l > 0):
        raise DomainError(f"(k, l) = ({k}, {l}) outside the allowed range for rank {r}")
    bases, isb = _tables(m)
    i, _j = _kernels.kl_sweep(bases, isb, r, k, l)
    return i < 0


# ----------------------------------------------------------------------------
# reductions and certificates


def reduce_nonorderable_pair(m: Matroid, k: int) -> Matroid:
    """The minor m / (A & B) \\ (E - (A | B)) for the first failing pair."""
    pair = first_failing_pair(m, k)
    if pair is None:
        raise PreconditionError(f"matroid is {k}-base-orderable")
    a, b = pair
    minor, _, _, _ = _difference_minor(m, a, b)
    return minor


PROPERTY_NAMES = ("bo", "sbo", "kbo", "kl", "transversal", "cotransversal", "paving",
                  "sparse-paving")


def property_test(name: str, k: int | None = None, l: int | None = None):
    """A predicate Matroid -> bool for a named property."""
    from .structure import is_cotransversal, is_paving, is_sparse_paving, is_transversal

    if name == "bo":
        return is_base_orderable
    if name == "sbo":
        return is_strongly_base_orderable
    if name == "kbo":
        if k is None:
            raise DomainError("kbo needs k")
        return lambda m: is_k_base_orderable(m, k)
    if name == "kl":
        if k is None or l is None:
            raise DomainError("kl needs k and l")
        return lambda m: is_kl_base_orderable(m, min(k, m.rank_total), min(l, m.rank_total))
    table = {"transversal": is_transversal, "cotransversal": is_cotransversal,
             "paving": is_paving, "sparse-paving": is_sparse_paving}
    if name in table:
        return table[name]
    raise DomainError(f"unknown property {name!r}")


@dataclass
class Certificate:
    property: str
    fails: bool
    deletions: dict = field(default_factory=dict)  # label -> passes
    contractions: dict = field(default_factory=dict)
    one_sided: str | None = None  # "deletions" or "contractions" when either side alone suffices
    witness: dict | None = None

    @property
    def certified(self) -> bool:
        return self.fails and all(self.deletions.values()) and all(self.contractions.values())

    def to_dict(self) -> dict:
        return {"property": self.property, "verdict": self.certified, "fails": self.fails,
                "deletions": self.deletions, "contractions": self.contractions,
                "one_sided": self.one_sided, "witness": self.witness,
                "minors_checked": len(self.deletions) + len(self.contractions)}


def _minor_task(args):
    m, e, contract, name, k, l = args
    test = property_test(name, k, l)
    x = 1 << e
    minor = m.contract(x) if contract else m.delete(x)
    return bool(test(minor))


def certify_excluded_minor(m: Matroid, name: str, k: int | None = None, l: int | None = None,
                           *, jobs: int = 1, test=None) -> Certificate:
    """Check that ``m`` fails a property while all single-element minors pass.

    ``name`` selects a predicate via :func:`property_test`; a custom ``test``
    overrides it (and forces serial evaluation).
    """
    custom = test is not None
    if test is None:
        test = property_test(name, k, l)
    fails = not test(m)
    witness = None
    if name in ("bo", "sbo", "kbo") and fails and not custom:
        kk = {"bo": 1, "sbo": sbo_strength(m)}.get(name, k)
        pair = first_failing_pair(m, kk)
        if pair is not None:
            witness = {"basis_a": m.names(pair[0]), "basis_b": m.names(pair[1])}
    tasks = [(m, e, c, name, k, l) for c in (False, True) for e in range(m.n)]
    if jobs > 1 and not custom:
        with ProcessPoolExecutor(jobs) as pool:
            results = list(pool.map(_minor_task, tasks))
    else:
        results = []
        for _m, e, c, _n, _k, _l in tasks:
            x = 1 << e
            results.append(bool(test(m.contract(x) if c else m.delete(x))))
    dels = {m.labels[e]: results[e] for e in range(m.n)}
    cons = {m.labels[e]: results[m.n + e] for e in range(m.n)}
    one_sided = None
    if fails and m.n == 2 * m.rank_total:
        if all(cons.values()):
            one_sided = "contractions"
        elif all(dels.values()):
            one_sided = "deletions"
    return Certificate(name, fails, dels, cons, one_sided, witness)


def source_sink_reduction(m: Matroid, block: BlockingSubgraph) -> Matroid | None:
    """Smaller non-base-orderable minor when the blocking subgraph has a source or sink.

    For a source x on the A side pick b with (B - b) u x a basis and return
    M / x \\ b. A source on the B side is the same with the roles swapped; a
    sink becomes a source in the dual, where the digraph is reversed.
    """
    a, b = block.basis_a, block.basis_b
    if a & b or (a | b) != m.ground:
        raise PreconditionError("needs disjoint bases covering the ground set")
    d = exchange_digraph(m, a, b)
    xs, ys = bits(block.x_side), bits(block.y_side)

    def reduce(mm, src, far_basis, near_basis, flip):
        for y in bits(far_basis):
            if mm.is_basis((far_basis & ~(1 << y)) | 1 << src):
                minor = mm.minor(contract=1 << src, delete=1 << y)
                keep = [i for i in range(mm.n) if i not in (src, y)]
                pos = {e: j for j, e in enumerate(keep)}
                na = mask_of(pos[e] for e in bits(near_basis) if e != src)
                nb = mask_of(pos[e] for e in bits(far_basis) if e != y)
                result = minor.dual() if flip else minor
                ok, _ = has_exchange_ordering(result, na, nb)
                if ok:
                    raise InvariantError("reduced minor is base-orderable")
                return result
        raise InvariantError("no symmetric exchange partner for the source")

    for x in xs:
        if all(d.has_ab(x, y) for y in ys):
            return reduce(m, x, b, a, False)
    for y in ys:
        if all(d.has_ba(y, x) for x in xs):
            return reduce(m, y, a, b, False)
    dual = m.dual()
    # edge reversal under duality: sinks of the digraph are sources in the dual
    for x in xs:
        if all(d.has_ba(y, x) for y in ys):
            return reduce(dual, x, b, a, True)
    for y in ys:
        if all(d.has_ab(x, y) for x in xs):
            return reduce(dual, y, a, b, True)
    return None
