"""Matroids encoded by their lattice of cyclic flats.

Ground sets are indexed ``0..n-1`` and every subset is an ``int`` bitmask.
A :class:`Matroid` is a validated :class:`Presentation` (the cyclic flats and
their ranks) together with a rank oracle

    r(X) = min{ r(A) + |X - A| : A a cyclic flat }.

For ``n <= TABLE_LIMIT`` the oracle can be materialised as a numpy table over
all ``2**n`` subsets, which is what every exhaustive routine uses.
"""
from __future__ import annotations

import threading
from collections import Counter
from dataclasses import dataclass
from itertools import combinations

import numpy as np

MAX_GROUND = 64
_WORD = (1 << 64) - 1
TABLE_LIMIT = 22
# rank lookups go through the table (built on first use) at or below this size
EAGER_TABLE = 16
# minors with at most this many elements are cross-checked by a full sweep
SWEEP_CHECK_LIMIT = 14


class MatroidError(Exception):
    pass


class DomainError(MatroidError, ValueError):
    """An argument is outside the domain of an operation."""


class BudgetError(MatroidError, RuntimeError):
    """The request exceeds the exhaustive-computation budget."""


class InvariantError(MatroidError, RuntimeError):
    """An internal consistency check failed (an implementation bug)."""


class PresentationError(MatroidError, ValueError):
    def __init__(self, report: "ValidationReport"):
        super().__init__(report.message)
        self.report = report


# ----------------------------------------------------------------------------
# bit helpers


def popcount(x: int) -> int:
    return x.bit_count()


def bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def mask_of(indices) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


_PC: dict[int, np.ndarray] = {}


def popcount_table(n: int) -> np.ndarray:
    if n not in _PC:
        _PC[n] = np.bitwise_count(np.arange(1 << n, dtype=np.int64)).astype(np.int8)
    return _PC[n]


def expand_table(positions: list[int]) -> np.ndarray:
    """Map each compact mask over ``len(positions)`` bits to a parent mask."""
    out = np.zeros(1, dtype=np.int64)
    for p in positions:
        out = np.concatenate([out, out | (1 << p)])
    return out


def compress(mask: int, positions: list[int]) -> int:
    out = 0
    for j, p in enumerate(positions):
        if mask >> p & 1:
            out |= 1 << j
    return out


def expand(mask: int, positions: list[int]) -> int:
    out = 0
    for j, p in enumerate(positions):
        if mask >> j & 1:
            out |= 1 << p
    return out


# ----------------------------------------------------------------------------
# presentations


@dataclass(frozen=True)
class Presentation:
    """A ranked family of subsets proposed as the cyclic flats of a matroid.

    ``flats`` is kept in canonical order (size, then bitmask); two presentations
    of the same matroid compare equal.
    """

    n: int
    flats: tuple[tuple[int, int], ...]
    labels: tuple[str, ...]

    @classmethod
    def build(cls, n: int, flats, labels=None) -> "Presentation":
        if not 0 <= n <= MAX_GROUND:
            raise DomainError(f"ground set size {n} outside 0..{MAX_GROUND}")
        if labels is None:
            labels = tuple(str(i) for i in range(n))
        labels = tuple(str(x) for x in labels)
        if len(labels) != n:
            raise DomainError("one label per element is required")
        if len(set(labels)) != n:
            raise DomainError("element labels must be distinct")
        full = (1 << n) - 1
        items = []
        for mask, rank in flats:
            mask, rank = int(mask), int(rank)
            if mask & ~full:
                raise DomainError(f"set {mask:#x} is not a subset of the ground set")
            items.append((mask, rank))
        items.sort(key=lambda fr: (popcount(fr[0]), fr[0]))
        return cls(n, tuple(items), labels)

    def describe(self, mask: int) -> str:
        return "{" + ",".join(self.labels[i] for i in bits(mask)) + "}"


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    axiom: str | None = None  # "malformed", "Z0", "Z1", "Z2" or "Z3"
    witness: tuple[int, int] | None = None
    message: str = "ok"

    def __bool__(self):
        return self.ok


def _lattice_ops(sets: np.ndarray, sizes: np.ndarray, x: int, y: int):
    """Return (join, meet) of x and y inside the family, or None where absent."""
    u = np.uint64(x | y)
    ub = sets[(sets & u) == u]
    join = None
    if len(ub):
        cand = int(ub[np.argmin(np.bitwise_count(ub))])
        if np.all((ub & np.uint64(cand)) == np.uint64(cand)):
            join = cand
    notc = np.uint64(~(x & y) & _WORD)
    lb = sets[(sets & notc) == 0]
    meet = None
    if len(lb):
        cand = int(lb[np.argmax(np.bitwise_count(lb))])
        if np.all((lb & np.uint64(~cand & _WORD)) == 0):
            meet = cand
    return join, meet


def validate_presentation(p: Presentation) -> ValidationReport:
    """Check the cyclic-flat axioms (Z0)-(Z3) for ``p``.

    Returns the first violated axiom, in the order Z0, Z1, Z2, Z3, with a
    witness pair of sets. Malformed input is reported before any axiom.
    """
    rank: dict[int, int] = {}
    for mask, r in p.flats:
        if mask in rank:
            return ValidationReport(False, "malformed", (mask, mask),
                                    f"duplicate set {p.describe(mask)}")
        if r < 0 or r > popcount(mask):
            return ValidationReport(False, "malformed", (mask, mask),
                                    f"rank {r} impossible for {p.describe(mask)}")
        rank[mask] = r
    if not rank:
        return ValidationReport(False, "Z0", None, "empty family")
    order = list(rank)
    sets = np.array(order, dtype=np.uint64)
    sizes = np.bitwise_count(sets)
    joins: dict[tuple[int, int], int] = {}
    meets: dict[tuple[int, int], int] = {}
    for a in range(len(order)):
        for b in range(a + 1, len(order)):
            x, y = order[a], order[b]
            j, m = _lattice_ops(sets, sizes, x, y)
            if j is None or m is None:
                what = "join" if j is None else "meet"
                return ValidationReport(False, "Z0", (x, y),
                                        f"no {what} for {p.describe(x)} and {p.describe(y)}")
            joins[x, y] = j
            meets[x, y] = m
    bottom = min(order, key=popcount)
    if any(bottom & ~z for z in order):
        return ValidationReport(False, "Z0", (bottom, bottom), "no least element")
    if rank[bottom] != 0:
        return ValidationReport(False, "Z1", (bottom, bottom),
                                f"least set {p.describe(bottom)} has rank {rank[bottom]}")
    for x in order:
        for y in order:
            if x != y and x & y == x:
                gap = rank[y] - rank[x]
                if not 0 < gap < popcount(y & ~x):
                    return ValidationReport(False, "Z2", (x, y),
                                            f"rank gap {gap} between {p.describe(x)} "
                                            f"and {p.describe(y)}")
    for (x, y), j in joins.items():
        if x & y in (x, y):
            continue
        m = meets[x, y]
        if rank[x] + rank[y] < rank[j] + rank[m] + popcount((x & y) & ~m):
            return ValidationReport(False, "Z3", (x, y),
                                    f"{p.describe(x)} and {p.describe(y)} violate (Z3)")
    return ValidationReport(True)


def z3_slack(p: Presentation, x: int, y: int) -> int:
    """r(X)+r(Y) - r(X v Y) - r(X ^ Y) - |(X&Y) - (X ^ Y)| for a pair in ``p``."""
    rank = dict(p.flats)
    sets = np.array(list(rank), dtype=np.uint64)
    j, m = _lattice_ops(sets, np.bitwise_count(sets), x, y)
    if j is None or m is None:
        raise DomainError("pair has no join or meet in the family")
    return rank[x] + rank[y] - rank[j] - rank[m] - popcount((x & y) & ~m)


# ----------------------------------------------------------------------------
# matroids


def _rank_table_from_flats(n: int, flats) -> np.ndarray:
    masks = np.arange(1 << n, dtype=np.int64)
    best = np.full(1 << n, 127, dtype=np.int16)
    for f, r in flats:
        np.minimum(best, r + np.bitwise_count(masks & ~np.int64(f)), out=best)
    return best.astype(np.int8)


def cyclic_flats_from_table(table: np.ndarray, n: int) -> list[tuple[int, int]]:
    """All cyclic flats of the matroid with rank table ``table`` (full sweep)."""
    masks = np.arange(1 << n, dtype=np.int64)
    ok = np.ones(1 << n, dtype=bool)
    for e in range(n):
        b = 1 << e
        has = (masks & b) != 0
        moved = table[masks ^ b] != table
        # lacking e: adding e must raise the rank (closed);
        # holding e: removing e must keep it (e is no coloop of the restriction)
        ok &= np.where(has, ~moved, moved)
    idx = np.nonzero(ok)[0]
    return [(int(x), int(table[x])) for x in idx]


class Matroid:
    """A matroid given by its cyclic flats; immutable apart from rank caches."""

    def __init__(self, presentation: Presentation, *, validate: bool = True):
        if validate:
            report = validate_presentation(presentation)
            if not report:
                raise PresentationError(report)
        self.presentation = presentation
        self._lock = threading.Lock()
        self._table = None
        self._memo: dict[int, int] = {}
        self._bases = None
        self.rank_total = self.rank(self.ground)

    # caches travel with the value when sent to worker processes; the lock does not
    def __getstate__(self):
        state = self.__dict__.copy()
        del state["_lock"]
        return state

    def __setstate__(self, state):
        self.__dict__.update(state)
        self._lock = threading.Lock()

    @classmethod
    def from_flats(cls, n, flats, labels=None, *, validate=True) -> "Matroid":
        return cls(Presentation.build(n, flats, labels), validate=validate)

    @classmethod
    def from_rank_table(cls, table: np.ndarray, labels) -> "Matroid":
        labels = tuple(labels)
        n = len(labels)
        table = np.asarray(table, dtype=np.int8)
        m = cls(Presentation.build(n, cyclic_flats_from_table(table, n), labels), validate=False)
        with m._lock:
            m._table = table
        return m

    @classmethod
    def from_rank_function(cls, n: int, rank, labels=None) -> "Matroid":
        if n > TABLE_LIMIT:
            raise BudgetError(f"rank-function construction needs n <= {TABLE_LIMIT}")
        table = np.fromiter((rank(x) for x in range(1 << n)), dtype=np.int8, count=1 << n)
        if labels is None:
            labels = [str(i) for i in range(n)]
        return cls.from_rank_table(table, labels)

    # -- basic data ---------------------------------------------------------

    @property
    def n(self) -> int:
        return self.presentation.n

    @property
    def labels(self) -> tuple[str, ...]:
        return self.presentation.labels

    @property
    def flats(self) -> tuple[tuple[int, int], ...]:
        return self.presentation.flats

    @property
    def ground(self) -> int:
        return (1 << self.n) - 1

    def index(self, label) -> int:
        if isinstance(label, (int, np.integer)):
            if not 0 <= label < self.n:
                raise DomainError(f"element {label} not in ground set")
            return int(label)
        try:
            return self.labels.index(str(label))
        except ValueError:
            raise DomainError(f"element {label!r} not in ground set") from None

    def mask(self, items) -> int:
        """Bitmask of an iterable of labels (or indices)."""
        if isinstance(items, str):
            items = [items]
        return mask_of(self.index(x) for x in items)

    def names(self, mask: int) -> list[str]:
        return [self.labels[i] for i in bits(mask)]

    def describe(self, mask: int) -> str:
        return self.presentation.describe(mask)

    def __eq__(self, other):
        if not isinstance(other, Matroid):
            return NotImplemented
        return self.presentation == other.presentation

    def __hash__(self):
        return hash(self.presentation)

    def __repr__(self):
        return f"<Matroid n={self.n} rank={self.rank_total} cyclic_flats={len(self.flats)}>"

    # -- rank oracle --------------------------------------------------------

    def _check(self, x: int):
        if x < 0 or x & ~self.ground:
            raise DomainError(f"{x:#x} is not a subset of the ground set")

    def rank_table(self) -> np.ndarray:
        if self.n > TABLE_LIMIT:
            raise BudgetError(f"rank table needs n <= {TABLE_LIMIT}, got {self.n}")
        if self._table is None:
            with self._lock:
                if self._table is None:
                    self._table = _rank_table_from_flats(self.n, self.flats)
        return self._table

    def basis_table(self) -> np.ndarray:
        table = self.rank_table()
        r = self.rank_total
        return ((table == r) & (popcount_table(self.n) == r)).astype(np.uint8)

    def rank(self, x: int) -> int:
        self._check(x)
        if self.n <= EAGER_TABLE:
            return int(self.rank_table()[x])
        if self._table is not None:
            return int(self._table[x])
        got = self._memo.get(x)
        if got is None:
            got = min(r + popcount(x & ~f) for f, r in self.flats)
            self._memo[x] = got
        return got

    def is_independent(self, x: int) -> bool:
        return self.rank(x) == popcount(x)

    def is_spanning(self, x: int) -> bool:
        return self.rank(x) == self.rank_total

    def is_basis(self, x: int) -> bool:
        return popcount(x) == self.rank_total and self.rank(x) == self.rank_total

    def closure(self, x: int) -> int:
        r = self.rank(x)
        out = x
        for e in range(self.n):
            if not x >> e & 1 and self.rank(x | 1 << e) == r:
                out |= 1 << e
        return out

    def is_flat(self, x: int) -> bool:
        return self.closure(x) == x

    def is_cyclic(self, x: int) -> bool:
        r = self.rank(x)
        return all(self.rank(x & ~(1 << e)) == r for e in bits(x))

    def is_circuit(self, x: int) -> bool:
        k = popcount(x)
        return k > 0 and self.rank(x) == k - 1 and all(
            self.rank(x & ~(1 << e)) == k - 1 for e in bits(x))

    def is_hyperplane(self, x: int) -> bool:
        return self.rank(x) == self.rank_total - 1 and self.is_flat(x)

    def loops(self) -> int:
        return mask_of(e for e in range(self.n) if self.rank(1 << e) == 0)

    def coloops(self) -> int:
        full = self.ground
        return mask_of(e for e in range(self.n)
                       if self.rank(full & ~(1 << e)) < self.rank_total)

    def bases(self):
        """Every basis once, in lexicographic order of sorted index tuples."""
        if self._bases is None:
            found = []
            r = self.rank_total
            if self.n <= TABLE_LIMIT:
                isb = self.basis_table()
                for combo in combinations(range(self.n), r):
                    x = mask_of(combo)
                    if isb[x]:
                        found.append(x)
            else:
                for combo in combinations(range(self.n), r):
                    x = mask_of(combo)
                    if self.rank(x) == r:
                        found.append(x)
            self._bases = tuple(found)
        return iter(self._bases)

    def circuits(self, max_size: int | None = None) -> list[int]:
        """Circuits by minimal-dependent-set search, up to ``max_size`` elements."""
        if max_size is None:
            max_size = self.rank_total + 1
        out = []
        for k in range(1, min(max_size, self.n) + 1):
            for combo in combinations(range(self.n), k):
                x = mask_of(combo)
                if self.is_circuit(x):
                    out.append(x)
        return out

    # -- duality and minors -------------------------------------------------

    def dual(self) -> "Matroid":
        full, r = self.ground, self.rank_total
        flats = [(full & ~f, popcount(full & ~f) + rf - r) for f, rf in self.flats]
        return Matroid(Presentation.build(self.n, flats, self.labels), validate=False)

    def delete(self, s: int) -> "Matroid":
        self._check(s)
        return self._minor(0, s)

    def contract(self, s: int) -> "Matroid":
        self._check(s)
        return self._minor(s, 0)

    def minor(self, contract: int = 0, delete: int = 0) -> "Matroid":
        self._check(contract)
        self._check(delete)
        if contract & delete:
            raise DomainError("contracted and deleted sets overlap")
        return self._minor(contract, delete)

    def restrict(self, x: int) -> "Matroid":
        self._check(x)
        return self._minor(0, self.ground & ~x)

    def _minor(self, c: int, d: int) -> "Matroid":
        removed = c | d
        kept = [i for i in range(self.n) if not removed >> i & 1]
        labels = [self.labels[i] for i in kept]
        rc = self.rank(c)
        k = len(kept)

        def rank_minor(y: int) -> int:
            return self.rank(expand(y, kept) | c) - rc

        # each cyclic flat of the minor is F - removed for a cyclic flat F of self
        cands = {compress(f & ~removed, kept) for f, _ in self.flats}
        found = []
        for z in cands:
            rz = rank_minor(z)
            if all(rank_minor(z | 1 << e) > rz for e in range(k) if not z >> e & 1) and \
                    all(rank_minor(z & ~(1 << e)) == rz for e in bits(z)):
                found.append((z, rz))
        if k <= SWEEP_CHECK_LIMIT and self.n <= TABLE_LIMIT:
            table = self.rank_table()[expand_table(kept) | c] - rc
            swept = cyclic_flats_from_table(table.astype(np.int8), k)
            if sorted(swept) != sorted(found):
                raise InvariantError("seeded minor flats disagree with the full sweep")
            m = Matroid(Presentation.build(k, swept, labels), validate=False)
            with m._lock:
                m._table = table.astype(np.int8)
            return m
        return Matroid(Presentation.build(k, found, labels), validate=False)

    # -- misc ---------------------------------------------------------------

    def relabel(self, labels) -> "Matroid":
        return Matroid(Presentation.build(self.n, self.flats, labels), validate=False)

    def permute(self, perm: dict[int, int] | list[int], labels=None) -> "Matroid":
        """Image under the element map ``i -> perm[i]``."""
        flats = [(mask_of(perm[i] for i in bits(f)), r) for f, r in self.flats]
        if labels is None:
            labels = [None] * self.n
            for i in range(self.n):
                labels[perm[i]] = self.labels[i]
        return Matroid(Presentation.build(self.n, flats, labels), validate=False)

    def rank_profile(self) -> Counter:
        """Histogram of (|X|, r(X)) over all subsets."""
        table = self.rank_table().astype(np.int64)
        pc = popcount_table(self.n).astype(np.int64)
        keys = pc * 128 + table
        vals, counts = np.unique(keys, return_counts=True)
        return Counter({(int(v) // 128, int(v) % 128): int(c) for v, c in zip(vals, counts)})


def uniform(r: int, n: int, labels=None) -> Matroid:
    if not 0 <= r <= n:
        raise DomainError("uniform matroid needs 0 <= r <= n")
    full = (1 << n) - 1
    if r == 0:
        # every element is a loop, so the closure of the empty set is E
        return Matroid.from_flats(n, [(full, 0)], labels)
    flats = [(0, 0)]
    if r < n:
        flats.append((full, r))
    return Matroid.from_flats(n, flats, labels)


def free_matroid(n: int, labels=None) -> Matroid:
    return uniform(n, n, labels)


def check_rank_axioms(m: Matroid) -> bool:
    """Exhaustive rank-axiom check (pairwise submodularity when n <= 10)."""
    table = m.rank_table().astype(np.int16)
    n = m.n
    pc = popcount_table(n)
    masks = np.arange(1 << n, dtype=np.int64)
    if table[0] != 0 or np.any(table < 0) or np.any(table > pc):
        return False
    for e in range(n):
        lack = (masks >> e & 1) == 0
        step = table[masks[lack] | 1 << e] - table[lack]
        if np.any((step < 0) | (step > 1)):
            return False
    if n <= 10:
        for x in range(1 << n):
            if np.any(table[x] + table < table[x | masks] + table[x & masks]):
                return False
    else:
        for e in range(n):
            for f in range(e + 1, n):
                sel = (masks >> e & 1) == 0
                sel &= (masks >> f & 1) == 0
                x = masks[sel]
                if np.any(table[x | 1 << e] + table[x | 1 << f]
                          < table[x | 1 << e | 1 << f] + table[x]):
                    return False
    return True
