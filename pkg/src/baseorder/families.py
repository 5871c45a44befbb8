"""Two explicit families of excluded minors built from six disjoint blocks.

Blocks are named A, B, C, D, E, F and laid out in that order on the ground
set, with labels a1.., b1.., and so on. Only block sizes matter: elements of
one block lie in exactly the same cyclic flats.

The alpha family (rank r, |A|+|B|+|C| = |D|+|E|+|F| = r, |A|+|B|+|D|+|E| = r+1)
has cyclic flats C u B u E, C u A u D, F u E u A, F u D u B besides the bottom
and top; these matroids are not base-orderable while every single-element
contraction is transversal.

The beta family (rank 2k, |C| = |F| = |A|+|B| = |D|+|E| = k) adds the
circuit-hyperplane A u B u D u E; it is (k-1)- but not k-base-orderable.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations, product

from .core import BudgetError, DomainError, Matroid, Presentation, mask_of
from .critical import CriticalGraph, build_m_delta

BLOCKS = "ABCDEF"


def _layout(sizes: dict):
    """Block masks and labels for sizes given per block letter."""
    masks, labels = {}, []
    pos = 0
    for name in BLOCKS:
        k = sizes[name]
        masks[name] = mask_of(range(pos, pos + k))
        labels += [f"{name.lower()}{i + 1}" for i in range(k)]
        pos += k
    return masks, labels, pos


@dataclass(frozen=True)
class AlphaTuple:
    a: int
    b: int
    c: int
    d: int
    e: int
    f: int

    def __post_init__(self):
        if min(self.sizes().values()) < 1:
            raise DomainError("every block must be nonempty")
        if self.a + self.b + self.c != self.d + self.e + self.f:
            raise DomainError("|A|+|B|+|C| must equal |D|+|E|+|F|")
        if self.a + self.b + self.d + self.e != self.rank + 1:
            raise DomainError("|A|+|B|+|D|+|E| must equal r + 1")
        if self.rank < 3:
            raise DomainError("rank must be at least 3")

    @property
    def rank(self) -> int:
        return self.a + self.b + self.c

    def sizes(self) -> dict:
        return dict(zip(BLOCKS, (self.a, self.b, self.c, self.d, self.e, self.f)))

    def layout(self):
        return _layout(self.sizes())


def alpha_tuples(r: int) -> list[AlphaTuple]:
    out = []
    for a, b, d, e in product(range(1, r + 1), repeat=4):
        c, f = r - a - b, r - d - e
        if c >= 1 and f >= 1 and a + b + d + e == r + 1:
            out.append(AlphaTuple(a, b, c, d, e, f))
    return out


def build_m_alpha(t: AlphaTuple) -> Matroid:
    m, labels, n = t.layout()
    flats = [
        (0, 0),
        (m["C"] | m["B"] | m["E"], t.c + t.b),
        (m["C"] | m["A"] | m["D"], t.c + t.a),
        (m["F"] | m["E"] | m["A"], t.f + t.e),
        (m["F"] | m["D"] | m["B"], t.f + t.d),
        ((1 << n) - 1, t.rank),
    ]
    return Matroid.from_flats(n, flats, labels)


def alpha_critical_graph(t: AlphaTuple) -> CriticalGraph:
    """The block orientation: A -> D, E -> A, D -> B, B -> E.

    Rows are the elements of A then B, columns those of D then E.
    """
    rows = [[True] * t.d + [False] * t.e for _ in range(t.a)]
    rows += [[False] * t.d + [True] * t.e for _ in range(t.b)]
    return CriticalGraph.from_rows(rows)


def alpha_via_critical_graph(t: AlphaTuple) -> Matroid:
    """The same matroid built from its critical graph, relabelled by blocks."""
    m = build_m_delta(alpha_critical_graph(t))
    r = t.rank
    # graph indices: a1..ar = A, B, C in order; b1..br = D, E, F in order
    masks, labels, _ = t.layout()
    return m.relabel(labels[:r] + labels[r:])


@dataclass(frozen=True)
class BetaTuple:
    k: int
    a: int
    b: int
    d: int
    e: int

    def __post_init__(self):
        if self.k < 2:
            raise DomainError("k must be at least 2")
        if min(self.a, self.b, self.d, self.e) < 1:
            raise DomainError("every block must be nonempty")
        if self.a + self.b != self.k or self.d + self.e != self.k:
            raise DomainError("|A|+|B| and |D|+|E| must both equal k")

    def sizes(self) -> dict:
        return dict(zip(BLOCKS, (self.a, self.b, self.k, self.d, self.e, self.k)))

    def layout(self):
        return _layout(self.sizes())

    @property
    def balanced(self) -> bool:
        return 2 * self.a == 2 * self.b == 2 * self.d == 2 * self.e == self.k


def beta_tuples(k: int) -> list[BetaTuple]:
    return [BetaTuple(k, a, k - a, d, k - d) for a in range(1, k) for d in range(1, k)]


def _beta_flats(m: dict, sizes: dict, k: int, hyperplane: int, n: int):
    return [
        (0, 0),
        (m["C"] | m["B"] | m["E"], k + sizes["B"]),
        (m["C"] | m["A"] | m["D"], k + sizes["A"]),
        (m["F"] | m["E"] | m["A"], k + sizes["E"]),
        (m["F"] | m["D"] | m["B"], k + sizes["D"]),
        (hyperplane, 2 * k - 1),
        ((1 << n) - 1, 2 * k),
    ]


def build_m_beta(t: BetaTuple) -> Matroid:
    m, labels, n = t.layout()
    hyper = m["A"] | m["B"] | m["D"] | m["E"]
    return Matroid.from_flats(n, _beta_flats(m, t.sizes(), t.k, hyper, n), labels)


def build_m_beta_prime(t: BetaTuple, swap_de: bool = False) -> Matroid:
    """Variant with C u F as the circuit-hyperplane instead of A u B u D u E.

    With ``swap_de`` the blocks D and E trade roles (same ground set and
    labels), which is the form that matches the dual of :func:`build_m_beta`.
    """
    m, labels, n = t.layout()
    sizes = t.sizes()
    if swap_de:
        m = {**m, "D": m["E"], "E": m["D"]}
        sizes = {**sizes, "D": sizes["E"], "E": sizes["D"]}
    return Matroid.from_flats(n, _beta_flats(m, sizes, t.k, m["C"] | m["F"], n), labels)


# ----------------------------------------------------------------------------
# theorem checks


def verify_alpha_theorem(t: AlphaTuple, jobs: int = 1) -> dict:
    from .exchange import certify_excluded_minor, is_base_orderable, sbo_strength
    from .structure import is_cotransversal, is_transversal, mason_ingleton_slack

    m = build_m_alpha(t)
    n = m.n
    contractions = all(is_transversal(m.contract(1 << e)) for e in range(n))
    deletions = all(is_cotransversal(m.delete(1 << e)) for e in range(n))
    certs = {"bo": certify_excluded_minor(m, "bo", jobs=jobs).certified,
             "sbo": certify_excluded_minor(m, "sbo", jobs=jobs).certified}
    for k in range(2, sbo_strength(m) + 1):
        certs[f"kbo={k}"] = certify_excluded_minor(m, "kbo", k, jobs=jobs).certified
    # gammoid evidence: outside the transversal and cotransversal classes,
    # while every single-element minor falls inside one of them
    gammoid = (not is_transversal(m) and not is_cotransversal(m)
               and contractions and deletions)
    proper = [f for f, _ in m.flats if f not in (0, m.ground)]
    four = mason_ingleton_slack(m, proper)
    triples = [mason_ingleton_slack(m, c) for c in combinations(proper, 3)]
    return {
        "tuple": t.sizes(),
        "not_bo": not is_base_orderable(m),
        "contractions_transversal": contractions,
        "deletions_cotransversal": deletions,
        "excluded_minor": certs,
        "gammoid_evidence": gammoid and certs["sbo"],
        "slack_all_four": four,
        "slack_triples_min": min(triples),
        "ok": (not is_base_orderable(m)) and contractions and deletions and gammoid
        and all(certs.values()) and four == -1 and min(triples) >= 0,
    }


def verify_beta_theorem(t: BetaTuple, jobs: int = 1, full_limit: int = 3) -> dict:
    """Check the known facts about the beta family for one tuple.

    Above ``full_limit`` only the dual identity, the basis checks, the
    contractions and the disjoint-pair census are computed, and a BudgetError
    carrying them as ``partial`` is raised.
    """
    from .exchange import (
        certify_excluded_minor,
        count_failing_pairs,
        failing_disjoint_pairs,
        is_k_base_orderable,
        is_strongly_base_orderable,
        pair_has_k_ordering,
    )
    from .structure import is_transversal

    m = build_m_beta(t)
    k = t.k
    masks, _, _ = t.layout()
    b1 = masks["A"] | masks["B"] | masks["C"]
    b2 = masks["D"] | masks["E"] | masks["F"]
    expected = 2 if t.balanced else 1
    report = {"tuple": t.sizes(), "k": k}
    report["dual_identity"] = m.dual() == build_m_beta_prime(t, swap_de=True)
    report["bases_present"] = m.is_basis(b1) and m.is_basis(b2)
    report["contractions_transversal"] = all(is_transversal(m.contract(1 << e))
                                             for e in range(m.n))
    disjoint = failing_disjoint_pairs(m, k)
    report["failing_disjoint_pairs"] = len(disjoint)
    if k > full_limit:
        report["not_k_bo"] = not pair_has_k_ordering(m, b1, b2, k)
        report["census_ok"] = len(disjoint) == expected
        err = BudgetError(f"full verification is limited to k <= {full_limit}")
        err.partial = report
        raise err
    report["not_k_bo"] = not is_k_base_orderable(m, k)
    report["not_sbo"] = not is_strongly_base_orderable(m)
    report["k_minus_1_bo"] = is_k_base_orderable(m, k - 1)
    report["excluded_minor_sbo"] = certify_excluded_minor(m, "sbo", jobs=jobs).certified
    report["excluded_minor_kbo"] = certify_excluded_minor(m, "kbo", k, jobs=jobs).certified
    failing = count_failing_pairs(m, k)
    report["failing_pairs"] = failing
    report["census_ok"] = failing == expected == len(disjoint)
    report["ok"] = all(report[key] for key in (
        "dual_identity", "bases_present", "contractions_transversal", "not_k_bo", "not_sbo",
        "k_minus_1_bo", "excluded_minor_sbo", "excluded_minor_kbo", "census_ok"))
    return report


# ----------------------------------------------------------------------------
# counting


def _cycle_orbit_key(c):
    # only rotations: reading the cycle backwards is not an isomorphism
    return min(c[i:] + c[:i] for i in range(4))


def beta_cycle_classes(k: int) -> list[tuple]:
    """4-cycles (p, q, r, s) of positive integers with p + r = q + s = k, up to
    rotation. Sizes are read as (|A|, |D|, |B|, |E|)."""
    keys = set()
    for p in range(1, k):
        for q in range(1, k):
            keys.add(_cycle_orbit_key((p, q, k - p, k - q)))
    return sorted(keys)


def beta_class_formula(k: int) -> int:
    h = k // 2
    return h * h if k % 2 else (h - 1) ** 2 + h


def beta_isomorphism_classes(k: int) -> list[list[BetaTuple]]:
    from .structure import is_isomorphic

    classes: list[list[BetaTuple]] = []
    reps: list[Matroid] = []
    for t in beta_tuples(k):
        m = build_m_beta(t)
        for i, rep in enumerate(reps):
            if is_isomorphic(m, rep):
                classes[i].append(t)
                break
        else:
            reps.append(m)
            classes.append([t])
    return classes


def count_beta_classes(k: int, check_isomorphism_up_to: int = 4) -> int:
    """Number of pairwise non-isomorphic beta matroids for this k.

    The closed formula is cross-checked against the explicit cycle count, and
    against matroid isomorphism testing for small k.
    """
    if k < 2:
        raise DomainError("k must be at least 2")
    value = beta_class_formula(k)
    if len(beta_cycle_classes(k)) != value:
        raise AssertionError(f"cycle enumeration disagrees with the formula at k = {k}")
    if k <= check_isomorphism_up_to and len(beta_isomorphism_classes(k)) != value:
        raise AssertionError(f"isomorphism classes disagree with the formula at k = {k}")
    return value


def four_part_partitions(n: int) -> int:
    count = 0
    for a in range(1, n + 1):
        for b in range(a, n + 1):
            for c in range(b, n + 1):
                d = n - a - b - c
                if d >= c:
                    count += 1
    return count


def alpha_count_lower_bound(r: int) -> tuple[int, float]:
    """(4-part partitions of r + 1, the crude bound C(r, 3) / 24)."""
    if r < 3:
        raise DomainError("r must be at least 3")
    return four_part_partitions(r + 1), math.comb(r, 3) / 24


def alpha_isomorphism_classes(r: int) -> int:
    from .structure import is_isomorphic

    reps: list[Matroid] = []
    for t in alpha_tuples(r):
        m = build_m_alpha(t)
        if not any(is_isomorphic(m, x) for x in reps):
            reps.append(m)
    return len(reps)


def forced_image_trace(t: BetaTuple) -> dict:
    """Walk every bijection D u E u F -> A u B u C.

    Records how many pass all single exchanges, whether each of those sends E
    into C u B and D into C u A, and whether any survives all exchanges of
    size at most k.
    """
    from .exchange import exchange_failures

    m = build_m_beta(t)
    masks, _, _ = t.layout()
    src = masks["D"] | masks["E"] | masks["F"]
    dst = masks["A"] | masks["B"] | masks["C"]
    singles = [1 << e for e in range(m.n)]
    one_ok = forced = complete = 0
    for sigma, bad in exchange_failures(m, src, dst, t.k):
        if any(x in singles for x in bad):
            continue
        one_ok += 1
        img_e = sum(1 << sigma[e] for e in range(m.n) if masks["E"] >> e & 1)
        img_d = sum(1 << sigma[e] for e in range(m.n) if masks["D"] >> e & 1)
        if not img_e & ~(masks["C"] | masks["B"]) and not img_d & ~(masks["C"] | masks["A"]):
            forced += 1
        if not bad:
            complete += 1
    return {"single_exchange_maps": one_ok, "forced_images": forced, "k_orderings": complete}


def beta_deletion_report(t: BetaTuple, label: str = "c1") -> dict:
    """Transversality of a single-element deletion and of its dual."""
    from .structure import is_transversal

    m = build_m_beta(t)
    minor = m.delete(m.mask([label]))
    return {"tuple": t.sizes(), "deleted": label,
            "transversal": is_transversal(minor),
            "cotransversal": is_transversal(minor.dual())}
