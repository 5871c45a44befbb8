"""One test per acceptance criterion.

Each test is a single pass/fail line in the terminal summary. Expected values
are written out literally rather than read back from the library.
"""

import random
import time

from baseorder.catalog import mk4, random_sparse_paving, random_transversal
from baseorder.core import check_rank_axioms, validate_presentation
from baseorder.critical import (
    build_m_delta,
    build_z_delta,
    conjecture_report,
    delta3,
    delta5,
    delta7,
    enumerate_critical_graphs,
    enumerate_shape,
    find_obstructions,
    shapes,
    z_delta_report,
)
from baseorder.exchange import (
    certify_excluded_minor,
    has_exchange_ordering,
    is_base_orderable,
    is_k_base_orderable,
)
from baseorder.families import (
    AlphaTuple,
    alpha_tuples,
    beta_class_formula,
    beta_isomorphism_classes,
    beta_tuples,
    build_m_alpha,
    count_beta_classes,
    verify_alpha_theorem,
    verify_beta_theorem,
)
from baseorder.operations import (
    direct_sum,
    graphic_matroid,
    principal_extension,
    relax_circuit_hyperplane,
)
from baseorder.structure import (
    has_minor_isomorphic,
    is_isomorphic,
    is_paving,
    is_sparse_paving,
    is_transversal,
)

from oracles import (
    bases_from_rank,
    cyclic_flats_brute,
    four_cycles,
    has_ordering_brute,
    spanning_tree_count,
)

# (s, t) -> (graphs without an obstruction, graphs with one)
CRITICAL_EXPECTED = {
    3: {(2, 2): (1, 0)},
    4: {(2, 3): (1, 0)},
    5: {(2, 4): (2, 0), (3, 3): (3, 0)},
    6: {(2, 5): (2, 0), (3, 4): (15, 0)},
    7: {(2, 6): (3, 0), (3, 5): (34, 0), (4, 4): (43, 1)},
}

DELTA5_FLATS = {
    (): 0,
    ("a1", "a4", "a5", "b3"): 3,
    ("a1", "b2", "b4", "b5"): 3,
    ("a3", "b3", "b4", "b5"): 3,
    ("a2", "a3", "a4", "a5", "b2"): 4,
    ("a1", "a3", "a4", "a5", "b1", "b3"): 4,
    ("a2", "a3", "b1", "b3", "b4", "b5"): 4,
    ("a1", "a3", "b2", "b3", "b4", "b5"): 4,
    ("a1", "a2", "a3", "a4", "a5", "b1", "b2", "b3", "b4", "b5"): 5,
}


def _sets(m, x):
    return frozenset(i for i in range(m.n) if x >> i & 1)


def test_c1_critical_counts_ranks_3_to_7():
    start = time.perf_counter()
    got = {}
    for r in range(3, 8):
        got[r] = {}
        for s, t in shapes(r):
            found = enumerate_shape(s, t)
            obstructed = sum(find_obstructions(d)[1] is not None for d in found)
            got[r][(s, t)] = (len(found) - obstructed, obstructed)
    assert got == CRITICAL_EXPECTED
    assert time.perf_counter() - start < 120


def test_c2_excluded_minor_verification():
    start = time.perf_counter()
    for r in range(3, 7):
        for d in enumerate_critical_graphs(r):
            cert = certify_excluded_minor(build_m_delta(d), "bo")
            assert cert.fails and cert.certified
            assert len(cert.deletions) + len(cert.contractions) == 4 * r
    report = conjecture_report(delta7())
    assert report["has_obstruction"]
    assert report["excluded_minor_bo"] is True
    assert report["excluded_minor_sbo"] is False
    clean = [d for d in enumerate_critical_graphs(7) if find_obstructions(d)[1] is None]
    assert len(clean) == 80
    for d in random.Random(7).sample(clean, 5):
        report = conjecture_report(d)
        assert report["excluded_minor_bo"] and report["excluded_minor_sbo"]
    assert time.perf_counter() - start < 600


def test_c3_k4_and_delta5_flats():
    k4_edges = [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (2, 3)]
    m = build_m_delta(delta3())
    graphic = graphic_matroid(k4_edges)
    assert is_isomorphic(m, graphic)
    assert len(list(m.bases())) == spanning_tree_count(4, k4_edges) == 16
    assert not is_base_orderable(m)
    assert not is_transversal(m)
    assert is_paving(m) and is_sparse_paving(m)
    d5 = build_m_delta(delta5())
    assert {tuple(d5.names(f)): r for f, r in d5.flats} == DELTA5_FLATS


def test_c4_obstruction_analysis():
    for r in range(3, 7):
        for d in enumerate_critical_graphs(r):
            assert find_obstructions(d, prune=False)[1] is None
    d = delta7()
    _, lo, _ = find_obstructions(d)
    assert lo.names(d) == (["a3", "a4"], ["b3", "b4"])
    bad = z_delta_report(d)
    assert not bad.ok and bad.axiom == "Z3"
    z = build_z_delta(d)
    assert validate_presentation(z.presentation).ok
    ranks = dict(build_m_delta(d).flats)
    assert ranks[z.p_set] == 3 and ranks[z.q_set] == 6


def test_c5_beta_suite_k2_k3():
    tuples = beta_tuples(2) + beta_tuples(3)
    assert len(tuples) == 1 + 4
    for t in tuples:
        report = verify_beta_theorem(t)
        assert report["not_k_bo"] and report["k_minus_1_bo"] and report["not_sbo"]
        assert report["contractions_transversal"]
        assert report["excluded_minor_sbo"] and report["excluded_minor_kbo"]
        assert report["failing_pairs"] == report["failing_disjoint_pairs"] == (
            2 if t.balanced else 1)
        assert report["dual_identity"]
        assert report["ok"]


def test_c6_alpha_suite_up_to_rank_5():
    tuples = [t for r in (3, 4, 5) for t in alpha_tuples(r)]
    assert len(tuples) == 15
    for t in tuples:
        report = verify_alpha_theorem(t)
        assert report["not_bo"]
        assert report["contractions_transversal"] and report["deletions_cotransversal"]
        assert all(report["excluded_minor"].values())
        assert {"bo", "sbo"} <= set(report["excluded_minor"])
        assert report["ok"]
    m = build_m_alpha(AlphaTuple(2, 1, 2, 2, 1, 2))
    assert not is_transversal(m.delete(m.mask(["a1"])))


def test_c7_oracle_equivalence(catalog):
    start = time.perf_counter()
    pairs = 0
    for e in catalog:
        m = e.matroid
        if m.rank_total > 5:
            continue
        bases = list(m.bases())
        fs = [_sets(m, b) for b in bases]
        bset = set(fs)
        for i in range(len(bases)):
            for j in range(i, len(bases)):
                fast = has_exchange_ordering(m, bases[i], bases[j])[0]
                assert fast == has_ordering_brute(bset, fs[i], fs[j]), e.name
                pairs += 1
    assert pairs >= 10_000
    small = [e.matroid for e in catalog if e.matroid.n <= 10]
    assert len(small) == len(catalog)
    for m in small:
        assert check_rank_axioms(m)
        assert m.dual().dual() == m
        rank = m.rank
        flats = m.flats
        for x in range(1 << m.n):
            # the minimum over presented flats is attained and equals the rank
            assert min(r + bin(x & ~f).count("1") for f, r in flats) == rank(x)
        assert {b for b in m.bases()} == {sum(1 << i for i in s)
                                          for s in bases_from_rank(rank, m.n)}
        assert set(flats) == set(cyclic_flats_brute(rank, m.n))
        for e in range(m.n):
            x = 1 << e
            assert m.delete(x).dual() == m.dual().contract(x)
            assert m.contract(x).dual() == m.dual().delete(x)
    assert time.perf_counter() - start < 600


def _closure_pool(rng, catalog):
    pool = [e.matroid for e in catalog if 4 <= e.matroid.n <= 8 and e.matroid.rank_total >= 1]
    for _ in range(40):
        r = rng.choice((2, 3, 4))
        n = rng.randint(r + 2, 8)
        pool.append(random_sparse_paving(r, n, rng, tries=rng.randint(1, 6))[0])
        pool.append(random_transversal(r, n, rng)[0])
    return pool


def _kbo(m, k):
    return m.rank_total == 0 or is_k_base_orderable(m, min(k, m.rank_total))


def test_c8_closure_properties(catalog):
    rng = random.Random(2024)
    pool = _closure_pool(rng, catalog)
    counts = dict.fromkeys(("dual", "minor", "sum", "extension", "relaxation"), 0)

    cases = 0
    while counts["dual"] < 100:
        m, k = rng.choice(pool), rng.choice((1, 2))
        held = _kbo(m, k)
        assert held == _kbo(m.dual(), k)
        counts["dual"] += held
        cases += 1
    assert cases > counts["dual"]  # negative cases were sampled too

    while counts["minor"] < 100:
        m, k = rng.choice(pool), rng.choice((1, 2))
        if _kbo(m, k):
            x = 1 << rng.randrange(m.n)
            assert _kbo(m.delete(x), k) and _kbo(m.contract(x), k)
            counts["minor"] += 1

    small = [m for m in pool if m.n <= 5]
    while counts["sum"] < 100:
        m, n, k = rng.choice(small), rng.choice(small), rng.choice((1, 2))
        s = direct_sum(m, n.relabel([f"z{i}" for i in range(n.n)]))
        assert _kbo(s, k) == (_kbo(m, k) and _kbo(n, k))
        counts["sum"] += _kbo(s, k)

    while counts["extension"] < 100:
        m, k = rng.choice(pool), rng.choice((1, 2))
        if _kbo(m, k):
            y = m.closure(sum(1 << e for e in rng.sample(range(m.n), rng.randint(0, m.n))))
            assert _kbo(principal_extension(m, y), k)
            counts["extension"] += 1

    for m in pool + [e.matroid for e in catalog if e.matroid.n <= 10]:
        if not is_base_orderable(m):
            continue
        for c in m.circuits(max_size=m.rank_total):
            if m.is_hyperplane(c):
                assert is_base_orderable(relax_circuit_hyperplane(m, c))
                counts["relaxation"] += 1
    assert min(counts.values()) >= 100, counts

    k4 = mk4()
    paving = [e for e in catalog if is_paving(e.matroid)]
    assert len(paving) >= 50
    for e in paving:
        assert is_base_orderable(e.matroid) == (not has_minor_isomorphic(e.matroid, k4)), e.name


def test_c9_counting():
    for k in range(2, 7):
        assert count_beta_classes(k, check_isomorphism_up_to=4) == four_cycles(k)
    for k in (2, 3, 4):
        assert len(beta_isomorphism_classes(k)) == four_cycles(k)
    for h in range(1, 8):
        assert beta_class_formula(2 * h + 1) == h * h == four_cycles(2 * h + 1)
        assert beta_class_formula(2 * h) == (h - 1) ** 2 + h == four_cycles(2 * h)
    assert [four_cycles(k) for k in range(2, 8)] == [1, 1, 3, 4, 7, 9]
