import random

import pytest

from baseorder.catalog import mk4
from baseorder.core import DomainError, uniform
from baseorder.exchange import (
    PreconditionError,
    certify_excluded_minor,
    count_failing_pairs,
    exchange_digraph,
    exchange_failures,
    find_k_exchange_ordering,
    first_failing_pair,
    has_exchange_ordering,
    is_base_orderable,
    is_k_base_orderable,
    is_kl_base_orderable,
    is_strongly_base_orderable,
    pair_has_k_ordering,
    reduce_nonorderable_pair,
    source_sink_reduction,
)
from baseorder.operations import direct_sum
from baseorder.structure import is_isomorphic, is_transversal

from oracles import has_ordering_brute


def _k4_pair(m):
    return m.mask(list("abe")), m.mask(list("cdf"))


def test_k4_digraph_is_four_cycle_pattern():
    m = mk4()
    a, b = _k4_pair(m)
    d = exchange_digraph(m, a, b)
    # a basis pair of K4 fails exactly on a 2 x 2 block, oriented as a 4-cycle
    assert d.edge_count() == 4
    assert d.reversed().reversed() == d


def test_digraph_reverses_under_duality():
    m = mk4()
    a, b = _k4_pair(m)
    # complementary bases of M are also bases of the dual, with every edge flipped
    assert exchange_digraph(m.dual(), a, b) == exchange_digraph(m, a, b).reversed()


def test_k4_blocking_subgraph():
    m = mk4()
    a, b = _k4_pair(m)
    ok, block = has_exchange_ordering(m, a, b)
    assert not ok
    assert bin(block.x_side).count("1") + bin(block.y_side).count("1") == m.rank_total + 1
    assert block.verify(m)
    assert block.is_orientation(exchange_digraph(m, a, b))
    assert block.to_dict(m)["kind"] == "blocking"


def test_ordering_certificate_verifies():
    m = uniform(3, 6)
    ok, sigma = has_exchange_ordering(m, 0b000111, 0b111000)
    assert ok and sigma.verify(m, 1)
    strong = find_k_exchange_ordering(m, 0b000111, 0b111000, 3)
    assert strong is not None and strong.verify(m, 3)
    assert strong.inverse().inverse().map == strong.map


def test_non_basis_rejected():
    m = mk4()
    with pytest.raises(DomainError):
        has_exchange_ordering(m, m.mask(list("abd")), m.mask(list("cef")))


def test_classifiers_on_k4():
    m = mk4()
    assert not is_base_orderable(m)
    assert not is_strongly_base_orderable(m)
    assert is_kl_base_orderable(m, 1, 0)
    assert not is_kl_base_orderable(m, 2, 0)
    assert count_failing_pairs(m, 1) > 0


def test_kl_domain():
    with pytest.raises(DomainError):
        is_kl_base_orderable(mk4(), 4, 0)
    with pytest.raises(DomainError):
        is_kl_base_orderable(mk4(), 0, 0)


def test_matching_agrees_with_bruteforce_on_random_pairs(catalog_small):
    rng = random.Random(11)
    checked = 0
    for e in catalog_small:
        m = e.matroid
        if m.rank_total > 4:
            continue
        bases = list(m.bases())
        bset = {frozenset(i for i in range(m.n) if x >> i & 1) for x in bases}
        for _ in range(20):
            a, b = rng.choice(bases), rng.choice(bases)
            fa = frozenset(i for i in range(m.n) if a >> i & 1)
            fb = frozenset(i for i in range(m.n) if b >> i & 1)
            assert has_exchange_ordering(m, a, b)[0] == has_ordering_brute(bset, fa, fb), e.name
            for k in (2, 3):
                assert pair_has_k_ordering(m, a, b, k) == has_ordering_brute(bset, fa, fb, k)
            checked += 1
    assert checked > 300


def test_kernel_agrees_with_python_search():
    m = mk4()
    for a in m.bases():
        for b in m.bases():
            for k in (1, 2, 3):
                found = find_k_exchange_ordering(m, a, b, k)
                assert (found is not None) == pair_has_k_ordering(m, a, b, k)


def test_transversal_implies_sbo(catalog):
    for e in catalog:
        m = e.matroid
        if m.n <= 10 and is_transversal(m):
            assert is_strongly_base_orderable(m), e.name


def test_everything_is_one_zero_bo(catalog_small):
    for e in catalog_small:
        m = e.matroid
        if m.rank_total >= 1 and m.n <= 9:
            assert is_kl_base_orderable(m, 1, 0), e.name


def test_kk_bo_equals_k_bo(catalog_small):
    for e in catalog_small:
        m = e.matroid
        if m.n > 8 or m.rank_total < 2:
            continue
        for k in (1, 2):
            if k <= m.rank_total:
                assert is_kl_base_orderable(m, k, k) == is_k_base_orderable(m, k), (e.name, k)


def test_reduce_to_difference_minor():
    m = direct_sum(mk4(), uniform(1, 2, ["x", "y"]))
    minor = reduce_nonorderable_pair(m, 1)
    assert not is_base_orderable(minor)
    assert minor.n <= 8
    with pytest.raises(PreconditionError):
        reduce_nonorderable_pair(uniform(2, 4), 1)


def test_source_reduction_recovers_k4():
    m = direct_sum(mk4(), uniform(1, 2, ["x", "y"]))
    a, b = m.mask(list("abex")), m.mask(list("cdfy"))
    ok, block = has_exchange_ordering(m, a, b)
    assert not ok
    # the U(1,2) summand puts an element of Y with all its edges pointing one way
    assert m.names(block.y_side) == ["c", "d", "y"]
    minor = source_sink_reduction(m, block)
    assert minor is not None and minor.n == 6
    assert is_isomorphic(minor, mk4())


def test_source_reduction_needs_disjoint_bases():
    m = mk4()
    ok, block = has_exchange_ordering(m, *_k4_pair(m))
    with pytest.raises(PreconditionError):
        source_sink_reduction(direct_sum(m, uniform(1, 1)), block)


def test_exchange_failures_trace():
    m = mk4()
    a, b = _k4_pair(m)
    traces = exchange_failures(m, a, b, 1)
    assert len(traces) == 6
    assert all(bad for _, bad in traces)


def test_k4_certificate():
    cert = certify_excluded_minor(mk4(), "bo")
    assert cert.certified and cert.fails
    assert cert.one_sided == "contractions"
    d = cert.to_dict()
    assert d["minors_checked"] == 12 and d["witness"] is not None
    assert certify_excluded_minor(mk4(), "sbo").certified


def test_certificate_parallel_matches_serial():
    a = certify_excluded_minor(mk4(), "bo", jobs=1).to_dict()
    b = certify_excluded_minor(mk4(), "bo", jobs=2).to_dict()
    assert a == b


def test_first_failing_pair_is_deterministic():
    m = mk4()
    assert first_failing_pair(m, 1) == first_failing_pair(m, 1)
    assert first_failing_pair(uniform(3, 6), 3) is None
