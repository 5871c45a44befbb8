import math

import pytest

from baseorder.catalog import mk4
from baseorder.core import BudgetError, DomainError
from baseorder.critical import build_m_delta
from baseorder.exchange import exchange_digraph
from baseorder.families import (
    AlphaTuple,
    BetaTuple,
    alpha_count_lower_bound,
    alpha_critical_graph,
    alpha_isomorphism_classes,
    alpha_tuples,
    alpha_via_critical_graph,
    beta_cycle_classes,
    beta_deletion_report,
    beta_isomorphism_classes,
    beta_tuples,
    build_m_alpha,
    build_m_beta,
    build_m_beta_prime,
    count_beta_classes,
    forced_image_trace,
    verify_beta_theorem,
)
from baseorder.structure import is_isomorphic, is_transversal, mason_ingleton_slack

from oracles import four_cycles, partitions_into


@pytest.mark.parametrize("sizes, message", [
    ((1, 1, 1, 1, 1, 2), "|A|+|B|+|C|"),
    ((1, 1, 2, 2, 2, 0), "nonempty"),
    ((1, 2, 1, 1, 2, 1), "r + 1"),
])
def test_alpha_invariants(sizes, message):
    with pytest.raises(DomainError, match=message.replace("|", r"\|").replace("+", r"\+")):
        AlphaTuple(*sizes)


def test_beta_invariants():
    with pytest.raises(DomainError, match="k"):
        BetaTuple(1, 1, 0, 1, 0)
    with pytest.raises(DomainError, match="must both equal k"):
        BetaTuple(3, 1, 1, 1, 2)


def test_alpha_tuple_counts():
    # labelled tuples per rank, checked against direct enumeration
    for r in (3, 4, 5, 6):
        brute = sum(1 for a in range(1, r) for b in range(1, r) for d in range(1, r)
                    for e in range(1, r)
                    if a + b < r and d + e < r and a + b + d + e == r + 1)
        assert len(alpha_tuples(r)) == brute
    assert sum(len(alpha_tuples(r)) for r in (3, 4, 5)) == 15


def test_singleton_alpha_is_k4():
    m = build_m_alpha(AlphaTuple(1, 1, 1, 1, 1, 1))
    assert is_isomorphic(m, mk4())
    assert is_isomorphic(m, build_m_delta(alpha_critical_graph(AlphaTuple(1, 1, 1, 1, 1, 1))))


@pytest.mark.parametrize("r", [3, 4, 5])
def test_alpha_flats_and_block_pattern(r):
    for t in alpha_tuples(r):
        m = build_m_alpha(t)
        masks, _, _ = t.layout()
        proper = {f for f, _ in m.flats} - {0, m.ground}
        expected = {masks["C"] | masks["B"] | masks["E"], masks["C"] | masks["A"] | masks["D"],
                    masks["F"] | masks["E"] | masks["A"], masks["F"] | masks["D"] | masks["B"]}
        assert proper == expected
        g = alpha_critical_graph(t)
        a = masks["A"] | masks["B"] | masks["C"]
        b = masks["D"] | masks["E"] | masks["F"]
        assert exchange_digraph(m, a, b).edges() == g.expected_edges()
        assert alpha_via_critical_graph(t) == m


def test_alpha_mason_ingleton_sums():
    for r in (3, 4, 5):
        for t in alpha_tuples(r):
            m = build_m_alpha(t)
            proper = [f for f, _ in m.flats if f not in (0, m.ground)]
            assert mason_ingleton_slack(m, proper) == -1
            masks, _, _ = t.layout()
            cbe = masks["C"] | masks["B"] | masks["E"]
            cad = masks["C"] | masks["A"] | masks["D"]
            fea = masks["F"] | masks["E"] | masks["A"]
            assert mason_ingleton_slack(m, [cbe, cad, fea]) == t.e - 1


def test_alpha_deletion_not_transversal():
    m = build_m_alpha(AlphaTuple(2, 1, 2, 2, 1, 2))
    assert not is_transversal(m.delete(m.mask(["a1"])))


def test_beta_structure():
    for k in (2, 3, 4):
        for t in beta_tuples(k):
            m = build_m_beta(t)
            assert m.rank_total == 2 * k and m.n == 4 * k
            assert len(m.flats) == 7
            masks, _, _ = t.layout()
            assert m.is_basis(masks["A"] | masks["B"] | masks["C"])
            assert m.is_basis(masks["D"] | masks["E"] | masks["F"])
            hyper = masks["A"] | masks["B"] | masks["D"] | masks["E"]
            assert m.is_circuit(hyper) and m.is_hyperplane(hyper)


def test_beta_dual_identity():
    for k in (2, 3, 4):
        for t in beta_tuples(k):
            assert build_m_beta(t).dual() == build_m_beta_prime(t, swap_de=True)


def test_beta_k2_is_one_bo_not_two_bo():
    report = verify_beta_theorem(BetaTuple(2, 1, 1, 1, 1))
    assert report["ok"]
    assert report["failing_pairs"] == report["failing_disjoint_pairs"] == 2


def test_beta_budget_error_carries_partial_results():
    with pytest.raises(BudgetError) as err:
        verify_beta_theorem(BetaTuple(4, 2, 2, 2, 2))
    partial = err.value.partial
    assert partial["not_k_bo"] and partial["contractions_transversal"] and partial["census_ok"]
    assert partial["failing_disjoint_pairs"] == 2
    with pytest.raises(BudgetError) as err:
        verify_beta_theorem(BetaTuple(4, 1, 3, 2, 2))
    assert err.value.partial["failing_disjoint_pairs"] == 1


@pytest.mark.parametrize("t", beta_tuples(2) + beta_tuples(3))
def test_forced_images(t):
    trace = forced_image_trace(t)
    assert trace["single_exchange_maps"] > 0
    assert trace["forced_images"] == trace["single_exchange_maps"]
    assert trace["k_orderings"] == 0


def test_beta_cycle_counts_match_oracle():
    for k in range(2, 13):
        assert len(beta_cycle_classes(k)) == four_cycles(k)
        assert count_beta_classes(k, check_isomorphism_up_to=0) == four_cycles(k)


def test_reflections_are_not_isomorphisms():
    # reading the cycle backwards merges classes that are not isomorphic
    assert four_cycles(5, reflections=True) == 3
    assert len(beta_isomorphism_classes(5)) == 4


def test_alpha_lower_bound():
    assert alpha_count_lower_bound(3)[0] == 1
    assert alpha_count_lower_bound(7)[0] == 5
    for r in range(3, 13):
        exact, crude = alpha_count_lower_bound(r)
        assert exact == partitions_into(r + 1, 4)
        assert crude == math.comb(r, 3) / 24 <= exact


def test_alpha_classes_meet_the_bound():
    for r in (3, 4, 5, 6):
        assert alpha_isomorphism_classes(r) >= alpha_count_lower_bound(r)[0]


def test_k5_deletion_report():
    report = beta_deletion_report(BetaTuple(5, 2, 3, 2, 3), "c1")
    assert report["transversal"] is False and report["cotransversal"] is False
