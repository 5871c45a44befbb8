import numpy as np
import pytest

from baseorder.catalog import mk4
from baseorder.core import (
    DomainError,
    Matroid,
    Presentation,
    PresentationError,
    check_rank_axioms,
    free_matroid,
    uniform,
    validate_presentation,
)

from oracles import cyclic_flats_brute, rank_from_flats


def test_uniform_presentation():
    u = uniform(2, 4)
    assert u.flats == ((0, 0), (0b1111, 2))
    assert u.rank_total == 2
    assert len(list(u.bases())) == 6


def test_uniform_extremes():
    assert uniform(0, 3).flats == ((0b111, 0),)
    assert uniform(0, 3).loops() == 0b111
    assert free_matroid(3).flats == ((0, 0),)
    assert free_matroid(3).coloops() == 0b111
    with pytest.raises(DomainError):
        uniform(5, 3)


def test_rank_matches_min_formula(catalog_small):
    for e in catalog_small:
        m = e.matroid
        table = m.rank_table()
        step = max(1, (1 << m.n) // 512)
        for x in range(0, 1 << m.n, step):
            assert table[x] == rank_from_flats(m.flats, x), e.name


def test_presented_flats_are_cyclic_flats(catalog_small):
    for e in catalog_small:
        m = e.matroid
        if m.n > 8:
            continue
        brute = cyclic_flats_brute(m.rank, m.n)
        assert sorted(m.flats) == brute, e.name


@pytest.mark.parametrize("bad, axiom", [
    ([(0, 0), (0b01, 1)], "Z2"),          # rank gap: {a} has rank 1 but differs by 1 element
    ([(0, 0), (0b11, 2)], "Z2"),          # a cyclic set with rank equal to its size
    ([(0b01, 0), (0b10, 0), (0b11, 1)], "Z0"),  # no bottom
])
def test_validation_reports_axiom(bad, axiom):
    p = Presentation.build(2, bad)
    report = validate_presentation(p)
    assert not report.ok
    assert report.axiom == axiom


def test_z3_violation_detected():
    # two disjoint rank-1 triples cannot span a rank-3 join
    flats = [(0, 0), (0b000111, 1), (0b111000, 1), (0b111111, 3)]
    report = validate_presentation(Presentation.build(6, flats))
    assert not report.ok and report.axiom == "Z3"


def test_invalid_presentation_raises():
    with pytest.raises(PresentationError) as err:
        Matroid.from_flats(2, [(0, 0), (0b01, 1)])
    assert err.value.report.axiom == "Z2"


def test_duplicate_labels_rejected():
    with pytest.raises(DomainError):
        uniform(1, 2, ["a", "a"])


def test_k4_basics():
    m = mk4()
    assert m.n == 6 and m.rank_total == 3
    # triangles of K4 are the 3-circuits
    tri = [m.mask(t) for t in (["a", "b", "d"], ["a", "c", "e"], ["b", "c", "f"], ["d", "e", "f"])]
    assert sorted(c for c in m.circuits() if bin(c).count("1") == 3) == sorted(tri)
    for t in tri:
        assert m.is_circuit(t) and m.is_hyperplane(t) and m.is_flat(t)
    assert m.closure(m.mask(["a", "b"])) == m.mask(["a", "b", "d"])


def test_rank_axioms_on_catalog(catalog_small):
    for e in catalog_small:
        assert check_rank_axioms(e.matroid), e.name


def test_dual_is_involution_and_rank_formula(catalog_small):
    for e in catalog_small:
        m = e.matroid
        d = m.dual()
        assert d.dual() == m, e.name
        t, td = m.rank_table().astype(int), d.rank_table().astype(int)
        full = m.ground
        xs = np.arange(1 << m.n)
        sizes = np.array([bin(x).count("1") for x in xs])
        assert np.array_equal(td, sizes + t[full ^ xs] - m.rank_total), e.name


def test_minor_duality(catalog_small):
    for e in catalog_small:
        m = e.matroid
        for x in range(m.n):
            s = 1 << x
            assert m.contract(s).dual() == m.dual().delete(s), (e.name, x)


def test_minor_rank_matches_definition():
    m = mk4()
    c, d = m.mask(["a"]), m.mask(["f"])
    minor = m.minor(contract=c, delete=d)
    keep = [i for i in range(m.n) if not (c | d) >> i & 1]
    for y in range(1 << minor.n):
        full = sum(1 << keep[i] for i in range(minor.n) if y >> i & 1)
        assert minor.rank(y) == m.rank(full | c) - m.rank(c)


def test_minor_labels_follow_elements():
    m = mk4()
    assert m.delete(m.mask(["c"])).labels == ("a", "b", "d", "e", "f")


def test_relabel_and_permute_preserve_structure():
    m = mk4()
    perm = [5, 4, 3, 2, 1, 0]
    p = m.permute(perm)
    profile = sorted((bin(f).count("1"), r) for f, r in m.flats)
    assert sorted((bin(f).count("1"), r) for f, r in p.flats) == profile
    assert len(list(p.bases())) == 16
    assert m.relabel("uvwxyz").names(m.mask(["a", "b"])) == ["u", "v"]


def test_concurrent_rank_queries_agree():
    from concurrent.futures import ThreadPoolExecutor

    m = Matroid.from_flats(8, uniform(4, 8).flats)
    with ThreadPoolExecutor(4) as pool:
        tables = list(pool.map(lambda _: m.rank_table().tobytes(), range(8)))
    assert len(set(tables)) == 1
