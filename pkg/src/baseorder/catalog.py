"""A fixed, seeded collection of small matroids used as a test bed.

Every entry carries a provenance dict describing how it was built, so the
same collection can be rebuilt and compared across runs.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations

from .core import Matroid, free_matroid, mask_of, popcount, uniform
from .critical import build_m_delta, enumerate_critical_graphs
from .families import alpha_tuples, beta_tuples, build_m_alpha, build_m_beta
from .operations import (
    BipartiteGraph,
    direct_sum,
    free_extension,
    graphic_matroid,
    induce_bipartite,
    parallel_connection,
    principal_extension,
    sparse_paving,
    truncation,
)


@dataclass(frozen=True)
class Entry:
    name: str
    matroid: Matroid
    provenance: dict


K4_EDGES = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]


def mk4() -> Matroid:
    return graphic_matroid(K4_EDGES, list("abcdef"))


def wheel(n: int) -> Matroid:
    spokes = [(0, i) for i in range(1, n + 1)]
    rim = [(i, i % n + 1) for i in range(1, n + 1)]
    return graphic_matroid(spokes + rim)


def complete_graph(n: int) -> Matroid:
    return graphic_matroid(list(combinations(range(n), 2)))


def fano(drop_line: bool = False) -> Matroid:
    lines = [(0, 1, 3), (1, 2, 4), (2, 3, 5), (3, 4, 6), (4, 5, 0), (5, 6, 1), (6, 0, 2)]
    if drop_line:
        lines = lines[1:]
    return sparse_paving(3, 7, [mask_of(x) for x in lines], [str(i + 1) for i in range(7)])


def vamos() -> Matroid:
    pairs = [(0, 1), (2, 3), (4, 5), (6, 7)]
    hyper = [mask_of(pairs[i] + pairs[j]) for i, j in combinations(range(4), 2) if (i, j) != (2, 3)]
    return sparse_paving(4, 8, hyper, ["a", "a'", "b", "b'", "c", "c'", "d", "d'"])


def random_sparse_paving(r: int, n: int, rng: random.Random, tries: int = 40) -> tuple[Matroid, list]:
    """Greedy random family of r-sets meeting pairwise in at most r - 2 elements."""
    chosen: list[int] = []
    for _ in range(tries):
        h = mask_of(rng.sample(range(n), r))
        if all(popcount(h & g) <= r - 2 for g in chosen):
            chosen.append(h)
    chosen.sort()
    return sparse_paving(r, n, chosen), chosen


def random_transversal(r: int, n: int, rng: random.Random, p: float = 0.5):
    adj = []
    for _ in range(n):
        a = sum(1 << j for j in range(r) if rng.random() < p)
        adj.append(a or 1 << rng.randrange(r))
    g = BipartiteGraph(tuple(f"t{i}" for i in range(n)), tuple(adj))
    return induce_bipartite(free_matroid(r, [f"v{j}" for j in range(r)]), g), adj


def random_graph(vertices: int, edges: int, rng: random.Random):
    es = [tuple(rng.sample(range(vertices), 2)) for _ in range(edges)]
    return graphic_matroid(es, [f"e{i}" for i in range(edges)]), es


def build_catalog(seed: int = 0) -> list[Entry]:
    rng = random.Random(seed)
    out: list[Entry] = []

    def add(name, m, **prov):
        out.append(Entry(name, m, prov))

    for n in range(1, 7):
        for r in range(n + 1):
            add(f"U{r},{n}", uniform(r, n), family="uniform", r=r, n=n)
    add("U2,7", uniform(2, 7), family="uniform", r=2, n=7)
    add("U3,7", uniform(3, 7), family="uniform", r=3, n=7)
    add("U4,8", uniform(4, 8), family="uniform", r=4, n=8)

    k4 = mk4()
    add("M(K4)", k4, family="graphic", graph="K4")
    add("M(K4-e)", k4.delete(k4.mask(["f"])), family="graphic", graph="K4-e")
    add("M(W4)", wheel(4), family="graphic", graph="W4")
    add("M(K5)", complete_graph(5), family="graphic", graph="K5")
    add("M(K3,3)", graphic_matroid([(u, v) for u in range(3) for v in range(3, 6)]),
        family="graphic", graph="K3,3")
    add("F7", fano(), family="sparse-paving", classic="Fano")
    add("F7-", fano(True), family="sparse-paving", classic="non-Fano")
    add("V8", vamos(), family="sparse-paving", classic="Vamos")
    add("P6", sparse_paving(3, 6, [0b000111]), family="sparse-paving", hyperplanes=[7])
    add("R6", sparse_paving(3, 6, [0b000111, 0b111000]), family="sparse-paving",
        hyperplanes=[7, 56])

    for i, (r, n) in enumerate([(3, 6), (3, 7), (3, 7), (4, 8), (4, 8), (2, 5)]):
        m, hyp = random_sparse_paving(r, n, rng)
        add(f"sparse-paving#{i}", m, family="random-sparse-paving", r=r, n=n, hyperplanes=hyp)
    for i, (r, n) in enumerate([(3, 6), (3, 7), (4, 7), (4, 8), (5, 8), (2, 6)]):
        m, adj = random_transversal(r, n, rng)
        add(f"transversal#{i}", m, family="random-transversal", r=r, adjacency=adj)
    for i, (v, e) in enumerate([(4, 6), (5, 7), (5, 8), (6, 8), (4, 7)]):
        m, es = random_graph(v, e, rng)
        add(f"graphic#{i}", m, family="random-graphic", edges=es)

    for r in (3, 4, 5):
        for d in enumerate_critical_graphs(r):
            add(f"M(D:{d.canonical_key()})", build_m_delta(d), family="mdelta",
                graph=d.to_dict())
    for r in (3, 4):
        for t in alpha_tuples(r):
            add(f"M_alpha{tuple(t.sizes().values())}", build_m_alpha(t), family="malpha",
                sizes=t.sizes())
    for t in beta_tuples(2):
        add("M_beta(k=2)", build_m_beta(t), family="mbeta", k=2, sizes=t.sizes())

    u24, u13 = uniform(2, 4), uniform(1, 3)
    add("U2,4+U1,3", direct_sum(u24, u13), family="direct-sum", parts=["U2,4", "U1,3"])
    add("U2,4+U2,4", direct_sum(u24, u24), family="direct-sum", parts=["U2,4", "U2,4"])
    add("M(K4)*", k4.dual(), family="dual", of="M(K4)")
    add("F7*", fano().dual(), family="dual", of="F7")
    add("T(M(K5))", truncation(complete_graph(5)), family="truncation", of="M(K5)")
    add("M(K4)+e", free_extension(k4), family="free-extension", of="M(K4)")
    add("M(K4)+{a,b}e", principal_extension(k4, k4.mask(["a", "b"])), family="principal-extension",
        of="M(K4)", flat=["a", "b"])
    add("P(U2,3,U2,3)", parallel_connection(uniform(2, 3, ["p", "q", "s"]),
                                            uniform(2, 3, ["p", "u", "v"]), "p"), family="parallel-connection",
        parts=["U2,3", "U2,3"])
    return out


def catalog_by_name(seed: int = 0) -> dict[str, Matroid]:
    return {e.name: e.matroid for e in build_catalog(seed)}
