import itertools
import math
import random

import pytest

from kconnkit.canon import connected_graphs
from kconnkit.graph_core import (
    Graph,
    complete_bipartite_graph,
    complete_graph,
    path_graph,
)
from kconnkit.kconn import (
    PathWitness,
    StarWitness,
    is_k_connected,
    kconn_after_deletion,
    largest_component_restriction,
    max_k_connected_subset,
    star_or_path,
)
from oracles import brute_is_separator, brute_max_disjoint_paths, random_connected_graph


def brute_is_k_connected(g: Graph, a, k: int) -> bool:
    """Subset-pair brute force that never touches the flow machinery."""
    fa = sorted(a)
    for ell in range(1, min(k, len(fa)) + 1):
        for z1 in itertools.combinations(fa, ell):
            for z2 in itertools.combinations(fa, ell):
                if brute_max_disjoint_paths(g, z1, z2) < ell:
                    return False
    return True


def test_complete_bipartite_core_is_k_connected():
    g = complete_bipartite_graph(4, 10)
    core = set(range(4, 14))
    assert is_k_connected(g, core, 4).ok
    # the whole vertex set is 4-connected too (smaller host, cheaper check)
    small = complete_bipartite_graph(4, 6)
    assert is_k_connected(small, small.vertex_set, 4).ok


def test_path_is_not_2_connected_with_deterministic_witness():
    g = path_graph(4)
    verdict = is_k_connected(g, {0, 1, 2, 3}, 2)
    assert not verdict.ok
    w = verdict.witness
    # first failure in (ascending l, lexicographic pair) order
    assert (w.z1, w.z2) == (frozenset({0, 1}), frozenset({1, 2}))
    assert w.separator == frozenset({1})
    assert len(w.separator) < len(w.z1)
    assert brute_is_separator(g, w.separator, w.z1, w.z2)


def test_one_connected_means_same_component():
    g = Graph.from_edges(5, [(0, 1), (1, 2), (3, 4)])
    assert is_k_connected(g, {0, 1, 2}, 1).ok
    assert not is_k_connected(g, {0, 3}, 1).ok
    assert is_k_connected(g, {3, 4}, 1).ok


def test_is_k_connected_requires_big_enough_set():
    with pytest.raises(ValueError):
        is_k_connected(path_graph(4), {0, 1}, 3)


def test_is_k_connected_matches_brute_force_exhaustively_small():
    for g in connected_graphs(5):
        for k in (1, 2, 3):
            if g.n < k:
                continue
            got = is_k_connected(g, g.vertex_set, k).ok
            want = brute_is_k_connected(g, g.vertex_set, k)
            assert got == want, (g, k)


def test_is_k_connected_matches_brute_force_seeded():
    rng = random.Random(1234)
    for _ in range(25):
        g = random_connected_graph(rng, rng.randint(4, 7))
        a = frozenset(rng.sample(range(g.n), rng.randint(3, g.n)))
        for k in (1, 2, 3):
            if len(a) < k:
                continue
            assert is_k_connected(g, a, k).ok == brute_is_k_connected(g, a, k)


def test_subset_monotonicity():
    rng = random.Random(77)
    for _ in range(30):
        g = random_connected_graph(rng, 7)
        a = g.vertex_set
        for k in (2, 3):
            if is_k_connected(g, a, k).ok:
                for size in range(k, len(a)):
                    sub = frozenset(rng.sample(sorted(a), size))
                    assert is_k_connected(g, sub, k).ok


def test_max_k_connected_subset_complete_graph():
    res = max_k_connected_subset(complete_graph(5), range(5), 3)
    assert res.size == 5
    assert res.vertices == frozenset(range(5))


def test_max_k_connected_subset_path_at_k2():
    # any 2-set of a connected graph is 2-connected (trivial paths cover
    # the overlapping pairs), while no 3-subset of a path works
    res = max_k_connected_subset(path_graph(4), range(4), 2)
    assert res.size == 2
    assert res.vertices == frozenset({0, 1})
    assert not is_k_connected(path_graph(4), {0, 1, 2}, 2).ok


def test_max_k_connected_subset_sentinel():
    # a path has no 3-connected set of any size >= 3
    res = max_k_connected_subset(path_graph(5), range(5), 3)
    assert res.size == 2
    assert res.vertices is None


def test_max_k_connected_subset_matches_brute_force():
    rng = random.Random(5150)
    for _ in range(15):
        g = random_connected_graph(rng, 6)
        for k in (2, 3):
            res = max_k_connected_subset(g, g.vertex_set, k)
            best = k - 1
            for size in range(g.n, k - 1, -1):
                if any(
                    brute_is_k_connected(g, c, k)
                    for c in itertools.combinations(range(g.n), size)
                ):
                    best = size
                    break
            assert res.size == best


def test_max_k_connected_subset_returns_lex_least_maximum():
    g = complete_bipartite_graph(2, 4)
    res = max_k_connected_subset(g, g.vertex_set, 2)
    alt = [
        frozenset(c)
        for c in itertools.combinations(range(g.n), res.size)
        if is_k_connected(g, c, 2).ok
    ]
    assert res.vertices == min(alt, key=lambda s: sorted(s))


def test_star_or_path_on_star_host():
    g = complete_bipartite_graph(1, 6)
    res = star_or_path(g, set(range(1, 7)), 5)
    assert isinstance(res, StarWitness)
    assert res.centre == 0
    assert len(res.legs) >= 5
    _check_star(g, res, set(range(1, 7)))


def test_star_or_path_on_path_host():
    g = path_graph(10)
    res = star_or_path(g, set(range(10)), 8)
    assert isinstance(res, PathWitness)
    assert sum(1 for v in res.path if v < 10) >= 8
    _check_path(g, res, set(range(10)), 8)


def test_star_or_path_on_random_trees():
    rng = random.Random(40)
    for _ in range(10):
        n = 40
        edges = [(i, rng.randint(0, i - 1)) for i in range(1, n)]
        g = Graph.from_edges(n, edges)
        leaves = {v for v in g.vertices if g.degree(v) == 1}
        res = star_or_path(g, leaves, 4)
        assert res is not None
        if isinstance(res, StarWitness):
            _check_star(g, res, leaves)
        else:
            _check_path(g, res, leaves, 4)


def test_star_or_path_rejects_split_u():
    g = Graph.from_edges(4, [(0, 1), (2, 3)])
    with pytest.raises(ValueError):
        star_or_path(g, {0, 3}, 2)


def test_star_or_path_none_when_impossible():
    g = path_graph(3)
    assert star_or_path(g, {0, 1, 2}, 4) is None


def _check_star(g: Graph, w: StarWitness, u: set) -> None:
    seen: set[int] = set()
    for leg in w.legs:
        assert leg[0] == w.centre
        assert leg[-1] in u
        assert all(g.has_edge(x, y) for x, y in zip(leg, leg[1:]))
        inner = set(leg[1:])
        assert not inner & seen
        seen |= inner


def _check_path(g: Graph, w: PathWitness, u: set, m: int) -> None:
    assert len(set(w.path)) == len(w.path)
    assert all(g.has_edge(x, y) for x, y in zip(w.path, w.path[1:]))
    assert sum(1 for v in w.path if v in u) >= m


def test_largest_component_restriction_whole_set():
    g = path_graph(4)
    assert largest_component_restriction(g, {0, 2, 3}, set()) == frozenset({0, 2, 3})


def test_largest_component_restriction_bipartite():
    # dropping 2 of the 3 centres keeps all 9 core vertices joined
    g = complete_bipartite_graph(3, 9)
    core = set(range(3, 12))
    assert largest_component_restriction(g, core, {0, 1}) == frozenset(core)


def test_largest_component_restriction_star_centre():
    g = complete_bipartite_graph(1, 5)
    res = largest_component_restriction(g, set(range(1, 6)), {0})
    assert len(res) == 1
    assert res == frozenset({1})


def test_largest_component_restriction_pigeonhole_bound():
    rng = random.Random(2024)
    hits = 0
    while hits < 40:
        g = random_connected_graph(rng, 7)
        k = rng.choice((2, 3))
        a = g.vertex_set
        if not is_k_connected(g, a, k).ok:
            continue
        hits += 1
        s = frozenset(rng.sample(range(g.n), k - 1))
        got = largest_component_restriction(g, a, s)
        bound = math.ceil((len(a) // k - 1) / k)
        assert len(got) >= bound


def test_kconn_after_deletion_complete_graph():
    res = kconn_after_deletion(complete_graph(5), range(5), 3, 1)
    assert res.size == 4
    assert res.vertices == frozenset({0, 2, 3, 4})


def test_kconn_after_deletion_bipartite_centre():
    g = complete_bipartite_graph(3, 6)
    core = frozenset(range(3, 9))
    res = kconn_after_deletion(g, core, 3, 0)
    assert res.size == 6
    assert res.vertices == core


def test_kconn_after_deletion_isolated_vertex_case():
    # deleting a vertex outside the witnessing structure keeps all of a
    g = Graph.from_edges(6, list(complete_graph(5).edges) + [(0, 5)])
    res = kconn_after_deletion(g, range(5), 3, 5)
    assert res.size == 5
    rechecked, _ = g.induced_subgraph(range(5))
    assert is_k_connected(rechecked, range(5), 2).ok


def test_kconn_after_deletion_requires_k_connected():
    with pytest.raises(ValueError):
        kconn_after_deletion(path_graph(4), range(4), 2, 0)
