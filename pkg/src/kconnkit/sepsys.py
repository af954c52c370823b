"""Nested separation systems, orientations, tree-decompositions, clean-up.

A nested separation system carries its host graph so that parts of
orientations (intersections of the chosen b-sides, the whole vertex set for
the empty orientation) are well defined.  Conversions between systems and
tree-decompositions preserve parts and adhesion; for a finite system every
consistent orientation becomes a tree node.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

from .graph_core import Graph, Separation, components, is_separation


def is_nested_pair(s1: Separation, s2: Separation) -> bool:
    """True iff some orientation of s1 is comparable to some orientation of s2."""
    i1 = s1.inverse()
    return s1.leq(s2) or s1.leq(s2.inverse()) or i1.leq(s2) or i1.leq(s2.inverse())


@dataclass(frozen=True)
class NestedSeparationSystem:
    """A symmetric, pairwise nested set of separations of one graph."""

    graph: Graph
    seps: frozenset[Separation]

    def __post_init__(self) -> None:
        for s in self.seps:
            if not is_separation(self.graph, s):
                raise ValueError(f"not a separation of the host graph: {s}")
            if s.inverse() not in self.seps:
                raise ValueError(f"system is not symmetric at {s}")
        listed = sorted(self.seps, key=Separation.sort_key)
        for s1, s2 in itertools.combinations(listed, 2):
            if not is_nested_pair(s1, s2):
                raise ValueError(f"separations cross: {s1} and {s2}")

    @cached_property
    def pairs(self) -> tuple[frozenset[Separation], ...]:
        """Unordered {(A,B), (B,A)} pairs, deterministically ordered."""
        seen: set[frozenset[Separation]] = set()
        out = []
        for s in sorted(self.seps, key=Separation.sort_key):
            pair = frozenset({s, s.inverse()})
            if pair not in seen:
                seen.add(pair)
                out.append(pair)
        return tuple(out)

    def to_json(self) -> dict:
        from .graph_core import graph_to_json

        return {
            "graph": graph_to_json(self.graph),
            "separations": [s.to_json() for s in sorted(self.seps, key=Separation.sort_key)],
        }

    @staticmethod
    def from_json(obj: dict) -> "NestedSeparationSystem":
        from .graph_core import graph_from_json

        g = graph_from_json(obj["graph"])
        seps = set()
        for so in obj["separations"]:
            s = Separation.from_json(so)
            seps.add(s)
            seps.add(s.inverse())
        return NestedSeparationSystem(g, frozenset(seps))


def nss_from_separations(g: Graph, seps: Iterable[Separation]) -> NestedSeparationSystem:
    """Build a system from one orientation per separation, closing symmetrically."""
    full = set()
    for s in seps:
        full.add(s)
        full.add(s.inverse())
    return NestedSeparationSystem(g, frozenset(full))


@dataclass(frozen=True)
class Orientation:
    chosen: frozenset[Separation]

    def sort_key(self) -> tuple:
        return tuple(s.sort_key() for s in sorted(self.chosen, key=Separation.sort_key))


def is_consistent(n: NestedSeparationSystem, o: Orientation) -> bool:
    for s in o.chosen:
        for t in n.seps:
            if t.leq(s) and t not in o.chosen:
                return False
    return True


def consistent_orientations(n: NestedSeparationSystem) -> list[Orientation]:
    """All consistent orientations, in deterministic order.

    The empty system has exactly one orientation (the empty one) whose part
    is the whole vertex set.
    """
    pairs = n.pairs
    out: list[Orientation] = []

    def extend(i: int, chosen: list[Separation]) -> None:
        if i == len(pairs):
            out.append(Orientation(frozenset(chosen)))
            return
        for s in sorted(pairs[i], key=Separation.sort_key):
            # consistency is a pairwise condition (including a pick against
            # its own inverse), so incremental checks prune exactly the
            # inconsistent branches
            if s.inverse() != s and s.inverse().leq(s):
                continue
            if all(
                not t.inverse().leq(s) and not s.inverse().leq(t) for t in chosen
            ):
                chosen.append(s)
                extend(i + 1, chosen)
                chosen.pop()

    extend(0, [])
    out.sort(key=Orientation.sort_key)
    return out


def part_of(n: NestedSeparationSystem, o: Orientation) -> frozenset[int]:
    """The part of an orientation: intersection of its b-sides."""
    part = n.graph.vertex_set
    for s in o.chosen:
        part &= s.b
    return part


def adhesion_of_nss(n: NestedSeparationSystem) -> int:
    return max((s.order for s in n.seps), default=0)


# ---------------------------------------------------------------------------
# Tree-decompositions


@dataclass(frozen=True)
class TreeDecomposition:
    """A tree over node ids ``0..k-1`` with one part per node."""

    tree: Graph
    parts: tuple[frozenset[int], ...]

    def __post_init__(self) -> None:
        if len(self.parts) != self.tree.n:
            raise ValueError("one part per tree node required")

    def part(self, t: int) -> frozenset[int]:
        return self.parts[t]

    def adhesion_sets(self) -> list[frozenset[int]]:
        return [self.parts[u] & self.parts[v] for u, v in self.tree.sorted_edges()]

    def to_json(self) -> dict:
        from .graph_core import graph_to_json

        return {
            "tree": graph_to_json(self.tree),
            "parts": [sorted(p) for p in self.parts],
        }

    @staticmethod
    def from_json(obj: dict) -> "TreeDecomposition":
        from .graph_core import graph_from_json

        return TreeDecomposition(
            graph_from_json(obj["tree"]), tuple(frozenset(p) for p in obj["parts"])
        )


def validate_td(g: Graph, td: TreeDecomposition) -> bool:
    """Check the three tree-decomposition axioms plus tree-ness."""
    if not td.tree.is_tree():
        return False
    union = frozenset().union(*td.parts) if td.parts else frozenset()
    if union != g.vertex_set:
        return False
    for u, v in g.edges:
        if not any(u in p and v in p for p in td.parts):
            return False
    # per-vertex connectivity of {t : v in part(t)} is equivalent to (T3)
    for v in g.vertices:
        nodes = [t for t in td.tree.vertices if v in td.parts[t]]
        if not nodes:
            return False
        seen = {nodes[0]}
        stack = [nodes[0]]
        node_set = set(nodes)
        while stack:
            t = stack.pop()
            for w in td.tree.neighbors(t):
                if w in node_set and w not in seen:
                    seen.add(w)
                    stack.append(w)
        if seen != node_set:
            return False
    return True


def adhesion(x: NestedSeparationSystem | TreeDecomposition) -> int:
    """Largest separator or adhesion-set size; 0 when there is none."""
    if isinstance(x, NestedSeparationSystem):
        return adhesion_of_nss(x)
    return max((len(s) for s in x.adhesion_sets()), default=0)


def nss_to_td(n: NestedSeparationSystem) -> TreeDecomposition:
    """Tree-decomposition with the same parts and adhesion as the system.

    Nodes are the consistent orientations; two nodes are adjacent when they
    orient exactly one pair oppositely.  Separations with b-side equal to
    the whole vertex set are rejected.
    """
    full = n.graph.vertex_set
    for s in n.seps:
        if s.b == full:
            raise ValueError("system contains a separation onto the full vertex set")
    orientations = consistent_orientations(n)
    if not orientations:
        raise AssertionError("a finite nested system always has an orientation")
    parts = tuple(part_of(n, o) for o in orientations)
    edges = []
    for i, j in itertools.combinations(range(len(orientations)), 2):
        diff = orientations[i].chosen ^ orientations[j].chosen
        if len(diff) == 2:
            s1, s2 = sorted(diff, key=Separation.sort_key)
            if s1 == s2.inverse():
                edges.append((i, j))
    tree = Graph.from_edges(len(orientations), edges)
    td = TreeDecomposition(tree, parts)
    if not tree.is_tree():
        raise AssertionError("orientation adjacency did not form a tree")
    return td


def td_to_nss(g: Graph, td: TreeDecomposition) -> NestedSeparationSystem:
    """The separations induced by the oriented tree edges of ``td``."""
    if not validate_td(g, td):
        raise ValueError("invalid tree-decomposition")
    seps = set()
    for u, v in td.tree.sorted_edges():
        side_u = _subtree_nodes(td.tree, u, v)
        a = frozenset().union(*(td.parts[t] for t in side_u))
        b = frozenset().union(*(td.parts[t] for t in range(td.tree.n) if t not in side_u))
        seps.add(Separation(a, b))
        seps.add(Separation(b, a))
    return NestedSeparationSystem(g, frozenset(seps))


def _subtree_nodes(tree: Graph, keep: int, cut: int) -> set[int]:
    """Nodes on the ``keep`` side when the edge (keep, cut) is removed."""
    seen = {keep}
    stack = [keep]
    while stack:
        t = stack.pop()
        for w in tree.neighbors(t):
            if w != cut and w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


# ---------------------------------------------------------------------------
# Clean-up


def clean_up(n: NestedSeparationSystem) -> NestedSeparationSystem:
    """Replace each separation by the component cuts of its separator.

    For every separator S of the system and every component C of G - S the
    pair (C + N(C), V - C) enters the result, both ways round.  Components
    with C + N(C) equal to the whole vertex set are skipped; keeping them
    would re-create separations onto the full vertex set.
    """
    g = n.graph
    full = g.vertex_set
    out: set[Separation] = set()
    for sep_set in {s.separator for s in n.seps}:
        keep = full - sep_set
        if not keep:
            continue
        sub, old = g.induced_subgraph(keep)
        for comp in components(sub):
            c = frozenset(old[v] for v in comp)
            nbhd = frozenset().union(*(g.neighbors(v) for v in c)) - c
            a = c | nbhd
            if a == full:
                continue
            out.add(Separation(a, full - c))
            out.add(Separation(full - c, a))
    return NestedSeparationSystem(g, frozenset(out))
