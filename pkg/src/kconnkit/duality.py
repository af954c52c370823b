"""Width measures under adhesion limits, and duality reports.

Conventions (finite analogues of the cardinal statements):

* ``k_tree_width`` is the minimum over tree-decompositions of adhesion
  below k of the largest part size, so a bound of the shape "every part
  smaller than kappa" translates to ``k_tree_width <= kappa - 1``.
* ``tree_width`` is the usual tree-width (min over all decompositions of
  largest part size minus one).

The exact searches run over rooted, normalised decompositions: the root
part is chosen, every component hanging off it becomes its own child whose
interface (its neighbourhood, necessarily smaller than k) must be covered
by the child's root part.  Any decomposition can be normalised into this
shape without increasing part sizes, so the recursion is exhaustive.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Callable

from .graph_core import Graph, SizeGuardError, components, menger, min_separator_size
from .kconn import MaxKConnResult, is_k_connected, max_k_connected_subset
from .sepsys import TreeDecomposition, adhesion, validate_td


# ---------------------------------------------------------------------------
# Exact min-max search over adhesion-bounded decompositions


def _min_max_decomposition(
    g: Graph, k: int, cost: Callable[[frozenset[int]], int]
) -> tuple[int, TreeDecomposition]:
    """Minimise the maximum part cost over decompositions of adhesion < k.

    Exact, memoised on (interface, component) states.  Returns the optimum
    value together with a witnessing decomposition.
    """
    if g.n == 0:
        return 0, TreeDecomposition(Graph.from_edges(1), (frozenset(),))
    if k <= 0:
        part = g.vertex_set
        return cost(part), TreeDecomposition(Graph.from_edges(1), (part,))

    memo: dict[tuple[frozenset[int], frozenset[int]], tuple[int, tuple]] = {}

    def neighbourhood(c: frozenset[int]) -> frozenset[int]:
        return frozenset().union(*(g.neighbors(v) for v in c)) - c

    def best_for(interface: frozenset[int], comp: frozenset[int]) -> tuple[int, tuple]:
        key = (interface, comp)
        if key in memo:
            return memo[key]
        best_val = math.inf
        best_struct: tuple | None = None
        ordered = sorted(comp)
        region = interface | comp
        for size in range(1, len(ordered) + 1):
            for extra in combinations(ordered, size):
                part = interface | frozenset(extra)
                part_cost = cost(part)
                if part_cost >= best_val:
                    continue
                rest = sorted(region - part)
                val = part_cost
                children = []
                feasible = True
                if rest:
                    sub, old = g.induced_subgraph(region)
                    idx = {o: i for i, o in enumerate(old)}
                    keep = [idx[v] for v in rest]
                    inner, inner_old = sub.induced_subgraph(keep)
                    for c in components(inner):
                        child_comp = frozenset(old[inner_old[v]] for v in c)
                        child_if = neighbourhood(child_comp) & part
                        if len(child_if) >= k:
                            feasible = False
                            break
                        child_val, child_struct = best_for(child_if, child_comp)
                        val = max(val, child_val)
                        children.append(child_struct)
                        if val >= best_val:
                            feasible = False
                            break
                if feasible and val < best_val:
                    best_val = val
                    best_struct = (part, tuple(children))
        if best_struct is None:
            raise AssertionError("taking the whole region as one part always works")
        memo[key] = (best_val, best_struct)
        return memo[key]

    structures = []
    value = 0
    for comp in components(g):
        v, s = best_for(frozenset(), comp)
        value = max(value, v)
        structures.append(s)

    parts: list[frozenset[int]] = []
    edges: list[tuple[int, int]] = []

    def emit(struct: tuple, parent: int | None) -> None:
        part, children = struct
        idx = len(parts)
        parts.append(part)
        if parent is not None:
            edges.append((parent, idx))
        for ch in children:
            emit(ch, idx)

    root_ids = []
    for s in structures:
        root_ids.append(len(parts))
        emit(s, None)
    for r1, r2 in zip(root_ids, root_ids[1:]):
        edges.append((r1, r2))
    td = TreeDecomposition(Graph.from_edges(len(parts), edges), tuple(parts))
    return value, td


def k_tree_width(g: Graph, k: int, size_guard: int = 8) -> int:
    """Minimum over adhesion-<k tree-decompositions of the largest part size."""
    if g.n > size_guard:
        raise SizeGuardError(f"k_tree_width exact search limited to n <= {size_guard}")
    value, td = _min_max_decomposition(g, k, len)
    if not validate_td(g, td) or any(len(s) >= k for s in td.adhesion_sets()):
        raise AssertionError("witness decomposition failed validation")
    return value


def tree_width(g: Graph, size_guard: int = 10) -> int:
    """Exact tree-width via the elimination-ordering subset DP."""
    if g.n > size_guard:
        raise SizeGuardError(f"tree_width exact search limited to n <= {size_guard}")
    n = g.n
    if n == 0:
        return -1
    masks = g.adjacency_masks
    full = (1 << n) - 1

    def elim_degree(xmask: int, v: int) -> int:
        # neighbours of v reachable through eliminated set xmask
        from .graph_core import reachable_mask

        region = reachable_mask(masks, masks[v] & xmask, xmask)
        seen = masks[v] | region
        m = region
        while m:
            b = m & -m
            seen |= masks[b.bit_length() - 1]
            m ^= b
        return bin(seen & ~xmask & ~(1 << v)).count("1")

    f = [0] * (1 << n)
    for s in range(1, 1 << n):
        best = n
        m = s
        while m:
            b = m & -m
            v = b.bit_length() - 1
            m ^= b
            prev = f[s ^ b]
            cand = max(prev, elim_degree(s ^ b, v))
            if cand < best:
                best = cand
        f[s] = best
    return f[full]


# ---------------------------------------------------------------------------
# Duality certificates


def verify_td_certificate(
    g: Graph, a: frozenset[int], k: int, m: int, td: TreeDecomposition
) -> bool:
    """Adhesion below k and every part separable from ``a`` by fewer than m."""
    if not validate_td(g, td):
        raise ValueError("invalid tree-decomposition")
    if any(len(s) >= k for s in td.adhesion_sets()):
        return False
    return all(min_separator_size(g, a, p) < m for p in td.parts)


@dataclass(frozen=True)
class DualityReport:
    k: int
    m: int
    max_kconn: int
    ktw: int
    tw: int
    set_certificate: frozenset[int] | None
    td_certificate: TreeDecomposition | None
    separability: tuple[int, ...]
    best_td: TreeDecomposition


def check_duality(
    g: Graph, a, k: int, m: int, size_guard: int = 8
) -> DualityReport:
    """Search both sides of the duality and report verified certificates.

    The set certificate is a k-connected subset of ``a`` of size at least m;
    the decomposition certificate is an adhesion-<k tree-decomposition whose
    parts can all be separated from ``a`` by fewer than m vertices.  Both
    searches are exhaustive; neither side is inferred from the other.
    """
    if g.n > size_guard:
        raise SizeGuardError(f"check_duality limited to n <= {size_guard}")
    if m < k:
        raise ValueError("m must be at least k")
    fa = frozenset(a)
    subset = max_k_connected_subset(g, fa, k)
    set_cert = subset.vertices if subset.vertices is not None and subset.size >= m else None
    if set_cert is not None and not is_k_connected(g, set_cert, k).ok:
        raise AssertionError("set certificate failed re-verification")

    value, td = _min_max_decomposition(g, k, lambda p: min_separator_size(g, fa, p))
    separability = tuple(min_separator_size(g, fa, p) for p in td.parts)
    td_cert = td if value < m else None
    if td_cert is not None and not verify_td_certificate(g, fa, k, m, td_cert):
        raise AssertionError("decomposition certificate failed re-verification")
    return DualityReport(
        k=k,
        m=m,
        max_kconn=subset.size,
        ktw=k_tree_width(g, k, size_guard),
        tw=tree_width(g, max(size_guard, 10)),
        set_certificate=set_cert,
        td_certificate=td_cert,
        separability=separability,
        best_td=td,
    )


# ---------------------------------------------------------------------------
# Quantitative bounds


@dataclass(frozen=True)
class SectionBoundsReport:
    k: int
    s_bigger: int  # largest (k+1)-connected set size (sentinel k if none)
    s_prime: int  # largest k-connected set size (sentinel k-1 if none)
    w: int  # k-tree-width (min-max part size convention)
    tw: int
    djgt_lower_ok: bool  # s >= 3k implies tw >= k
    djgt_upper_ok: bool  # s < 3k implies tw < 4k
    gj_lower_ok: bool | None  # w <= s' (when s' >= k)
    gj_upper_ok: bool | None  # s' <= C(w+1, k-1)(k-1) (when s' >= k and k >= 2)


def verify_sec1_bounds(g: Graph, k: int, size_guard: int = 8) -> SectionBoundsReport:
    """Evaluate the two classical connectivity/width bounds on one graph."""
    if g.n > size_guard:
        raise SizeGuardError(f"verify_sec1_bounds limited to n <= {size_guard}")
    s_big = max_k_connected_subset(g, g.vertex_set, k + 1).size
    s_prime = max_k_connected_subset(g, g.vertex_set, k).size
    w = k_tree_width(g, k, size_guard)
    tw = tree_width(g)
    djgt_lower = (s_big < 3 * k) or (tw >= k)
    djgt_upper = (s_big >= 3 * k) or (tw < 4 * k)
    gj_lower = gj_upper = None
    if s_prime >= k:
        gj_lower = w <= s_prime
        if k >= 2:
            gj_upper = s_prime <= math.comb(w + 1, k - 1) * (k - 1)
    return SectionBoundsReport(
        k=k,
        s_bigger=s_big,
        s_prime=s_prime,
        w=w,
        tw=tw,
        djgt_lower_ok=djgt_lower,
        djgt_upper_ok=djgt_upper,
        gj_lower_ok=gj_lower,
        gj_upper_ok=gj_upper,
    )


@dataclass(frozen=True)
class TransferReport:
    paths_to_target: int
    max_kconn: MaxKConnResult


def inseparable_transfer(g: Graph, a, b, k: int) -> TransferReport:
    """Observed connectivity transfer from a k-connected set ``b`` to ``a``.

    Exploratory: reports the number of disjoint a-b paths and the largest
    k-connected subset of ``a``; no bound is asserted.
    """
    fa, fb = frozenset(a), frozenset(b)
    if not is_k_connected(g, fb, k).ok:
        raise ValueError("b is not k-connected in g")
    res = menger(g, fa, fb)
    return TransferReport(res.count, max_k_connected_subset(g, fa, k))
