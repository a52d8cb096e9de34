"""Extreme points of the Gibbs-stochastic polytope s_d(n).

A matrix A is Gibbs-stochastic when A >= 0, its columns sum to 1 and
A d = d.  The map X = A diag(d) identifies s_d(n) with the symmetric
transportation polytope of nonnegative matrices with row and column sums
both equal to d, whose vertices are exactly the matrices with acyclic
(forest) support.  Every vertex therefore appears as the unique solution
of the marginal equations on some spanning tree of the complete bipartite
graph K_{n,n} (with zeros off the tree), so enumerating spanning trees,
solving each by peeling leaves, keeping the nonnegative solutions and
deduplicating yields the full vertex set.  Degenerate d collapses several
trees onto one matrix; deduplication absorbs that.

d is rescaled to a primitive integer vector first (A is invariant under
scaling d), which makes the whole enumeration exact integer arithmetic;
division by d only happens when mapping a solution X back to A.

Spanning trees of K_{5,5} number 390625, so n = 5 is the practical limit.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .curve import check_gibbs_vector
from .errors import ResourceLimitError
from .exact import Mat, Vec, all_perms, enumeration_limit, vec
from .process import beta_permutation_sparse

DEFAULT_LIMIT = 5


def _primitive_integer_weights(d: Vec) -> list[int]:
    denom_lcm = 1
    for q in d:
        denom_lcm = denom_lcm * q.denominator // gcd(denom_lcm, q.denominator)
    ints = [int(q * denom_lcm) for q in d]
    g = 0
    for v in ints:
        g = gcd(g, v)
    return [v // g for v in ints]


def _spanning_trees(n: int):
    """Yield the spanning trees of K_{n,n} as tuples of edge indices.

    Edges are indexed row-major: edge r*n + c joins row r to column c.
    Depth-first over include/exclude decisions in index order; a branch is
    pruned as soon as some connected component can no longer reach a vertex
    with unused incident edges, so every visited node leads to at least one
    tree.
    """
    nverts = 2 * n
    parent = list(range(nverts))
    size = [1] * nverts

    def find(v: int) -> int:
        while parent[v] != v:
            v = parent[v]
        return v

    chosen: list[int] = []
    out: list[tuple[int, ...]] = []

    def supported(v: int, idx: int) -> bool:
        # Does v's component contain any vertex incident to an edge >= idx?
        # Rows r >= idx // n keep edges; columns keep edges while a full row
        # remains, afterwards only columns >= idx % n (reachable via the
        # last row).
        root = find(v)
        i0, j0 = divmod(idx, n)
        for u in range(nverts):
            if find(u) != root:
                continue
            if u < n:
                if u >= i0:
                    return True
            elif i0 < n - 1 or u - n >= j0:
                return True
        return False

    def rec(idx: int, comps: int) -> None:
        if comps == 1:
            out.append(tuple(chosen))
            return
        if idx == n * n or comps - 1 > n * n - idx:
            return
        r, c = divmod(idx, n)
        a, b = find(r), find(n + c)
        if a != b:
            if size[a] < size[b]:
                a, b = b, a
            parent[b] = a
            size[a] += size[b]
            chosen.append(idx)
            rec(idx + 1, comps - 1)
            chosen.pop()
            size[a] -= size[b]
            parent[b] = b
        # Exclude the edge; if it was the last edge of its row (or, in the
        # last row, of its column) the orphaned vertex's component must
        # still reach the remaining support.
        if c == n - 1 and not supported(r, idx + 1):
            return
        if r == n - 1 and not supported(n + c, idx + 1):
            return
        rec(idx + 1, comps)

    rec(0, nverts)
    return out


def _solve_tree(edges: tuple[int, ...], n: int, weights: list[int]) -> list[int] | None:
    """Peel leaves to solve the marginal equations on a tree support.

    Returns the edge values aligned with `edges`, or None as soon as a
    value goes negative.
    """
    marg = weights + weights
    adj: list[list[int]] = [[] for _ in range(2 * n)]
    for k, e in enumerate(edges):
        r, c = divmod(e, n)
        adj[r].append(k)
        adj[n + c].append(k)
    deg = [len(a) for a in adj]
    endpoint = [(e // n, n + e % n) for e in edges]
    values = [0] * len(edges)
    done = [False] * len(edges)
    stack = [v for v in range(2 * n) if deg[v] == 1]
    while stack:
        v = stack.pop()
        if deg[v] != 1:
            continue
        k = next(k for k in adj[v] if not done[k])
        val = marg[v]
        if val < 0:
            return None
        values[k] = val
        done[k] = True
        a, b = endpoint[k]
        u = b if a == v else a
        marg[u] -= val
        marg[v] = 0
        deg[v] -= 1
        deg[u] -= 1
        if deg[u] == 1:
            stack.append(u)
    return values


def _integer_vertices(weights: list[int], n: int) -> list[tuple[int, ...]]:
    """Distinct vertex matrices X of the transportation polytope T(d, d),
    flattened row-major, sorted lexicographically."""
    seen: set[tuple[int, ...]] = set()
    for tree in _spanning_trees(n):
        values = _solve_tree(tree, n, weights)
        if values is None:
            continue
        flat = [0] * (n * n)
        for e, v in zip(tree, values):
            flat[e] = v
        seen.add(tuple(flat))
    return sorted(seen)


def _check_size(d: Vec, limit: int | None) -> Vec:
    d = vec(d)
    check_gibbs_vector(d, strict=True)
    cap = enumeration_limit(DEFAULT_LIMIT) if limit is None else limit
    if len(d) > cap:
        raise ResourceLimitError(f"n={len(d)} exceeds the s_d(n) enumeration limit {cap}")
    return d


def enumerate_sdn_vertices(d: Vec, limit: int | None = None) -> tuple[Mat, ...]:
    """All extreme points of s_d(n), sorted lexicographically."""
    d = _check_size(d, limit)
    n = len(d)
    weights = _primitive_integer_weights(d)
    out = []
    for flat in _integer_vertices(weights, n):
        out.append(
            tuple(
                tuple(Fraction(flat[i * n + j], weights[j]) for j in range(n))
                for i in range(n)
            )
        )
    return tuple(out)


def sdn_vertex_count(d: Vec, limit: int | None = None) -> int:
    d = _check_size(d, limit)
    weights = _primitive_integer_weights(d)
    return len(_integer_vertices(weights, len(d)))


def _beta_flats(weights: list[int], n: int) -> set[tuple[int, ...]]:
    # X = A diag(d) of a beta-permutation is the integer overlap matrix.
    d = vec(weights)
    flats: set[tuple[int, ...]] = set()
    for sigma in all_perms(n):
        for tau in all_perms(n):
            flat = [0] * (n * n)
            for i, j, value in beta_permutation_sparse(d, sigma, tau):
                flat[(i - 1) * n + (j - 1)] = int(value * weights[j - 1])
            flats.add(tuple(flat))
    return flats


def non_beta_vertices(d: Vec, limit: int | None = None) -> tuple[tuple[Mat, ...], list[int]]:
    """The vertex list together with the indices not of beta-permutation form."""
    d = _check_size(d, limit)
    n = len(d)
    weights = _primitive_integer_weights(d)
    flats = _integer_vertices(weights, n)
    betas = _beta_flats(weights, n)
    indices = [k for k, flat in enumerate(flats) if flat not in betas]
    vertices = tuple(
        tuple(
            tuple(Fraction(flat[i * n + j], weights[j]) for j in range(n)) for i in range(n)
        )
        for flat in flats
    )
    return vertices, indices


def count_non_beta(d: Vec, limit: int | None = None) -> int:
    """How many extreme points of s_d(n) are not beta-permutations."""
    return len(non_beta_vertices(d, limit)[1])
