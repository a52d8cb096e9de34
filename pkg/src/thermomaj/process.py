"""Beta-permutation matrices: extreme Gibbs-stochastic processes.

For d > 0 and permutations sigma, tau, tile the interval [0, sum(d)] twice:
once with segments d_{sigma(1)}, d_{sigma(2)}, ... and once with
d_{tau(1)}, d_{tau(2)}, ....  The beta-permutation A is read off from the
overlaps of the two tilings:

    A[i][j] = (length of overlap of segment d_i in the sigma tiling
               with segment d_j in the tau tiling) / d_j.

A is Gibbs-stochastic and an extreme point of the polytope s_d(n) of all
Gibbs-stochastic matrices, with at most 2n - 1 nonzero entries forming a
staircase after sorting rows by sigma and columns by tau.  If tau sorts
y/d non-increasingly, A maps y onto the extreme point of M_d(y) associated
with sigma.

`beta_five_case` is an independent reference implementation driven by the
crossing indices alpha_j (the tau-segment containing the j-th sigma
boundary); the two constructions are compared in the test suite.
"""

from __future__ import annotations

from bisect import bisect_left
from fractions import Fraction

from .curve import check_gibbs_vector
from .errors import DimensionError, DomainError
from .exact import Mat, ONE, Perm, Vec, ZERO, mat_vec, vec
from .polytope import extreme_point


def _cumulative(d: Vec, p: Perm) -> list[Fraction]:
    out = [ZERO]
    for j in range(1, p.n + 1):
        out.append(out[-1] + d[p(j) - 1])
    return out


def _check_pair(d: Vec, sigma: Perm, tau: Perm) -> Vec:
    d = vec(d)
    check_gibbs_vector(d, strict=True)
    if sigma.n != len(d) or tau.n != len(d):
        raise DimensionError(
            f"permutations of sizes {sigma.n}, {tau.n} with d of length {len(d)}"
        )
    return d


def beta_profile(d: Vec, sigma: Perm, tau: Perm) -> tuple[int, ...]:
    """Crossing indices alpha_0..alpha_n: alpha_j is the unique index with
    cum_sigma(j) in (cum_tau(alpha_j - 1), cum_tau(alpha_j)]; alpha_0 = 1 and
    alpha_n = n."""
    d = _check_pair(d, sigma, tau)
    n = len(d)
    cums = _cumulative(d, sigma)
    cumt = _cumulative(d, tau)
    alphas = [1]
    for j in range(1, n):
        alphas.append(bisect_left(cumt, cums[j]))
    alphas.append(n)
    return tuple(alphas)


def beta_permutation_sparse(d: Vec, sigma: Perm, tau: Perm) -> list[tuple[int, int, Fraction]]:
    """Nonzero entries (row, col, value) of the beta-permutation, 1-based.

    A two-pointer sweep over the merged tiling boundaries; at most 2n - 1
    triplets come out.
    """
    d = _check_pair(d, sigma, tau)
    n = len(d)
    cums = _cumulative(d, sigma)
    cumt = _cumulative(d, tau)
    triplets: list[tuple[int, int, Fraction]] = []
    p = q = 1
    prev = ZERO
    while p <= n and q <= n:
        upper = min(cums[p], cumt[q])
        if upper > prev:
            col = tau(q)
            triplets.append((sigma(p), col, (upper - prev) / d[col - 1]))
        prev = upper
        if cums[p] == upper:
            p += 1
        if cumt[q] == upper:
            q += 1
    return triplets


def beta_permutation(d: Vec, sigma: Perm, tau: Perm) -> Mat:
    """The beta-permutation matrix, densified from its overlap triplets."""
    n = sigma.n
    rows = [[ZERO] * n for _ in range(n)]
    for i, j, value in beta_permutation_sparse(d, sigma, tau):
        rows[i - 1][j - 1] = value
    return tuple(tuple(row) for row in rows)


def beta_five_case(d: Vec, sigma: Perm, tau: Perm) -> Mat:
    """Reference construction via the five-case formula on the alpha profile."""
    d = _check_pair(d, sigma, tau)
    n = len(d)
    cums = _cumulative(d, sigma)
    cumt = _cumulative(d, tau)
    alphas = beta_profile(d, sigma, tau)
    rows = [[ZERO] * n for _ in range(n)]
    for j in range(1, n + 1):
        lo, hi = alphas[j - 1], alphas[j]
        for k in range(1, n + 1):
            if k == lo < hi:
                value = (cumt[lo] - cums[j - 1]) / d[tau(lo) - 1]
            elif lo < k < hi:
                value = ONE
            elif lo < hi == k:
                value = (cums[j] - cumt[hi - 1]) / d[tau(hi) - 1]
            elif lo == hi == k:
                value = d[sigma(j) - 1] / d[tau(k) - 1]
            else:
                continue
            rows[sigma(j) - 1][tau(k) - 1] = value
    return tuple(tuple(row) for row in rows)


def verify_gibbs_stochastic(d: Vec, a: Mat) -> bool:
    """Exact check: entries >= 0, columns sum to 1, and A d = d."""
    d = vec(d)
    n = len(d)
    if len(a) != n or any(len(row) != n for row in a):
        raise DimensionError(f"matrix shape does not match d of length {n}")
    if any(e < 0 for row in a for e in row):
        return False
    for j in range(n):
        if sum((a[i][j] for i in range(n)), ZERO) != 1:
            return False
    return mat_vec(a, d) == d


def support_edges(a: Mat) -> frozenset[tuple[int, int]]:
    """The (row, col) pairs (1-based) of the nonzero entries of a matrix,
    read as edges of a bipartite graph on rows versus columns."""
    return frozenset(
        (i + 1, j + 1) for i, row in enumerate(a) for j, e in enumerate(row) if e != 0
    )


def is_extreme_of_sdn(d: Vec, a: Mat) -> bool:
    """True iff the bipartite support graph of A (equivalently of
    A diag(d), d > 0) is acyclic; this characterizes the extreme points of
    the Gibbs-stochastic polytope via the transportation correspondence."""
    d = vec(d)
    check_gibbs_vector(d, strict=True)
    if not verify_gibbs_stochastic(d, a):
        raise DomainError("matrix is not Gibbs-stochastic for this d")
    n = len(d)
    parent = list(range(2 * n))

    def find(v: int) -> int:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for i, j in support_edges(a):
        ri, rj = find(i - 1), find(n + j - 1)
        if ri == rj:
            return False
        parent[ri] = rj
    return True


def transfer_to_extreme(d: Vec, y: Vec, sigma: Perm) -> tuple[Mat, bool]:
    """A beta-permutation mapping y to the extreme point for sigma.

    tau is the non-increasing sort of y/d with ties broken by ascending
    index.  The uniqueness flag is True iff y/d has n distinct values, in
    which case the returned matrix is the only Gibbs-stochastic matrix
    performing the transfer.
    """
    d, y = vec(d), vec(y)
    check_gibbs_vector(d, strict=True)
    if len(y) != len(d) or sigma.n != len(d):
        raise DimensionError("lengths of d, y and sigma differ")
    ratios = [Fraction(yi, di) for yi, di in zip(y, d)]
    order = sorted(range(len(d)), key=lambda i: (-ratios[i], i))
    tau = Perm(tuple(i + 1 for i in order))
    a = beta_permutation(d, sigma, tau)
    unique = len(set(ratios)) == len(d)
    if mat_vec(a, y) != extreme_point(d, y, sigma):
        raise RuntimeError("internal: beta-permutation does not hit the extreme point")
    return a, unique


def permuted_form(a: Mat, sigma: Perm, tau: Perm) -> Mat:
    """The conjugation with entry (j, k) equal to A[sigma(j)][tau(k)]
    (rows sorted by sigma, columns by tau); for a beta-permutation its
    support is a monotone staircase from (1,1) to (n,n)."""
    n = sigma.n
    if len(a) != n or tau.n != n:
        raise DimensionError("matrix and permutations have different sizes")
    return tuple(
        tuple(a[sigma(j) - 1][tau(k) - 1] for k in range(1, n + 1)) for j in range(1, n + 1)
    )
