"""The thermomajorization polytope M_d(y): vertices, facets, membership.

The extreme points of M_d(y) are the image of the symmetric group under

    E(sigma)[sigma(j)] = th(sum_{i<=j} d_{sigma(i)}) - th(sum_{i<j} d_{sigma(i)})

i.e. the increments of the curve over the interval tiling induced by sigma.
The half-space description is one inequality per non-trivial binary mask m:

    m^T x <= th_{d,y}(m^T d),        together with 1^T x = 1^T y.

Both descriptions are exact and are cross-checked in the test suite.
Enumeration is n! and 2^n respectively; the default size cap is 8
(override with THERMO_MAX_N).
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .curve import ThermoCurve, build_curve, check_gibbs_vector, eval_curve
from .errors import DimensionError, DomainError, ResourceLimitError
from .exact import Perm, Vec, ZERO, all_perms, enumeration_limit, total, vec
from .order import gibbs_point

DEFAULT_LIMIT = 8


@dataclass(frozen=True)
class VertexSet:
    """Distinct extreme points with the permutation-to-vertex map.

    vertices are listed in order of first appearance while enumerating
    permutations lexicographically, so output is reproducible.
    """

    vertices: tuple[Vec, ...]
    preimages: dict[Perm, int]
    multiplicity: tuple[int, ...]


@dataclass(frozen=True)
class Facet:
    mask: tuple[int, ...]
    bound: Fraction


def _require_strict(d: Vec, y: Vec) -> tuple[Vec, Vec]:
    d, y = vec(d), vec(y)
    if len(d) != len(y):
        raise DimensionError(f"d has length {len(d)}, y has length {len(y)}")
    check_gibbs_vector(d, strict=True)
    return d, y


def _extreme_from_curve(curve: ThermoCurve, sigma: Perm) -> Vec:
    d = curve.d
    out = [ZERO] * len(d)
    run = ZERO
    prev = ZERO
    for j in range(1, len(d) + 1):
        run += d[sigma(j) - 1]
        here = eval_curve(curve, run)
        out[sigma(j) - 1] = here - prev
        prev = here
    return tuple(out)


def extreme_point(d: Vec, y: Vec, sigma: Perm) -> Vec:
    """The extreme point of M_d(y) associated with sigma (requires d > 0)."""
    d, y = _require_strict(d, y)
    if sigma.n != len(d):
        raise DimensionError(f"permutation of size {sigma.n} with vectors of length {len(d)}")
    return _extreme_from_curve(build_curve(d, y), sigma)


def enumerate_vertices(d: Vec, y: Vec, limit: int | None = None) -> VertexSet:
    """Evaluate the extreme-point map on all of S_n and deduplicate exactly."""
    d, y = _require_strict(d, y)
    n = len(d)
    cap = enumeration_limit(DEFAULT_LIMIT) if limit is None else limit
    if n > cap:
        raise ResourceLimitError(f"n={n} exceeds enumeration limit {cap}")
    curve = build_curve(d, y)
    vertices: list[Vec] = []
    index: dict[Vec, int] = {}
    preimages: dict[Perm, int] = {}
    counts: list[int] = []
    for sigma in all_perms(n):
        v = _extreme_from_curve(curve, sigma)
        k = index.get(v)
        if k is None:
            k = len(vertices)
            index[v] = k
            vertices.append(v)
            counts.append(0)
        preimages[sigma] = k
        counts[k] += 1
    return VertexSet(tuple(vertices), preimages, tuple(counts))


def facet_description(d: Vec, y: Vec, irredundant: bool = False, limit: int | None = None) -> list[Facet]:
    """One half-space per mask m in {0,1}^n minus {0, 1}: m^T x <= th(m^T d).

    With irredundant=True, inequalities not tight at any enumerated vertex
    are dropped.
    """
    d, y = _require_strict(d, y)
    n = len(d)
    cap = enumeration_limit(DEFAULT_LIMIT) if limit is None else limit
    if n > cap:
        raise ResourceLimitError(f"n={n} exceeds enumeration limit {cap}")
    curve = build_curve(d, y)
    facets = []
    for mask in product((0, 1), repeat=n):
        if not any(mask) or all(mask):
            continue
        md = sum((di for di, b in zip(d, mask) if b), ZERO)
        facets.append(Facet(mask, eval_curve(curve, md)))
    if irredundant:
        vs = enumerate_vertices(d, y, limit=limit).vertices
        facets = [
            f
            for f in facets
            if any(sum((vi for vi, b in zip(v, f.mask) if b), ZERO) == f.bound for v in vs)
        ]
    return facets


def member(d: Vec, y: Vec, x: Vec, limit: int | None = None) -> bool:
    """Half-space membership test; agrees with thermomajorizes(d, y, x)."""
    d, y = _require_strict(d, y)
    x = vec(x)
    if len(x) != len(d):
        raise DimensionError(f"x has length {len(x)}, expected {len(d)}")
    if total(x) != total(y):
        return False
    n = len(d)
    cap = enumeration_limit(DEFAULT_LIMIT) if limit is None else limit
    if n > cap:
        raise ResourceLimitError(f"n={n} exceeds enumeration limit {cap}")
    curve = build_curve(d, y)
    for mask in product((0, 1), repeat=n):
        if not any(mask) or all(mask):
            continue
        md = sum((di for di, b in zip(d, mask) if b), ZERO)
        mx = sum((xi for xi, b in zip(x, mask) if b), ZERO)
        if mx > eval_curve(curve, md):
            return False
    return True


def polytope_dim(d: Vec, y: Vec) -> int:
    """0 if y is the Gibbs point (M_d(y) is a single state), else n - 1."""
    d, y = _require_strict(d, y)
    return 0 if y == gibbs_point(d, total(y)) else len(d) - 1


def classical_vertex_count(y: Vec) -> int:
    """Number of extreme points of the classical majorization polytope, n!/prod(p_i!)."""
    y = vec(y)
    counts = Counter(y)
    result = math.factorial(len(y))
    for p in counts.values():
        result //= math.factorial(p)
    return result


def affine_dim(points: list[Vec]) -> int:
    """Dimension of the affine hull of exact points (Gaussian elimination)."""
    if len(points) <= 1:
        return 0
    base = points[0]
    rows = [list(p) for p in (tuple(a - b for a, b in zip(p, base)) for p in points[1:])]
    rank = 0
    ncols = len(base)
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(rows)) if rows[r][col] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        prow = rows[rank]
        inv = 1 / prow[col]
        rows[rank] = [e * inv for e in prow]
        prow = rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r][col]:
                f = rows[r][col]
                rows[r] = [a - f * b for a, b in zip(rows[r], prow)]
        rank += 1
        if rank == len(rows):
            break
    return rank


def vertexset_to_json(vs: VertexSet) -> dict:
    return {
        "vertices": [[str(q) for q in v] for v in vs.vertices],
        "multiplicity": list(vs.multiplicity),
        "preimages": {str(p): k for p, k in vs.preimages.items()},
    }


def vertices_to_csv(vs: VertexSet) -> str:
    n = len(vs.vertices[0]) if vs.vertices else 0
    lines = [",".join(f"x{i + 1}" for i in range(n)) + ",multiplicity"]
    for v, m in zip(vs.vertices, vs.multiplicity):
        lines.append(",".join(str(q) for q in v) + f",{m}")
    return "\n".join(lines) + "\n"


def barycentric_csv(vs: VertexSet) -> str:
    """2-D plot coordinates for n = 3 vertices (floats; plotting data only)."""
    if not vs.vertices or len(vs.vertices[0]) != 3:
        raise DomainError("barycentric projection is defined for n = 3 only")
    s = total(vs.vertices[0])
    if s == 0:
        raise DomainError("barycentric projection needs a nonzero trace")
    lines = ["u,v"]
    for p in vs.vertices:
        w = [float(q / s) for q in p]
        u = w[1] + w[2] / 2
        v = w[2] * math.sqrt(3) / 2
        lines.append(f"{u!r},{v!r}")
    return "\n".join(lines) + "\n"
