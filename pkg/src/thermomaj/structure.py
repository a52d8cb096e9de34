"""Structural predicates on Gibbs vectors and degeneracy diagnosis.

A strictly positive d is *well-structured* when any k - 1 of its entries
sum to strictly less than any k of its entries, and *stable* when all 2^n
subset sums are distinct.  Stability is exactly the condition under which
d-majorization is a partial order: an equal pair of subset sums yields two
distinct states that majorize each other (`cycle_witness` constructs them),
while for stable d no such cycle exists.

Well-structuredness reduces to a sorted check (the k - 1 largest against
the k smallest, for every k); the reduction is compared against the brute
force over all subset pairs in the test suite.

Degeneracy of the extreme-point map is decided by slope cells: for a
permutation sigma, cell k collects the indices whose tile in the sigma
tiling meets the k-th affine-linear region of the curve; two permutations
share an extreme point iff their cells coincide.  Vertex-count degeneracy
(fewer than n! extreme points) requires a repeated y/d ratio or a d that
is not well-structured; `degeneracy_report` checks that implication on
every call.

The temperature utilities are the one place floats appear: Gibbs weights
e^{-E_i/T} are irrational, so predicates at a physical temperature are
evaluated on exactly rationalized float weights with a margin check;
verdicts within 1e-9 of a boundary are reported as indeterminate (None)
rather than guessed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .curve import build_curve
from .errors import DimensionError, DomainError, ResourceLimitError
from .exact import Perm, Vec, ZERO, enumeration_limit, vec
from .order import thermomajorizes
from .polytope import enumerate_vertices

SORTED_CHECK_LIMIT = 20
SUBSET_CHECK_LIMIT = 16
BOUNDARY_MARGIN = 1e-9

Witness = tuple[tuple[int, ...], tuple[int, ...]]


@dataclass(frozen=True)
class StructureReport:
    well_structured: bool
    stable: bool
    ws_witness: Witness | None  # (I, J) with |I| < |J| and sum_I d >= sum_J d
    stability_witness: Witness | None  # (I, J) distinct with equal subset sums


def _check_positive(d: Vec) -> Vec:
    d = vec(d)
    if any(q <= 0 for q in d):
        raise DomainError(f"requires strictly positive d, got {d}")
    return d


def is_well_structured(d: Vec) -> bool:
    return structure_report(d, check_stability=False).well_structured


def is_stable(d: Vec) -> bool:
    return structure_report(d).stable


def _ws_sorted_check(d: Vec) -> Witness | None:
    # Worst pair for each k: the k-1 largest entries against the k smallest.
    n = len(d)
    descending = sorted(range(n), key=lambda i: (-d[i], i))
    ascending = sorted(range(n), key=lambda i: (d[i], i))
    for k in range(2, n + 1):
        largest = descending[: k - 1]
        smallest = ascending[:k]
        if sum(d[i] for i in largest) >= sum(d[i] for i in smallest):
            return (
                tuple(sorted(i + 1 for i in largest)),
                tuple(sorted(i + 1 for i in smallest)),
            )
    return None


def _ws_bruteforce_witness(d: Vec) -> Witness | None:
    """Definitional check over all subset pairs (test oracle; exponential)."""
    n = len(d)
    by_size: list[list[tuple[Fraction, tuple[int, ...]]]] = [[] for _ in range(n + 1)]
    for size in range(n + 1):
        for subset in combinations(range(n), size):
            by_size[size].append((sum((d[i] for i in subset), ZERO), subset))
    for small in range(n):
        for big in range(small + 1, n + 1):
            for s_sum, s_set in by_size[small]:
                for b_sum, b_set in by_size[big]:
                    if s_sum >= b_sum:
                        return (
                            tuple(i + 1 for i in s_set),
                            tuple(i + 1 for i in b_set),
                        )
    return None


def _stability_witness(d: Vec) -> Witness | None:
    """First subset-sum collision in increasing bitmask order, or None."""
    n = len(d)
    seen: dict[Fraction, int] = {}
    for mask in range(1 << n):
        s = ZERO
        for i in range(n):
            if mask >> i & 1:
                s += d[i]
        other = seen.get(s)
        if other is not None:
            return (
                tuple(i + 1 for i in range(n) if other >> i & 1),
                tuple(i + 1 for i in range(n) if mask >> i & 1),
            )
        seen[s] = mask
    return None


def structure_report(d: Vec, check_stability: bool = True) -> StructureReport:
    """Well-structuredness and stability of d, with witnesses when violated."""
    d = _check_positive(d)
    n = len(d)
    if n > enumeration_limit(SORTED_CHECK_LIMIT):
        raise ResourceLimitError(f"n={n} exceeds the well-structuredness limit")
    ws_witness = _ws_sorted_check(d)
    stab_witness: Witness | None = None
    stable = True
    if check_stability:
        if n > enumeration_limit(SUBSET_CHECK_LIMIT):
            raise ResourceLimitError(f"n={n} exceeds the subset-sum limit")
        stab_witness = _stability_witness(d)
        stable = stab_witness is None
    return StructureReport(
        well_structured=ws_witness is None,
        stable=stable,
        ws_witness=ws_witness,
        stability_witness=stab_witness,
    )


def cycle_witness(d: Vec) -> tuple[Vec, Vec] | None:
    """For unstable d, two distinct states that majorize each other.

    From a subset-sum collision sum_I d = sum_J d the states
    x = sum_{i in I} d_i e_i and y = sum_{j in J} d_j e_j satisfy
    ||x - t d||_1 = ||y - t d||_1 for every t, hence mutual majorization.
    Returns None for stable d.
    """
    d = _check_positive(d)
    report = structure_report(d)
    if report.stability_witness is None:
        return None
    wi, wj = report.stability_witness
    n = len(d)
    x = tuple(d[i] if i + 1 in wi else ZERO for i in range(n))
    y = tuple(d[i] if i + 1 in wj else ZERO for i in range(n))
    if x == y or not (thermomajorizes(d, x, y) and thermomajorizes(d, y, x)):
        raise RuntimeError("internal: cycle witness failed verification")
    return x, y


def slope_cells(d: Vec, y: Vec, sigma: Perm) -> tuple[frozenset[int], ...]:
    """Cell k holds the indices whose sigma-tile meets the k-th linear region.

    Regions are delimited by the genuine slope changes of the curve; the
    union of the cells is {1..n} and adjacent cells overlap exactly when a
    tile straddles a breakpoint.
    """
    d, y = vec(d), vec(y)
    if len(d) != len(y) or sigma.n != len(d):
        raise DimensionError("lengths of d, y and sigma differ")
    _check_positive(d)
    curve = build_curve(d, y)
    deltas = (ZERO,) + curve.breakpoints + (curve.total,)
    n = len(d)
    bounds = [ZERO]
    for j in range(1, n + 1):
        bounds.append(bounds[-1] + d[sigma(j) - 1])
    cells = []
    for k in range(1, len(deltas)):
        lo, hi = deltas[k - 1], deltas[k]
        cells.append(
            frozenset(
                sigma(j) for j in range(1, n + 1) if bounds[j - 1] < hi and lo < bounds[j]
            )
        )
    return tuple(cells)


def same_extreme(d: Vec, y: Vec, sigma: Perm, tau: Perm) -> bool:
    """True iff sigma and tau map to the same extreme point of M_d(y),
    decided through slope-cell equality."""
    return slope_cells(d, y, sigma) == slope_cells(d, y, tau)


def sorting_preimage_count(d: Vec, y: Vec) -> int:
    """Number of permutations sorting y/d non-increasingly: the product of
    the factorials of the multiplicities of the distinct ratio values."""
    d, y = vec(d), vec(y)
    _check_positive(d)
    if len(d) != len(y):
        raise DimensionError(f"d has length {len(d)}, y has length {len(y)}")
    counts: dict[Fraction, int] = {}
    for yi, di in zip(y, d):
        r = Fraction(yi, di)
        counts[r] = counts.get(r, 0) + 1
    out = 1
    for p in counts.values():
        out *= math.factorial(p)
    return out


@dataclass(frozen=True)
class DegeneracyReport:
    vertex_count: int
    multiplicities: tuple[int, ...]
    y_preimage_count: int
    ratio_degenerate: bool
    well_structured: bool
    consistent_with_corollary: bool


def degeneracy_report(d: Vec, y: Vec, limit: int | None = None) -> DegeneracyReport:
    """Vertex counts, ratio degeneracy and well-structuredness in one view.

    consistent_with_corollary records the necessary conditions for
    degeneracy: fewer than n! vertices only occurs alongside a repeated
    y/d ratio or a d that is not well-structured, so the flag is True on
    every input.
    """
    d, y = vec(d), vec(y)
    _check_positive(d)
    vs = enumerate_vertices(d, y, limit=limit)
    ratios = [Fraction(yi, di) for yi, di in zip(y, d)]
    vertex_count = len(vs.vertices)
    ratio_degenerate = len(set(ratios)) < len(ratios)
    well_structured = is_well_structured(d)
    return DegeneracyReport(
        vertex_count=vertex_count,
        multiplicities=vs.multiplicity,
        y_preimage_count=sorting_preimage_count(d, y),
        ratio_degenerate=ratio_degenerate,
        well_structured=well_structured,
        consistent_with_corollary=(
            vertex_count == math.factorial(len(d)) or ratio_degenerate or not well_structured
        ),
    )


# --------------------------------------------------------------------------
# Temperature pathway (floats; the only inexact corner of the package).


def _check_energies(energies: list[float]) -> list[float]:
    energies = [float(e) for e in energies]
    if any(b < a for a, b in zip(energies, energies[1:])):
        raise DomainError("energies must be sorted ascending")
    return energies


def gibbs_weights(energies: list[float], temperature: float) -> list[float]:
    """Unnormalized weights e^{-(E_i - E_1)/T} (shifted for stability)."""
    if temperature <= 0:
        raise DomainError("temperature must be positive")
    e0 = energies[0]
    return [math.exp(-(e - e0) / temperature) for e in energies]


def well_structured_margin(energies: list[float], temperature: float) -> float:
    """min_k (sum of k smallest weights - sum of k-1 largest) / sum of weights.

    Positive exactly when the Gibbs vector at this temperature is
    well-structured; zero on the boundary.
    """
    energies = _check_energies(energies)
    w = sorted(gibbs_weights(energies, temperature))
    n = len(w)
    scale = sum(w)
    margin = min(sum(w[:k]) - sum(w[n - k + 1 :]) for k in range(2, n + 1))
    return margin / scale


def stability_margin(energies: list[float], temperature: float) -> float:
    """Smallest gap between distinct subset sums, relative to the total."""
    energies = _check_energies(energies)
    n = len(energies)
    if n > enumeration_limit(SUBSET_CHECK_LIMIT):
        raise ResourceLimitError(f"n={n} exceeds the subset-sum limit")
    w = gibbs_weights(energies, temperature)
    sums = sorted(
        sum(w[i] for i in range(n) if mask >> i & 1) for mask in range(1 << n)
    )
    gap = min(b - a for a, b in zip(sums, sums[1:]))
    return gap / sum(w)


def critical_temperature(energies: list[float], rel_tol: float = 1e-12) -> float | None:
    """The temperature at which the Gibbs vector stops being well-structured.

    Located by bisection on the well-structuredness margin, bracketing on a
    geometric grid; the weights are well-structured above the returned value
    and not below it.  Returns None when no transition exists (fewer than
    three levels, or a fully degenerate spectrum).
    """
    energies = _check_energies(energies)
    n = len(energies)
    if n <= 2 or energies[-1] == energies[0]:
        return None
    span = energies[-1] - energies[0]
    grid = [span * 2.0**k for k in range(-64, 65)]
    lo = None
    hi = None
    for t in grid:
        if well_structured_margin(energies, t) > 0:
            hi = t
            break
        lo = t
    if hi is None or lo is None:
        return None
    while hi - lo > rel_tol * hi:
        mid = (lo + hi) / 2
        if well_structured_margin(energies, mid) > 0:
            hi = mid
        else:
            lo = mid
    return (lo + hi) / 2


def transition_scan(energies: list[float]) -> int:
    """Number of sign changes of the margin on the bracketing grid.

    The margin is expected to change sign exactly once; a larger count
    flags a non-monotone instance for reporting rather than asserting.
    """
    energies = _check_energies(energies)
    span = energies[-1] - energies[0]
    if span == 0:
        return 0
    signs = [
        well_structured_margin(energies, span * 2.0**k) > 0 for k in range(-64, 65)
    ]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


@dataclass(frozen=True)
class TemperatureStructure:
    well_structured: bool | None  # None: within BOUNDARY_MARGIN of a boundary
    stable: bool | None
    ws_margin: float
    stability_margin: float


def structure_at_temperature(energies: list[float], temperature: float) -> TemperatureStructure:
    """Structural predicates for the Gibbs vector at a physical temperature.

    Verdicts are computed on exactly rationalized float weights; when the
    margin is within BOUNDARY_MARGIN of zero the verdict is None
    (boundary-indeterminate) instead of a guess.
    """
    energies = _check_energies(energies)
    ws_m = well_structured_margin(energies, temperature)
    st_m = stability_margin(energies, temperature)
    d = vec([Fraction(w) for w in gibbs_weights(energies, temperature)])
    report = structure_report(d)
    return TemperatureStructure(
        well_structured=None if abs(ws_m) < BOUNDARY_MARGIN else report.well_structured,
        stable=None if st_m < BOUNDARY_MARGIN else report.stable,
        ws_margin=ws_m,
        stability_margin=st_m,
    )


def virtual_temperatures(
    energies: list[float],
    y: Vec,
    ambient: float | None = None,
) -> tuple[tuple[tuple[float | None, ...], ...], list[tuple[int, int]]]:
    """Pairwise transition temperatures T_ij = (E_j - E_i)/(ln y_i - ln y_j).

    Entries with y_i = y_j are undefined (None); equal energies with
    distinct populations give 0.  When an ambient temperature is supplied,
    the second return value lists the pairs (i, j), i < j, whose virtual
    temperature matches it to within BOUNDARY_MARGIN (relative), i.e. the
    pairs making y/d degenerate at that temperature.
    """
    y = vec(y)
    energies = [float(e) for e in energies]
    if len(energies) != len(y):
        raise DimensionError(f"{len(energies)} energies with y of length {len(y)}")
    if any(q <= 0 for q in y):
        raise DomainError("virtual temperatures require y > 0 entrywise")
    n = len(y)
    rows: list[tuple[float | None, ...]] = []
    for i in range(n):
        row: list[float | None] = []
        for j in range(n):
            if i == j or y[i] == y[j]:
                row.append(None)
            else:
                row.append((energies[j] - energies[i]) / (math.log(y[i]) - math.log(y[j])))
        rows.append(tuple(row))
    matrix = tuple(rows)
    degenerate: list[tuple[int, int]] = []
    if ambient is not None:
        tol = BOUNDARY_MARGIN * max(1.0, abs(ambient))
        for i in range(n):
            for j in range(i + 1, n):
                t = matrix[i][j]
                if t is not None and abs(t - ambient) <= tol:
                    degenerate.append((i + 1, j + 1))
    return matrix, degenerate


def subchamber_classify(d: Vec) -> tuple[str, str, str, str, str]:
    """Signs of the five cutting hyperplanes for a sorted 4-level Gibbs vector.

    For d1 >= d2 >= d3 >= d4 > 0 the values are
        d1 - (d3 + d4),  d1 - (d2 + d4),  d1 - (d2 + d3),
        d1 - (d2 + d3 + d4),  d2 - (d3 + d4)
    reported as '-', '0' or '+'.  All five '-' is the well-structured
    subchamber (the first sign alone decides this inside the sorted
    chamber).
    """
    d = _check_positive(d)
    if len(d) != 4:
        raise DomainError(f"subchamber classification is for n = 4, got n = {len(d)}")
    if any(b > a for a, b in zip(d, d[1:])):
        raise DomainError("d must be sorted non-increasingly")
    d1, d2, d3, d4 = d
    values = (
        d1 - (d3 + d4),
        d1 - (d2 + d4),
        d1 - (d2 + d3),
        d1 - (d2 + d3 + d4),
        d2 - (d3 + d4),
    )
    return tuple("-" if v < 0 else "0" if v == 0 else "+" for v in values)  # type: ignore[return-value]
