"""Thermomajorization curves.

Given a vector of Gibbs weights d >= 0 (d != 0) and a state y, the curve
th_{d,y} is the concave piecewise-linear function through the elbow points

    ( sum_{i<=j} d_{tau(i)},  sum_{i<=j} y_{tau(i)} )      j = 0..n

where tau sorts the ratios y_i/d_i non-increasingly.  It generalizes the
Lorenz curve of classical majorization and is equivalently given by the
min form

    th(c) = min over {i : d_i > 0} of
            sum_j max(y_j - (y_i/d_i) d_j, 0) + (y_i/d_i) c

which also covers zero entries of d: an index with d_i = 0 and y_i > 0
contributes a vertical jump at c = 0, one with d_i = 0 and y_i < 0 a jump
at the right end, and d_i = y_i = 0 contributes nothing.  At a jump the
curve takes the upper value, matching the min form.

Both formulas are implemented; with debugging enabled (set_debug or the
THERMO_DEBUG environment variable) every evaluation cross-checks the
interpolated value against the min form.
"""

from __future__ import annotations

import os
from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .errors import DimensionError, DomainError
from .exact import ZERO, Perm, Vec, one_norm, total, vec, vec_add, vec_scale

_DEBUG = os.environ.get("THERMO_DEBUG", "") not in ("", "0")


def set_debug(enabled: bool) -> None:
    """Toggle the eval-time cross-check of interpolation against the min form."""
    global _DEBUG
    _DEBUG = bool(enabled)


def check_gibbs_vector(d: Vec, strict: bool = False) -> None:
    """Validate d >= 0 and d != 0 (strict: d > 0 entrywise)."""
    if any(q < 0 for q in d):
        raise DomainError(f"Gibbs vector has a negative entry: {d}")
    if strict:
        if any(q == 0 for q in d):
            raise DomainError(f"operation requires strictly positive d, got {d}")
    elif all(q == 0 for q in d):
        raise DomainError("Gibbs vector must not be zero")


@dataclass(frozen=True)
class ThermoCurve:
    """A built thermomajorization curve.

    elbows      -- the n+1 cumulative points, in sorter order (bookkeeping;
                   collinear and zero-width repeats are retained)
    sorter      -- a permutation tau ordering y_i/d_i non-increasingly
                   (ties broken by ascending index)
    breakpoints -- abscissae in (0, total) where the slope genuinely changes
    """

    d: Vec
    y: Vec
    elbows: tuple[tuple[Fraction, Fraction], ...]
    sorter: Perm
    breakpoints: tuple[Fraction, ...]

    @property
    def total(self) -> Fraction:
        """Right end of the domain, sum(d)."""
        return self.elbows[-1][0]

    @property
    def trace(self) -> Fraction:
        """Ordinate of the final elbow, sum(y)."""
        return self.elbows[-1][1]

    @cached_property
    def _grid(self) -> tuple[tuple[Fraction, ...], tuple[Fraction, ...]]:
        return _upper_envelope(self.elbows)

    def value(self, c: Fraction) -> Fraction:
        return eval_curve(self, c)

    def maximum(self) -> Fraction:
        """Maximum of the curve, equal to sum_j max(y_j, 0)."""
        return max(self._grid[1])


def _upper_envelope(
    elbows: tuple[tuple[Fraction, Fraction], ...],
) -> tuple[tuple[Fraction, ...], tuple[Fraction, ...]]:
    # One point per distinct abscissa, taking the maximal ordinate
    # (vertical jumps occur only at the endpoints of the domain).
    xs: list[Fraction] = []
    vs: list[Fraction] = []
    for a, v in elbows:
        if xs and xs[-1] == a:
            if v > vs[-1]:
                vs[-1] = v
        else:
            xs.append(a)
            vs.append(v)
    return tuple(xs), tuple(vs)


def _sort_indices(d: Vec, y: Vec) -> list[int]:
    # Non-increasing y_i/d_i; zero-weight indices with positive y first,
    # with negative y last, with zero y neutral (sorted as ratio 0);
    # ties broken by ascending index.
    def key(i: int) -> tuple[int, Fraction, int]:
        if d[i] > 0:
            return (1, -Fraction(y[i], d[i]), i)
        if y[i] > 0:
            return (0, ZERO, i)
        if y[i] < 0:
            return (2, ZERO, i)
        return (1, ZERO, i)

    return sorted(range(len(d)), key=key)


def build_curve(d: Vec, y: Vec) -> ThermoCurve:
    """Construct th_{d,y} from its elbow points."""
    d = vec(d)
    y = vec(y)
    if len(d) != len(y):
        raise DimensionError(f"d has length {len(d)}, y has length {len(y)}")
    check_gibbs_vector(d)

    order = _sort_indices(d, y)
    elbows = [(ZERO, ZERO)]
    run_c, run_v = ZERO, ZERO
    for i in order:
        run_c += d[i]
        run_v += y[i]
        elbows.append((run_c, run_v))

    xs, vs = _upper_envelope(tuple(elbows))
    breaks = []
    for k in range(1, len(xs) - 1):
        left = (vs[k] - vs[k - 1]) / (xs[k] - xs[k - 1])
        right = (vs[k + 1] - vs[k]) / (xs[k + 1] - xs[k])
        if left != right:
            breaks.append(xs[k])

    return ThermoCurve(
        d=d,
        y=y,
        elbows=tuple(elbows),
        sorter=Perm(tuple(i + 1 for i in order)),
        breakpoints=tuple(breaks),
    )


def eval_curve(curve: ThermoCurve, c: Fraction) -> Fraction:
    """Value of the curve at c via linear interpolation between elbows."""
    c = Fraction(c)
    if c < 0 or c > curve.total:
        raise DomainError(f"abscissa {c} outside [0, {curve.total}]")
    xs, vs = curve._grid
    k = bisect_left(xs, c)
    if k < len(xs) and xs[k] == c:
        value = vs[k]
    else:
        a0, a1 = xs[k - 1], xs[k]
        v0, v1 = vs[k - 1], vs[k]
        value = v0 + (v1 - v0) * (c - a0) / (a1 - a0)
    if _DEBUG:
        alt = min_form_value(curve.d, curve.y, c)
        if alt != value:
            raise AssertionError(
                f"curve evaluation mismatch at c={c}: interpolation {value}, min form {alt}"
            )
    return value


def min_form_value(d: Vec, y: Vec, c: Fraction) -> Fraction:
    """Independent evaluation of th_{d,y}(c) through the min form."""
    d = vec(d)
    y = vec(y)
    if len(d) != len(y):
        raise DimensionError(f"d has length {len(d)}, y has length {len(y)}")
    check_gibbs_vector(d)
    c = Fraction(c)
    if c < 0 or c > total(d):
        raise DomainError(f"abscissa {c} outside [0, {total(d)}]")
    best = None
    for i in range(len(d)):
        if d[i] == 0:
            continue
        r = Fraction(y[i], d[i])
        cand = sum((max(y[j] - r * d[j], ZERO) for j in range(len(d))), ZERO) + r * c
        if best is None or cand < best:
            best = cand
    assert best is not None
    return best


def legendre_dual(curve: ThermoCurve, t: Fraction) -> Fraction:
    """2 * (-th_{d,y})^*(t) = 2 * sup_c (c*t + th(c)), exact over the elbows.

    Equals trace(y) + t*trace(d) + ||y + t*d||_1; with debugging enabled the
    two sides are compared on every call.
    """
    t = Fraction(t)
    xs, vs = curve._grid
    value = 2 * max(a * t + v for a, v in zip(xs, vs))
    if _DEBUG:
        alt = legendre_norm_form(curve.d, curve.y, t)
        if alt != value:
            raise AssertionError(
                f"Legendre mismatch at t={t}: elbow sup {value}, norm form {alt}"
            )
    return value


def legendre_norm_form(d: Vec, y: Vec, t: Fraction) -> Fraction:
    """The closed form trace(y) + t*trace(d) + ||y + t*d||_1."""
    t = Fraction(t)
    return total(y) + t * total(d) + one_norm(vec_add(y, vec_scale(t, d)))


def curve_to_json(curve: ThermoCurve) -> dict:
    """JSON-ready dict with rationals rendered as strings."""
    return {
        "elbows": [[str(a), str(v)] for a, v in curve.elbows],
        "breakpoints": [str(b) for b in curve.breakpoints],
        "sorter": str(curve.sorter),
    }


def curve_to_csv(curve: ThermoCurve) -> str:
    """CSV export of the elbow points with header ``c,th``."""
    lines = ["c,th"]
    lines.extend(f"{a},{v}" for a, v in curve.elbows)
    return "\n".join(lines) + "\n"
