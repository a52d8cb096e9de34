"""Deciding d-majorization (x ≺_d y) and producing transfer matrices.

Three equivalent criteria are implemented independently:

* curve dominance: trace(x) = trace(y) and th_{d,x} <= th_{d,y}, checked at
  the elbow abscissae of th_{d,x} (sufficient, since the difference of a
  linear piece and a concave function is convex, so its maximum over each
  piece sits at an elbow);
* the 1-norm test: ||d_i x - y_i d||_1 <= ||d_i y - y_i d||_1 for all i;
* exact feasibility of {A >= 0, columns sum to 1, A d = d, A y = x}, decided
  by a rational phase-one simplex and returning a certificate matrix.

For a Gibbs vector equal to a standard basis vector (the zero-temperature
limit of a non-degenerate ground state) the feasibility question reduces to
a single 1-norm inequality, and a three-step collector construction builds
the certificate directly; `zero_temp_check` implements it.  For general
d >= 0 the equivalence of the 1-norm test with feasibility is an open
question; `conjecture_probe` evaluates both sides independently and only
reports whether they agree.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .curve import build_curve, check_gibbs_vector, eval_curve
from .errors import DimensionError, DomainError
from .exact import (
    Mat,
    ONE,
    Perm,
    Vec,
    ZERO,
    identity_mat,
    mat_mul,
    mat_vec,
    one_norm,
    perm_matrix,
    total,
    vec,
    vec_scale,
    vec_sub,
)
from .lp import feasible_point


@dataclass(frozen=True)
class FeasibilityResult:
    feasible: bool
    certificate: Mat | None

    @property
    def status(self) -> str:
        return "feasible" if self.feasible else "infeasible"


def _check_triple(d: Vec, y: Vec, x: Vec) -> tuple[Vec, Vec, Vec]:
    d, y, x = vec(d), vec(y), vec(x)
    if not len(d) == len(y) == len(x):
        raise DimensionError(f"lengths differ: d={len(d)}, y={len(y)}, x={len(x)}")
    return d, y, x


def thermomajorizes(d: Vec, y: Vec, x: Vec) -> bool:
    """True iff trace(x) = trace(y) and th_{d,x} <= th_{d,y} everywhere."""
    d, y, x = _check_triple(d, y, x)
    check_gibbs_vector(d)
    if total(x) != total(y):
        return False
    cx = build_curve(d, x)
    cy = build_curve(d, y)
    xs, vs = cx._grid
    return all(v <= eval_curve(cy, a) for a, v in zip(xs, vs))


def norm_criterion(d: Vec, y: Vec, x: Vec) -> bool:
    """True iff trace(x) = trace(y) and ||d_i x - y_i d||_1 <= ||d_i y - y_i d||_1 for all i."""
    d, y, x = _check_triple(d, y, x)
    check_gibbs_vector(d)
    if total(x) != total(y):
        return False
    for di, yi in zip(d, y):
        lhs = one_norm(vec_sub(vec_scale(di, x), vec_scale(yi, d)))
        rhs = one_norm(vec_sub(vec_scale(di, y), vec_scale(yi, d)))
        if lhs > rhs:
            return False
    return True


def _transfer_lp(d: Vec, y: Vec, x: Vec) -> Vec | None:
    """Nonnegative solution of {columns sum to 1, A d = d, A y = x}, flattened row-major."""
    n = len(d)
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    for j in range(n):  # column sums
        row = [ZERO] * (n * n)
        for i in range(n):
            row[i * n + j] = ONE
        rows.append(row)
        rhs.append(ONE)
    for i in range(n):  # A d = d
        row = [ZERO] * (n * n)
        for j in range(n):
            row[i * n + j] = d[j]
        rows.append(row)
        rhs.append(d[i])
    for i in range(n):  # A y = x
        row = [ZERO] * (n * n)
        for j in range(n):
            row[i * n + j] = y[j]
        rows.append(row)
        rhs.append(x[i])
    return feasible_point(rows, rhs)


def _verify_certificate(a: Mat, d: Vec, y: Vec, x: Vec) -> None:
    n = len(d)
    assert all(len(row) == n for row in a) and len(a) == n
    if any(e < 0 for row in a for e in row):
        raise RuntimeError("internal: certificate has a negative entry")
    for j in range(n):
        if sum((a[i][j] for i in range(n)), ZERO) != 1:
            raise RuntimeError("internal: certificate column does not sum to 1")
    if mat_vec(a, d) != d:
        raise RuntimeError("internal: certificate does not fix d")
    if mat_vec(a, y) != x:
        raise RuntimeError("internal: certificate does not map y to x")


def find_transfer(d: Vec, y: Vec, x: Vec) -> FeasibilityResult:
    """Exact feasibility of {A >= 0, 1^T A = 1^T, A d = d, A y = x} with certificate."""
    d, y, x = _check_triple(d, y, x)
    check_gibbs_vector(d)
    if total(x) != total(y):
        return FeasibilityResult(False, None)
    flat = _transfer_lp(d, y, x)
    if flat is None:
        return FeasibilityResult(False, None)
    n = len(d)
    a = tuple(tuple(flat[i * n + j] for j in range(n)) for i in range(n))
    _verify_certificate(a, d, y, x)
    return FeasibilityResult(True, a)


def _collector_certificate(y: Vec, x: Vec) -> Mat:
    """Certificate for A e_1 = e_1, A y = x, given the 1-norm criterion holds.

    Three column-stochastic stages: collect the non-negative and negative
    entries of y[1:] into two slots, rescale the collected masses from
    (y_plus, y_minus) to (x_plus, x_minus) while feeding the surplus to the
    ground slot, and redistribute onto the pattern of x[1:].  Requires
    length >= 3 (callers pad with zeros first).
    """
    n = len(y)
    assert n >= 3
    y_plus = sum((max(v, ZERO) for v in y[1:]), ZERO)
    y_minus = -sum((min(v, ZERO) for v in y[1:]), ZERO)
    x_plus = sum((max(v, ZERO) for v in x[1:]), ZERO)
    x_minus = -sum((min(v, ZERO) for v in x[1:]), ZERO)
    # Consequence of the 1-norm inequality plus the trace condition; if it
    # fails the caller's criterion check was wrong.
    if x_plus > y_plus or x_minus > y_minus:
        raise RuntimeError("internal: collected masses do not contract")
    r_plus = x_plus / y_plus if y_plus > 0 else ONE
    r_minus = x_minus / y_minus if y_minus > 0 else ONE

    a1 = [[ZERO] * n for _ in range(n)]
    a1[0][0] = ONE
    for k in range(1, n):
        a1[1 if y[k] >= 0 else 2][k] = ONE

    a2 = [list(row) for row in identity_mat(n)]
    a2[0][1] = ONE - r_plus
    a2[1][1] = r_plus
    a2[0][2] = ONE - r_minus
    a2[2][2] = r_minus

    a3 = [[ZERO] * n for _ in range(n)]
    a3[0][0] = ONE
    for k in range(3, n):
        a3[k][k] = ONE
    if x_plus > 0:
        for k in range(1, n):
            if x[k] > 0:
                a3[k][1] = x[k] / x_plus
    else:
        a3[1][1] = ONE
    if x_minus > 0:
        for k in range(1, n):
            if x[k] < 0:
                a3[k][2] = -x[k] / x_minus
    else:
        a3[1][2] = ONE

    return mat_mul(mat_mul(tuple(map(tuple, a3)), tuple(map(tuple, a2))), tuple(map(tuple, a1)))


def zero_temp_check(y: Vec, x: Vec, j: int = 1) -> FeasibilityResult:
    """Decide x ≺_d y for d = e_j and construct a certificate when feasible.

    The criterion is trace(x) = trace(y) together with
    ||x - y_j e_j||_1 <= ||y - y_j e_j||_1.  Instances shorter than 3 are
    padded with zero entries (which changes nothing) so the collector
    construction has room to work, then truncated back.
    """
    y, x = vec(y), vec(x)
    if len(y) != len(x):
        raise DimensionError(f"y has length {len(y)}, x has length {len(x)}")
    n = len(y)
    if not 1 <= j <= n:
        raise DomainError(f"ground-state index {j} out of range 1..{n}")
    if total(x) != total(y):
        return FeasibilityResult(False, None)
    shift_y = tuple(v if i != j - 1 else ZERO for i, v in enumerate(y))
    shift_x = tuple(
        v if i != j - 1 else v - y[j - 1] for i, v in enumerate(x)
    )
    if one_norm(shift_x) > one_norm(shift_y):
        return FeasibilityResult(False, None)

    swap = Perm(tuple(j if k == 1 else 1 if k == j else k for k in range(1, n + 1)))
    yp = tuple(y[swap(k) - 1] for k in range(1, n + 1))
    xp = tuple(x[swap(k) - 1] for k in range(1, n + 1))
    width = max(n, 3)
    yp = yp + (ZERO,) * (width - n)
    xp = xp + (ZERO,) * (width - n)

    big = _collector_certificate(yp, xp)
    small = tuple(tuple(big[i][k] for k in range(n)) for i in range(n))
    p = perm_matrix(swap)
    a = mat_mul(mat_mul(p, small), p)  # the transposition is its own inverse
    _verify_certificate(a, tuple(ONE if i == j - 1 else ZERO for i in range(n)), y, x)
    return FeasibilityResult(True, a)


@dataclass(frozen=True)
class ConjectureProbe:
    criterion_ii: bool
    lp_feasible: bool

    @property
    def agree(self) -> bool:
        return self.criterion_ii == self.lp_feasible


def conjecture_probe(d: Vec, y: Vec, x: Vec) -> ConjectureProbe:
    """Evaluate the 1-norm criterion and exact feasibility independently.

    For d >= 0 with zero entries the two are merely conjectured equivalent;
    this probe takes no stance and only reports both verdicts.
    """
    d, y, x = _check_triple(d, y, x)
    check_gibbs_vector(d)
    criterion = norm_criterion(d, y, x)
    lp = total(x) == total(y) and _transfer_lp(d, y, x) is not None
    return ConjectureProbe(criterion_ii=criterion, lp_feasible=lp)


def gibbs_point(d: Vec, trace: Fraction) -> Vec:
    """The fixed point (trace / sum(d)) * d, reachable from every state of that trace."""
    d = vec(d)
    return vec_scale(Fraction(trace) / total(d), d)
