import random
from fractions import Fraction

import pytest
from support import rand_d, rand_d_with_zeros, rand_fraction, rand_perm, rand_y

from thermomaj import (
    DimensionError,
    DomainError,
    apply_permutation,
    build_curve,
    eval_curve,
    legendre_dual,
    legendre_norm_form,
    min_form_value,
    total,
    vec,
)
from thermomaj.curve import curve_to_csv, curve_to_json

D1 = vec(["4", "2", "1"])
Y1 = vec(["4", "0", "1"])


def rand_abscissa(rng, curve):
    span = curve.total
    return Fraction(rng.randint(0, 1000), 1000) * span


def test_min_c_5_curve():
    curve = build_curve(D1, Y1)
    assert curve.elbows == (
        (Fraction(0), Fraction(0)),
        (Fraction(4), Fraction(4)),
        (Fraction(5), Fraction(5)),
        (Fraction(7), Fraction(5)),
    )
    assert curve.breakpoints == (Fraction(5),)
    for c in range(8):
        assert eval_curve(curve, Fraction(c)) == min(Fraction(c), Fraction(5))


def test_eval_goldens():
    curve = build_curve(D1, Y1)
    assert eval_curve(curve, Fraction(3)) == 3
    assert eval_curve(curve, Fraction(6)) == 5
    assert eval_curve(curve, Fraction(0)) == 0


def test_three_slope_curve():
    curve = build_curve(vec(["1", "2", "10"]), vec(["1", "4", "5"]))
    assert curve.elbows == (
        (Fraction(0), Fraction(0)),
        (Fraction(2), Fraction(4)),
        (Fraction(3), Fraction(5)),
        (Fraction(13), Fraction(10)),
    )
    slopes = [
        (b[1] - a[1]) / (b[0] - a[0]) for a, b in zip(curve.elbows, curve.elbows[1:])
    ]
    assert slopes == [Fraction(2), Fraction(1), Fraction(1, 2)]
    assert eval_curve(curve, Fraction(10)) == Fraction(17, 2)


def test_proportional_is_linear():
    curve = build_curve(vec(["1", "1"]), vec(["1", "1"]))
    assert curve.elbows[0] == (Fraction(0), Fraction(0))
    assert curve.elbows[-1] == (Fraction(2), Fraction(2))
    assert curve.breakpoints == ()


def test_domain_errors():
    curve = build_curve(D1, Y1)
    with pytest.raises(DomainError):
        eval_curve(curve, Fraction(-1))
    with pytest.raises(DomainError):
        eval_curve(curve, Fraction(8))
    with pytest.raises(DomainError):
        build_curve(vec(["0", "0"]), vec(["1", "1"]))
    with pytest.raises(DimensionError):
        build_curve(vec(["1"]), vec(["1", "2"]))


def test_interpolation_equals_min_form_random():
    rng = random.Random(23)
    for _ in range(30):
        n = rng.randint(1, 6)
        d, y = rand_d(rng, n), rand_y(rng, n)
        curve = build_curve(d, y)
        for _ in range(100):
            c = rand_abscissa(rng, curve)
            assert eval_curve(curve, c) == min_form_value(d, y, c)


def test_min_form_with_zero_weights():
    rng = random.Random(29)
    for _ in range(40):
        n = rng.randint(2, 5)
        d, y = rand_d_with_zeros(rng, n), rand_y(rng, n)
        curve = build_curve(d, y)
        for _ in range(25):
            c = rand_abscissa(rng, curve)
            assert eval_curve(curve, c) == min_form_value(d, y, c)


def test_zero_weight_jumps():
    up = build_curve(vec(["1", "0"]), vec(["0", "1"]))
    assert eval_curve(up, Fraction(0)) == 1  # jump at the left end
    assert eval_curve(up, Fraction(1)) == 1
    down = build_curve(vec(["1", "0"]), vec(["0", "-1"]))
    assert eval_curve(down, Fraction(0)) == 0
    assert eval_curve(down, Fraction(1)) == 0  # the drop to the trace sits after the sup
    assert down.elbows[-1] == (Fraction(1), Fraction(-1))
    neutral = build_curve(vec(["1", "0"]), vec(["2", "0"]))
    assert eval_curve(neutral, Fraction(1, 2)) == 1


def test_concavity():
    rng = random.Random(31)
    for _ in range(100):
        n = rng.randint(1, 6)
        curve = build_curve(rand_d(rng, n), rand_y(rng, n))
        xs, vs = curve._grid
        slopes = [
            (v1 - v0) / (a1 - a0)
            for (a0, v0), (a1, v1) in zip(zip(xs, vs), zip(xs[1:], vs[1:]))
        ]
        assert all(s0 >= s1 for s0, s1 in zip(slopes, slopes[1:]))


def test_permutation_invariance():
    rng = random.Random(37)
    for _ in range(50):
        n = rng.randint(2, 5)
        d, y = rand_d(rng, n), rand_y(rng, n)
        s = rand_perm(rng, n)
        c1 = build_curve(d, y)
        c2 = build_curve(apply_permutation(s, d), apply_permutation(s, y))
        assert c1.total == c2.total
        grid = sorted(set(c1._grid[0]) | set(c2._grid[0]))
        assert all(eval_curve(c1, a) == eval_curve(c2, a) for a in grid)


def test_maximum_is_positive_part_sum():
    rng = random.Random(41)
    for _ in range(80):
        n = rng.randint(1, 6)
        d, y = rand_d(rng, n), rand_y(rng, n)
        curve = build_curve(d, y)
        assert curve.maximum() == sum(max(q, Fraction(0)) for q in y)


def test_sorted_partial_sums_characterize_sorters():
    # th(sum d_sigma(i), i<=j) == sum y_sigma(i) for all j iff sigma sorts y/d.
    rng = random.Random(43)
    from thermomaj import all_perms

    for _ in range(20):
        n = rng.randint(2, 4)
        d, y = rand_d(rng, n), rand_y(rng, n)
        curve = build_curve(d, y)
        for sigma in all_perms(n):
            run_c = Fraction(0)
            run_v = Fraction(0)
            on_curve = True
            for j in range(1, n + 1):
                run_c += d[sigma(j) - 1]
                run_v += y[sigma(j) - 1]
                if eval_curve(curve, run_c) != run_v:
                    on_curve = False
                    break
            ratios = [Fraction(y[sigma(j) - 1], d[sigma(j) - 1]) for j in range(1, n + 1)]
            sorts = all(a >= b for a, b in zip(ratios, ratios[1:]))
            assert on_curve == sorts


def test_shift_identity():
    # Adding t*d to y shifts the curve by c*t.
    rng = random.Random(47)
    for _ in range(40):
        n = rng.randint(1, 5)
        d, y = rand_d(rng, n), rand_y(rng, n)
        t = rand_fraction(rng)
        base = build_curve(d, y)
        shifted = build_curve(d, tuple(q + t * w for q, w in zip(y, d)))
        for _ in range(10):
            c = rand_abscissa(rng, base)
            assert eval_curve(shifted, c) == eval_curve(base, c) + c * t


def test_legendre_goldens():
    curve = build_curve(D1, Y1)
    assert legendre_dual(curve, Fraction(0)) == 10
    assert legendre_dual(curve, Fraction(-1)) == 0


def test_legendre_identity_random():
    rng = random.Random(53)
    for _ in range(60):
        n = rng.randint(1, 5)
        d = rand_d_with_zeros(rng, n) if rng.random() < 0.3 else rand_d(rng, n)
        y = rand_y(rng, n)
        curve = build_curve(d, y)
        for _ in range(10):
            t = rand_fraction(rng, -6, 6, 7)
            assert legendre_dual(curve, t) == legendre_norm_form(d, y, t)


def test_legendre_proportional():
    d = vec(["2", "3"])
    curve = build_curve(d, d)
    for t in (Fraction(-2), Fraction(-1), Fraction(0), Fraction(3)):
        expected = 2 * max(Fraction(0), (1 + t) * total(d))
        assert legendre_dual(curve, t) == expected


def test_affine_linearity_conditions_agree():
    # On a concave piecewise-linear curve, for any pair of grid points a < b:
    # (i) the curve is linear on [a, b]
    # (ii)/(iii) symmetric pairs sum to f(a) + f(b)
    # (iv) some interior point lies on the chord
    # must all coincide.
    rng = random.Random(59)
    for _ in range(20):
        n = rng.randint(2, 5)
        d, y = rand_d(rng, n), rand_y(rng, n)
        curve = build_curve(d, y)
        xs, vs = curve._grid
        for p in range(len(xs)):
            for q in range(p + 2, len(xs)):
                a, b = xs[p], xs[q]
                fa, fb = vs[p], vs[q]

                def chord(c):
                    return fa + (fb - fa) * (c - a) / (b - a)

                linear = all(vs[r] == chord(xs[r]) for r in range(p + 1, q))
                cond_iv = any(vs[r] == chord(xs[r]) for r in range(p + 1, q))
                mid_lo = a + (b - a) / 3
                mid_hi = b - (b - a) / 3  # mid_lo + mid_hi == a + b
                cond_iii = eval_curve(curve, mid_lo) + eval_curve(curve, mid_hi) == fa + fb
                assert linear == cond_iv == cond_iii


def test_breakpoints_are_few_and_on_elbows():
    rng = random.Random(61)
    for _ in range(60):
        n = rng.randint(1, 6)
        curve = build_curve(rand_d(rng, n), rand_y(rng, n))
        abscissae = {a for a, _ in curve.elbows}
        assert set(curve.breakpoints) <= abscissae
        assert len(curve.breakpoints) <= n - 1 if n > 1 else not curve.breakpoints
        assert all(0 < b < curve.total for b in curve.breakpoints)


def test_debug_mode_cross_checks():
    from thermomaj import set_debug

    set_debug(True)
    try:
        rng = random.Random(67)
        for _ in range(10):
            n = rng.randint(1, 5)
            d, y = rand_d(rng, n), rand_y(rng, n)
            curve = build_curve(d, y)
            for _ in range(20):
                eval_curve(curve, rand_abscissa(rng, curve))
                legendre_dual(curve, rand_fraction(rng))
    finally:
        set_debug(False)


def test_exports():
    curve = build_curve(D1, Y1)
    data = curve_to_json(curve)
    assert data["elbows"][1] == ["4", "4"]
    assert data["breakpoints"] == ["5"]
    csv = curve_to_csv(curve)
    assert csv.splitlines()[0] == "c,th"
    assert csv.splitlines()[1] == "0,0"
