import random
from fractions import Fraction

import pytest
from support import (
    rand_d,
    rand_d_with_zeros,
    rand_y,
    reachable_from,
    same_trace,
)

from thermomaj import (
    DimensionError,
    DomainError,
    conjecture_probe,
    find_transfer,
    gibbs_point,
    mat_mul,
    mat_vec,
    norm_criterion,
    thermomajorizes,
    total,
    vec,
    zero_temp_check,
)

F = Fraction
D1 = vec(["4", "2", "1"])
Y1 = vec(["4", "0", "1"])


def test_goldens():
    assert thermomajorizes(D1, Y1, vec(["2", "2", "1"]))
    assert thermomajorizes(D1, Y1, Y1)
    assert not thermomajorizes(D1, Y1, vec(["5", "0", "0"]))


def test_trace_mismatch_is_false():
    assert not thermomajorizes(D1, Y1, vec(["1", "0", "0"]))
    assert not norm_criterion(D1, Y1, vec(["1", "0", "0"]))
    assert not find_transfer(D1, Y1, vec(["1", "0", "0"])).feasible


def test_dimension_errors():
    with pytest.raises(DimensionError):
        thermomajorizes(D1, Y1, vec(["1", "2"]))
    with pytest.raises(DimensionError):
        norm_criterion(vec(["1"]), vec(["1", "2"]), vec(["1", "2"]))


def test_transfer_certificate_golden():
    result = find_transfer(D1, Y1, vec(["2", "2", "1"]))
    assert result.feasible
    a = result.certificate
    assert mat_vec(a, Y1) == vec(["2", "2", "1"])
    assert mat_vec(a, D1) == D1


def test_transfer_reflexive_and_infeasible():
    assert find_transfer(D1, Y1, Y1).feasible
    r = find_transfer(D1, Y1, vec(["5", "0", "0"]))
    assert not r.feasible and r.certificate is None


def test_gibbs_point_always_reachable():
    rng = random.Random(71)
    for _ in range(40):
        n = rng.randint(1, 5)
        d, y = rand_d(rng, n), rand_y(rng, n)
        g = gibbs_point(d, total(y))
        assert thermomajorizes(d, y, g)
        assert norm_criterion(d, y, g)
        # the rank-one averaging matrix is an explicit certificate
        s = total(d)
        a = tuple(tuple(di / s for _ in range(n)) for di in d)
        assert mat_vec(a, y) == g and mat_vec(a, d) == d


def test_unit_vector_is_maximal_for_probabilities():
    rng = random.Random(73)
    for _ in range(40):
        n = rng.randint(2, 5)
        d = rand_d(rng, n)
        raw = [abs(rand_y(rng, 1)[0]) for _ in range(n)]
        s = sum(raw) or F(1)
        y = tuple(q / s for q in raw)
        k = min(range(n), key=lambda i: (d[i], i))
        top = tuple(total(y) if i == k else F(0) for i in range(n))
        assert thermomajorizes(d, top, y)


def test_criteria_agree_random():
    rng = random.Random(79)
    for _ in range(150):
        n = rng.randint(2, 4)
        d, y = rand_d(rng, n), rand_y(rng, n)
        x = reachable_from(rng, d, y) if rng.random() < 0.4 else same_trace(rng, y)
        a = thermomajorizes(d, y, x)
        b = norm_criterion(d, y, x)
        c = find_transfer(d, y, x).feasible
        assert a == b == c


def test_transitivity_of_certificates():
    rng = random.Random(83)
    for _ in range(25):
        n = rng.randint(2, 4)
        d, z = rand_d(rng, n), rand_y(rng, n)
        y = reachable_from(rng, d, z)
        x = reachable_from(rng, d, y)
        first = find_transfer(d, z, y)
        second = find_transfer(d, y, x)
        assert first.feasible and second.feasible
        chained = mat_mul(second.certificate, first.certificate)
        assert mat_vec(chained, z) == x
        assert thermomajorizes(d, z, x)


# -- zero temperature ---------------------------------------------------------


def test_zero_temp_goldens():
    feasible = zero_temp_check(vec(["1", "1", "0"]), vec(["2", "0", "0"]), 1)
    assert feasible.feasible
    assert mat_vec(feasible.certificate, vec(["1", "1", "0"])) == vec(["2", "0", "0"])
    assert zero_temp_check(Y1, Y1, 1).feasible
    assert not zero_temp_check(vec(["1", "1", "0"]), vec(["0", "2", "0"]), 1).feasible


def test_zero_temp_certificate_properties():
    rng = random.Random(89)
    for _ in range(120):
        n = rng.randint(1, 5)
        j = rng.randint(1, n)
        y = rand_y(rng, n)
        x = same_trace(rng, y)
        result = zero_temp_check(y, x, j)
        e_j = tuple(F(int(i == j - 1)) for i in range(n))
        assert result.feasible == find_transfer(e_j, y, x).feasible
        if result.feasible:
            a = result.certificate
            assert mat_vec(a, y) == x
            assert mat_vec(a, e_j) == e_j
            assert all(q >= 0 for row in a for q in row)
            assert all(sum(a[i][k] for i in range(n)) == 1 for k in range(n))


def test_zero_temp_mass_contraction():
    # Whenever the criterion holds, the collected masses contract:
    # x_plus <= y_plus and x_minus <= y_minus.
    rng = random.Random(97)
    found = 0
    for _ in range(300):
        n = rng.randint(2, 5)
        y = rand_y(rng, n)
        x = same_trace(rng, y)
        if not zero_temp_check(y, x, 1).feasible:
            continue
        found += 1
        y_plus = sum(max(q, F(0)) for q in y[1:])
        y_minus = -sum(min(q, F(0)) for q in y[1:])
        x_plus = sum(max(q, F(0)) for q in x[1:])
        x_minus = -sum(min(q, F(0)) for q in x[1:])
        assert x_plus <= y_plus and x_minus <= y_minus
    assert found >= 10


def test_zero_temp_j_out_of_range():
    with pytest.raises(DomainError):
        zero_temp_check(vec(["1", "0"]), vec(["1", "0"]), 3)


def test_zero_temp_padding_small_instances():
    r = zero_temp_check(vec(["1", "1"]), vec(["2", "0"]), 1)
    assert r.feasible and mat_vec(r.certificate, vec(["1", "1"])) == vec(["2", "0"])
    r = zero_temp_check(vec(["1", "1"]), vec(["0", "2"]), 2)
    assert r.feasible and mat_vec(r.certificate, vec(["1", "1"])) == vec(["0", "2"])
    r = zero_temp_check(vec(["5"]), vec(["5"]), 1)
    assert r.feasible and r.certificate == ((F(1),),)


def test_zero_temperature_limit_of_positive_temperatures():
    # For d(T) = (1, u, u^2, ...) with u = e^(-1/T), the positive-temperature
    # polytope only grows as T -> 0, so the verdicts relate one-sidedly:
    # infeasible at T = 0 forces infeasible at small T, and feasibility at
    # small T forces feasibility at T = 0.  (The converse can genuinely fail:
    # a state may sit in the limit polytope but outside every M_{d(T)}(y).)
    rng = random.Random(101)
    cold_feasible = 0
    cold_infeasible = 0
    for _ in range(60):
        n = rng.randint(2, 4)
        y = rand_y(rng, n)
        x = same_trace(rng, y) if rng.random() < 0.5 else reachable_from(
            rng, tuple(F(1, 2**32) ** i for i in range(n)), y
        )
        limit = zero_temp_check(y, x, 1).feasible
        verdicts = []
        for k in (64, 256, 1024):
            u = F(1, 2**k)
            d_cold = tuple(u**i for i in range(n))
            verdicts.append(thermomajorizes(d_cold, y, x))
        if not limit:
            assert verdicts[-2:] == [False, False]
            cold_infeasible += 1
        if verdicts[-2:] == [True, True]:
            assert limit
            cold_feasible += 1
    assert cold_feasible >= 5 and cold_infeasible >= 5


# -- the general d >= 0 probe -------------------------------------------------


def test_probe_displayed_instance():
    d = vec(["2", "1", "0", "0"])
    y = vec(["14", "6", "8", "-4"])
    x = vec(["9", "10", "5", "0"])
    probe = conjecture_probe(d, y, x)
    assert probe.criterion_ii and probe.lp_feasible and probe.agree
    # the displayed block matrix is one explicit certificate
    a = tuple(
        map(
            tuple,
            [
                vec(["1/2", "1", "0", "1"]),
                vec(["1/2", "0", "3/8", "0"]),
                vec(["0", "0", "5/8", "0"]),
                vec(["0", "0", "0", "0"]),
            ],
        )
    )
    assert mat_vec(a, d) == d and mat_vec(a, y) == x
    assert all(sum(a[i][k] for i in range(4)) == 1 for k in range(4))


def test_probe_small_block_matrix():
    d = vec(["2", "1"])
    a = (vec(["1/2", "1"]), vec(["1/2", "0"]))
    assert mat_vec(a, d) == d
    assert mat_vec(a, vec(["14", "6"])) == vec(["13", "7"])


def test_probe_agrees_for_strict_d():
    rng = random.Random(103)
    for _ in range(60):
        n = rng.randint(2, 4)
        d, y = rand_d(rng, n), rand_y(rng, n)
        x = reachable_from(rng, d, y) if rng.random() < 0.4 else same_trace(rng, y)
        assert conjecture_probe(d, y, x).agree


def test_probe_trivial_and_zero_d():
    rng = random.Random(107)
    for _ in range(40):
        n = rng.randint(2, 4)
        d = rand_d_with_zeros(rng, n)
        y = rand_y(rng, n)
        probe = conjecture_probe(d, y, y)
        assert probe.criterion_ii and probe.lp_feasible
