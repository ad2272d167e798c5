import math

import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from byzfusion import (
    AttackStrategy,
    FusedMarginals,
    SensorOperatingPoint,
    chernoff_information,
    chernoff_objective,
    closed_form_t_star,
    marginalize,
    numeric_t_star,
    t_star_bounds,
)
from byzfusion.errors import DomainError, NearDegenerateError, OrderingError

from strategies import ordered_marginals, open_unit

# (pi10, pi11, t*, C) from a 50-digit root of the derivative (mpmath.findroot)
HIGH_PRECISION = [
    (0.3, 0.65, 0.49669447423760532833, 0.06554163935394089372),
    (0.2, 0.8, 0.5, 0.22314355131420975577),
    (0.48, 0.52, 0.5, 0.00080064068348691664269),
    (0.4, 0.6, 0.5, 0.020410997260127564777),
    (0.05, 0.9, 0.47593653222678214928, 0.65512153490732691117),
    (0.6, 0.3, 0.5055273608818488079, 0.047711628913917144698),
]


def mp_objective(t, a, b):
    mpmath.mp.dps = 40
    t, a, b = mpmath.mpf(t), mpmath.mpf(a), mpmath.mpf(b)
    return a**t * b ** (1 - t) + (1 - a) ** t * (1 - b) ** (1 - t)


class TestObjective:
    def test_endpoints(self):
        m = FusedMarginals(0.2, 0.8)
        assert chernoff_objective(0.0, m) == pytest.approx(1.0, abs=1e-15)
        assert chernoff_objective(1.0, m) == pytest.approx(1.0, abs=1e-15)

    def test_midpoint(self):
        assert chernoff_objective(0.5, FusedMarginals(0.2, 0.8)) == pytest.approx(0.8, abs=1e-15)

    @given(st.floats(0, 1), open_unit, open_unit)
    def test_matches_high_precision(self, t, a, b):
        expected = float(mp_objective(t, a, b))
        assert chernoff_objective(t, FusedMarginals(a, b)) == pytest.approx(expected, rel=1e-13)

    @pytest.mark.parametrize("m", [FusedMarginals(0.0, 0.5), FusedMarginals(0.3, 1.0)])
    def test_boundary_marginals(self, m):
        with pytest.raises(DomainError):
            chernoff_objective(0.5, m)

    def test_t_out_of_range(self):
        with pytest.raises(DomainError):
            chernoff_objective(1.5, FusedMarginals(0.2, 0.8))

    @given(ordered_marginals(), st.lists(st.floats(0, 1), min_size=3, max_size=3, unique=True))
    def test_convex(self, m, ts):
        t1, t2, t3 = sorted(ts)
        if t3 - t1 < 1e-6:
            return
        f1, f2, f3 = (chernoff_objective(t, m) for t in (t1, t2, t3))
        w = (t3 - t2) / (t3 - t1)
        assert f2 <= w * f1 + (1 - w) * f3 + 1e-14


class TestOptimizer:
    @pytest.mark.parametrize("a,b,t,c", [r for r in HIGH_PRECISION if r[0] < r[1]])
    def test_closed_form_high_precision(self, a, b, t, c):
        assert closed_form_t_star(FusedMarginals(a, b)) == pytest.approx(t, abs=1e-13)

    @pytest.mark.parametrize("a,b,t,c", HIGH_PRECISION)
    def test_numeric_high_precision(self, a, b, t, c):
        assert numeric_t_star(FusedMarginals(a, b), tol=1e-12) == pytest.approx(t, abs=1e-11)

    @pytest.mark.parametrize("a,b", [(0.2, 0.8), (0.48, 0.52)])
    def test_symmetric_half(self, a, b):
        assert closed_form_t_star(FusedMarginals(a, b)) == pytest.approx(0.5, abs=1e-15)

    @pytest.mark.parametrize("a,b", [(0.2, 0.8), (0.4, 0.6)])
    def test_numeric_symmetric(self, a, b):
        assert numeric_t_star(FusedMarginals(a, b), tol=1e-12) == pytest.approx(0.5, abs=1e-12)

    def test_perturbed_agrees(self):
        m = FusedMarginals(0.3, 0.65)
        assert closed_form_t_star(m) == pytest.approx(numeric_t_star(m, 1e-12), abs=1e-9)

    @given(ordered_marginals())
    def test_agreement(self, m):
        assert abs(closed_form_t_star(m) - numeric_t_star(m, 1e-12)) <= 1e-9

    @given(ordered_marginals(min_gap=1e-12))
    def test_range(self, m):
        assert 0.0 <= closed_form_t_star(m) <= 1.0

    @given(ordered_marginals())
    def test_stationary(self, m):
        a, b = m.pi10, m.pi11
        t = closed_form_t_star(m)
        ls = math.log1p((b - a) / (1 - b))
        lr = -math.log1p((b - a) / a)
        term1 = (1 - b) * math.exp(t * ls) * ls
        term2 = b * math.exp(t * lr) * lr
        assert abs(term1 + term2) <= 1e-10 * (abs(term1) + abs(term2))

    def test_ordering_error(self):
        with pytest.raises(OrderingError):
            closed_form_t_star(FusedMarginals(0.6, 0.4))

    def test_near_degenerate(self):
        with pytest.raises(NearDegenerateError):
            closed_form_t_star(FusedMarginals(0.5, 0.5 + 1e-13))

    def test_bad_tol(self):
        with pytest.raises(DomainError):
            numeric_t_star(FusedMarginals(0.2, 0.8), tol=0.0)

    def test_small_gaps_stay_stable(self):
        # the rearranged closed form keeps t* accurate when the marginals nearly coincide
        for d in (1e-4, 1e-6, 1e-8, 1e-10):
            t = closed_form_t_star(FusedMarginals(0.3, 0.3 + d))
            mpmath.mp.dps = 60
            a, b = mpmath.mpf(0.3), mpmath.mpf(0.3) + mpmath.mpf(d)
            deriv = lambda s: (1 - b) * ((1 - a) / (1 - b)) ** s * mpmath.log((1 - a) / (1 - b)) \
                + b * (a / b) ** s * mpmath.log(a / b)
            assert t == pytest.approx(float(mpmath.findroot(deriv, 0.5)), abs=1e-12)


class TestInformation:
    @pytest.mark.parametrize("a,b,t,c", HIGH_PRECISION)
    def test_values(self, a, b, t, c):
        res = chernoff_information(FusedMarginals(a, b))
        assert res.c == pytest.approx(c, rel=1e-12)
        assert res.t_star == pytest.approx(t, abs=1e-11)

    def test_symmetric_closed_values(self):
        assert chernoff_information(FusedMarginals(0.2, 0.8)).c == pytest.approx(-math.log(0.8), rel=1e-14)
        assert chernoff_information(FusedMarginals(0.48, 0.52)).c == pytest.approx(
            -math.log(2 * math.sqrt(0.48 * 0.52)), rel=1e-10)

    def test_identical(self):
        res = chernoff_information(FusedMarginals(0.5, 0.5))
        assert (res.t_star, res.c) == (0.5, 0.0)
        assert not res.has_bracket

    @given(ordered_marginals())
    def test_hypothesis_swap_symmetry(self, m):
        assert chernoff_information(m).c == pytest.approx(
            chernoff_information(m.complemented()).c, rel=1e-9, abs=1e-12)

    @given(ordered_marginals())
    def test_reversed_uses_numeric_path(self, m):
        rev = FusedMarginals(m.pi11, m.pi10)
        assert chernoff_information(rev).c == pytest.approx(chernoff_information(m).c, rel=1e-9, abs=1e-15)

    @given(ordered_marginals())
    def test_c_positive_and_maximal(self, m):
        res = chernoff_information(m)
        assert res.c > 0
        for t in np.linspace(0, 1, 11):
            assert -math.log(chernoff_objective(float(t), m)) <= res.c + 1e-14

    def test_bracket_populated_with_sensor(self):
        s = SensorOperatingPoint(0.6, 0.4)
        res = chernoff_information(marginalize(0.0, AttackStrategy(0, 0), s), s)
        assert res.has_bracket
        assert res.bracket_lo < res.t_star < res.bracket_hi


class TestBounds:
    def test_attack_free(self):
        s = SensorOperatingPoint(0.6, 0.4)
        m = FusedMarginals(0.4, 0.6)
        lo, hi = t_star_bounds(m, s)
        # G = 1, pi11(G+1)-1 = 0.2, 1-pi10(G+1) = 0.2, Y = 1.5 * (0.4/0.6) = 1
        assert lo == pytest.approx(1 / (0.6 / 0.4 + 1), rel=1e-14)
        assert hi == pytest.approx(1 / (0.4 / 0.6 + 1), rel=1e-14)
        assert lo < closed_form_t_star(m) == 0.5 < hi

    def test_degenerate(self):
        with pytest.raises(NearDegenerateError):
            t_star_bounds(FusedMarginals(0.5, 0.5 + 1e-15), SensorOperatingPoint(0.6, 0.4))

    def test_wrong_order(self):
        with pytest.raises(DomainError):
            t_star_bounds(FusedMarginals(0.6, 0.4), SensorOperatingPoint(0.6, 0.4))

    def test_random_configurations(self, rng):
        for _ in range(2000):
            pf, pd = sorted(rng.uniform(0.01, 0.99, 2))
            if pd - pf < 1e-3:
                continue
            s = SensorOperatingPoint(float(pd), float(pf))
            alpha = float(rng.uniform(0, 0.49))
            attack = AttackStrategy(*map(float, rng.random(2)))
            m = marginalize(alpha, attack, s)
            lo, hi = t_star_bounds(m, s)
            assert lo < closed_form_t_star(m) < hi
