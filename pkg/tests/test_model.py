import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from byzfusion import (
    AttackStrategy,
    FusedMarginals,
    GaussianSensingModel,
    NetworkParams,
    SensorOperatingPoint,
    gaussian_model_for,
    local_operating_point,
    marginalize,
)
from byzfusion.errors import DegenerateModelError, ValidationError

from strategies import attacks, sensors, unit


def q_erfc(x):
    return 0.5 * math.erfc(x / math.sqrt(2.0))


class TestValidation:
    @pytest.mark.parametrize("pd,pf", [(0.4, 0.6), (0.5, 0.5), (1.0, 0.2), (0.8, 0.0),
                                       (float("nan"), 0.1), (True, 0.1)])
    def test_bad_sensor(self, pd, pf):
        with pytest.raises(ValidationError):
            SensorOperatingPoint(pd, pf)

    @pytest.mark.parametrize("p10,p01", [(-0.1, 0.0), (0.0, 1.0000001), (math.inf, 0.0)])
    def test_bad_attack(self, p10, p01):
        with pytest.raises(ValidationError):
            AttackStrategy(p10, p01)

    @pytest.mark.parametrize("kwargs", [
        dict(alpha=1.2, p0=0.5, p1=0.5, n=3),
        dict(alpha=0.2, p0=0.6, p1=0.5, n=3),
        dict(alpha=0.2, p0=0.0, p1=1.0, n=3),
        dict(alpha=0.2, p0=0.5, p1=0.5, n=0),
        dict(alpha=0.2, p0=0.5, p1=0.5, n=2.0),
    ])
    def test_bad_network(self, kwargs):
        with pytest.raises(ValidationError):
            NetworkParams(**kwargs)

    def test_bad_gaussian_model(self):
        with pytest.raises(ValidationError):
            GaussianSensingModel(theta=0.0, lam=1.0)
        with pytest.raises(ValidationError):
            GaussianSensingModel(theta=1.0, lam=-1.0)

    def test_marginalize_rejects_alpha(self):
        with pytest.raises(ValidationError):
            marginalize(1.5, AttackStrategy(1, 1), SensorOperatingPoint(0.6, 0.4))

    def test_values_are_frozen(self):
        s = SensorOperatingPoint(0.6, 0.4)
        with pytest.raises(AttributeError):
            s.pd = 0.7


class TestMarginalize:
    def test_no_byzantines(self):
        m = marginalize(0.0, AttackStrategy(0.3, 0.9), SensorOperatingPoint(0.6, 0.4))
        assert (m.pi10, m.pi11) == (0.4, 0.6)

    def test_near_blind_point(self):
        # 0.4*(1*0.6 + 0) + 0.6*0.4 = 0.48 ; 0.4*(1*0.4 + 0) + 0.6*0.6 = 0.52
        m = marginalize(0.4, AttackStrategy(1, 1), SensorOperatingPoint(0.6, 0.4))
        assert m.pi10 == pytest.approx(0.48, abs=1e-15)
        assert m.pi11 == pytest.approx(0.52, abs=1e-15)

    def test_on_blinding_line(self):
        m = marginalize(0.8, AttackStrategy(1, 0.25), SensorOperatingPoint(0.6, 0.4))
        assert m.pi10 == pytest.approx(0.8, abs=1e-15)
        assert m.pi11 == pytest.approx(0.8, abs=1e-15)

    @given(st.floats(0, 1), sensors())
    def test_honest_attack_is_fixed_point(self, alpha, s):
        m = marginalize(alpha, AttackStrategy(0.0, 0.0), s)
        assert m.pi10 == pytest.approx(s.pf, abs=1e-15)
        assert m.pi11 == pytest.approx(s.pd, abs=1e-15)

    @given(unit, attacks(), sensors())
    def test_affine_in_alpha(self, alpha, attack, s):
        m0 = marginalize(0.0, attack, s)
        m1 = marginalize(1.0, attack, s)
        m = marginalize(alpha, attack, s)
        assert m.pi10 == pytest.approx((1 - alpha) * m0.pi10 + alpha * m1.pi10, abs=1e-15)
        assert m.pi11 == pytest.approx((1 - alpha) * m0.pi11 + alpha * m1.pi11, abs=1e-15)

    @given(unit, attacks(), sensors())
    def test_sign_of_gap(self, alpha, attack, s):
        m = marginalize(alpha, attack, s)
        predicted = (1 - alpha * (attack.p10 + attack.p01)) * (s.pd - s.pf)
        assert m.pi11 - m.pi10 == pytest.approx(predicted, abs=1e-14)
        if alpha * (attack.p10 + attack.p01) < 1 - 1e-9:
            assert m.pi11 > m.pi10

    def test_complemented(self):
        m = FusedMarginals(0.3, 0.65).complemented()
        assert (m.pi10, m.pi11) == pytest.approx((0.35, 0.7))


class TestGaussianModel:
    def test_theta_two(self):
        s = local_operating_point(GaussianSensingModel(theta=2.0, lam=1.0))
        assert s.pf == pytest.approx(q_erfc(1.0), rel=1e-13)
        assert s.pd == pytest.approx(q_erfc(-1.0), rel=1e-13)
        assert s.pf == pytest.approx(0.15865525393145705, rel=1e-13)
        assert s.pd == pytest.approx(0.84134474606854295, rel=1e-13)

    def test_symmetric_threshold(self):
        s = local_operating_point(GaussianSensingModel(theta=1.0, lam=1.0))
        assert s.pf == pytest.approx(q_erfc(0.5), rel=1e-13)
        assert s.pd == pytest.approx(1.0 - s.pf, rel=1e-13)

    def test_separability_limit(self):
        thetas = np.linspace(0.25, 10.0, 40)
        points = [local_operating_point(GaussianSensingModel(t, 1.0)) for t in thetas]
        pds = [p.pd for p in points]
        pfs = [p.pf for p in points]
        assert all(b > a for a, b in zip(pds, pds[1:]))
        assert all(b < a for a, b in zip(pfs, pfs[1:]))
        assert pds[-1] > 1 - 1e-6 and pfs[-1] < 1e-6

    def test_degenerate(self):
        with pytest.raises(DegenerateModelError):
            local_operating_point(GaussianSensingModel(theta=80.0, lam=1.0))

    @given(sensors())
    def test_inverse_roundtrip(self, s):
        back = local_operating_point(gaussian_model_for(s))
        assert back.pd == pytest.approx(s.pd, abs=1e-10)
        assert back.pf == pytest.approx(s.pf, abs=1e-10)
