import math

import pytest

import adhesion_drag as ad
from adhesion_drag import PowerLaw, ValidationError, preset, quadratic_lambda, stokes_lambda
from adhesion_drag.scenarios import AIR, PRESETS, TABLE_TENNIS_BALL, WATER_20C, MediumSpec, SphereBody


class TestStokes:
    def test_water_ball(self):
        lam = stokes_lambda(1.005e-3, 0.02)
        assert lam == pytest.approx(3.78876e-4, rel=1e-5)
        assert round(lam, 6) == 0.000379
        assert math.floor(lam * 1e6) / 1e6 == 0.000378

    def test_identity(self):
        assert stokes_lambda(1 / (6 * math.pi), 1.0) == pytest.approx(1.0, rel=1e-15)

    def test_air_viscosity(self):
        # 6 pi 1.81e-5 0.02, exact arithmetic
        assert stokes_lambda(1.81e-5, 0.02) == pytest.approx(6.82353924359703e-6, rel=1e-12)

    @pytest.mark.parametrize("eta, r", [(0.0, 0.02), (-1e-3, 0.02), (1e-3, 0.0), (1e-3, -1.0), (math.nan, 1.0)])
    def test_rejects_nonpositive(self, eta, r):
        with pytest.raises(ValidationError):
            stokes_lambda(eta, r)


class TestQuadratic:
    @pytest.mark.parametrize("r, expected", [(0.02, 0.000348), (1.0, 0.87), (0.04, 0.001392)])
    def test_values(self, r, expected):
        assert quadratic_lambda(r) == pytest.approx(expected, rel=1e-12)

    @pytest.mark.parametrize("r", [0.0, -0.02, math.inf])
    def test_rejects_bad_radius(self, r):
        with pytest.raises(ValidationError):
            quadratic_lambda(r)


class TestPresets:
    def test_names(self):
        assert set(PRESETS) == {"table_tennis_water", "table_tennis_air"}

    def test_water(self):
        s = preset("table_tennis_water", 1.0)
        assert s.m0 == 0.0027 and s.v0 == 1.0
        assert s.drag == PowerLaw(6 * math.pi * 1.005e-3 * 0.02, 0.0)
        assert s.drag.lam / s.m0 == pytest.approx(0.1403, abs=0.001)
        assert s.label == "table_tennis_water"

    def test_air(self):
        s = preset("table_tennis_air", 10.0)
        assert s.drag == PowerLaw(0.87 * 0.02**2, 1.0)
        assert s.drag.lam / s.m0 == pytest.approx(0.1289, abs=0.001)

    def test_water_position_law_coefficients(self):
        # m(x) = 1 / (1/m0 - lam x / (m0^2 v0)) for Stokes drag
        s = preset("table_tennis_water", 1.0)
        assert 1 / s.m0 == pytest.approx(370.37, abs=0.01)
        assert s.drag.lam / s.m0**2 == pytest.approx(51.97, abs=0.01)
        assert s.drag.lam / s.m0 == pytest.approx(0.14, abs=0.001)

    def test_unknown(self):
        with pytest.raises(ValidationError, match="unknown preset"):
            preset("ping_pong_honey", 1.0)

    def test_negative_speed(self):
        with pytest.raises(ValidationError):
            preset("table_tennis_air", -1.0)

    def test_resting_air_ball_keeps_its_mass(self):
        s = preset("table_tennis_air", 0.0)
        assert s.drag.phi(0.0) == 0.0
        assert ad.mass_at_time_closed(s, 100.0) == s.m0
        series = ad.integrate_trajectory(ad.TrajectoryRequest(s, t_end=5.0, sample_count=3))
        assert [st.m for st in series.states] == [s.m0] * 3

    @pytest.mark.parametrize("name", sorted(PRESETS))
    @pytest.mark.parametrize("v0", [0.0, 0.5, 10.0, 300.0])
    def test_presets_are_valid_scenarios(self, name, v0):
        s = preset(name, v0)
        assert s.momentum == pytest.approx(s.m0 * v0)
        assert ad.Scenario(s.m0, s.v0, s.drag) == ad.Scenario(s.m0, s.v0, s.drag)


class TestBodiesAndMedia:
    def test_ball(self):
        assert TABLE_TENNIS_BALL == SphereBody(0.02, 0.0027)

    @pytest.mark.parametrize("r, m", [(0.0, 1.0), (1.0, 0.0), (-1.0, 1.0), (math.nan, 1.0)])
    def test_body_validation(self, r, m):
        with pytest.raises(ValidationError):
            SphereBody(r, m)

    def test_media_laws(self):
        assert WATER_20C.drag_law(TABLE_TENNIS_BALL).alpha == 0.0
        assert AIR.drag_law(TABLE_TENNIS_BALL).alpha == 1.0
        honey = MediumSpec("honey", viscosity=10.0)
        assert honey.drag_law(SphereBody(0.01, 1.0)).lam == pytest.approx(6 * math.pi * 0.1)

    def test_medium_validation(self):
        with pytest.raises(ValidationError):
            MediumSpec("vacuum", viscosity=0.0)
