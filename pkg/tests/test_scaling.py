import pytest

from py_ensembles.configuration import DiscreteEnsembleSpec
from py_ensembles.exceptions import ParameterError
from py_ensembles.scaling import dl_scaling_residuals, ensemble_scaling, scaling


class TestScaling:
    @pytest.mark.parametrize(
        ("regime", "params", "expected"),
        [
            ("DH-Airy", {"rho": 2.0}, (2.0, 2.0 ** (1 / 3), 2.0 ** (1 / 6))),
            ("DH-Airy", {"rho": -2.0}, (2.0, 2.0 ** (1 / 3), 2.0 ** (1 / 6))),
            ("ASEP-TW", {"q": 0.0, "t": 4.0, "x": 0.0}, (1.0, 2.0 ** (-2 / 3), 1.0)),
            ("ASEP-TW", {"q": 0.5, "t": 8.0, "x": 0.0}, (1.0, 2.0 ** (-2 / 3), 1.0)),
            ("ASEP-KPZ", {"t_hat": 4.0, "x_hat": 0.0}, (1.0, 2.0 ** (-2 / 3), 1.0)),
        ],
    )
    def test_closed_forms(self, regime, params, expected):
        """
        Test the scaling constants of the Hermite edge and the ASEP regimes
        """
        result = scaling(regime, **params)
        assert result.regime == regime
        assert (result.sigma, result.tau, result.c) == pytest.approx(expected, rel=1e-14)

    @pytest.mark.parametrize(("rho", "beta", "sign"), [(9.0, 1.0, "+"), (1.0, 4.0, "-"), (400.0, 100.0, "+")])
    def test_laguerre_edge_equations(self, rho, beta, sign):
        """
        Test that the Laguerre edge constants solve their defining equations
        """
        first, second = dl_scaling_residuals(rho, beta, sign)
        assert abs(first) < 1e-12
        assert abs(second) < 1e-12

    def test_laguerre_edge(self):
        """
        Test the Laguerre edge sigma = (rho - beta)^2 / (4 rho)
        """
        result = scaling("DL-Airy", rho=9.0, beta=1.0)
        assert result.sigma == pytest.approx(64.0 / 36.0)
        assert result.tau == pytest.approx(80.0 ** (2 / 3) / (16 ** (1 / 3) * 9.0))

    def test_six_vertex(self):
        """
        Test that both spin choices give positive constants inside the liquid zone
        """
        first = scaling("6v-KPZ", s_mode="q^-1/2", v=0.5, mu=1.0, nu=1.0)
        second = scaling("6v-KPZ", s_mode="-q^1/2", v=0.5, mu=1.0, nu=1.0)
        assert first.sigma > 0 and first.tau > 0
        assert second.sigma > 0 and second.tau > 0
        assert first.c == second.c == 1.0

    @pytest.mark.parametrize(
        ("regime", "params"),
        [
            # Unknown regime
            ("GOE", {}),
            # Missing parameter
            ("ASEP-TW", {"q": 0.5, "t": 1.0}),
            # No Hermite edge at rho = 0
            ("DH-Airy", {"rho": 0.0}),
            # DL+ needs rho > beta
            ("DL-Airy", {"rho": 1.0, "beta": 2.0, "sign": "+"}),
            # Outside the rarefaction fan
            ("ASEP-TW", {"q": 0.5, "t": 2.0, "x": 1.0}),
            # Outside the liquid zone
            ("6v-KPZ", {"s_mode": "q^-1/2", "v": 0.5, "mu": 0.25, "nu": 1.0}),
        ],
    )
    def test_invalid_regimes(self, regime, params):
        """
        Test that regime conditions are enforced
        """
        with pytest.raises(ParameterError):
            scaling(regime, **params)

    def test_ensemble_scaling(self):
        """
        Test that the ensemble edges follow their closed forms and their sign conditions
        """
        assert ensemble_scaling(DiscreteEnsembleSpec.dh(2.0)) == scaling("DH-Airy", rho=2.0)
        minus = DiscreteEnsembleSpec.dl(1.0, 4.0, "-")
        assert ensemble_scaling(minus) == scaling("DL-Airy", rho=1.0, beta=4.0, sign="-")
        with pytest.raises(ParameterError):
            ensemble_scaling(DiscreteEnsembleSpec.dh(2.0, "-"))
        with pytest.raises(ParameterError):
            ensemble_scaling(DiscreteEnsembleSpec.dj(0.0, 1.0, 1.0))
