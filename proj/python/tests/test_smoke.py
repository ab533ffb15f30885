import math

import numpy as np
import pytest

import fraclamb as fl


def test_special_functions():
    assert fl.gamma(0.5) ** 2 == pytest.approx(math.pi, rel=1e-14)
    assert fl.sphere_volume(3) == pytest.approx(4 * math.pi, rel=1e-14)
    with pytest.raises(fl.DomainError):
        fl.gamma(0.0)


def test_classic_solution_and_forward():
    u = fl.solve_classic(fl.exponential(2.0))
    assert u(0.5) == pytest.approx(2 / math.sqrt(math.pi) * math.sqrt(2) * math.exp(1.0), rel=1e-9)
    assert fl.forward_power(u, 2, 0.5) == pytest.approx(math.exp(1.0), rel=1e-8)


def test_vectorized_evaluation():
    u = fl.solve_ndim(fl.exponential(1.0), 2)
    xs = np.linspace(-1, 1, 5)
    np.testing.assert_allclose(u(xs), np.exp(xs) / math.pi, rtol=1e-12)


def test_verify_report():
    report = fl.verify(fl.ProblemSpec.symmetric_ndim(3), fl.parse_function("gauss_tail:lambda=2"), -1, 1, 7)
    assert report.passes(1e-5)
    assert len(report.rows) == 7
    assert '"probe_count": 7' in report.to_json()


def test_quadform_monte_carlo():
    A = fl.PosDefMatrix([[2.0, 1.0], [1.0, 2.0]])
    assert A.determinant == pytest.approx(3.0)
    cfg = fl.QuadratureConfig(mc_samples=100_000)
    u = fl.solve_quadform(fl.exponential(1.0), A, cfg)
    est = fl.forward_quadform_mc(u, A, 0.0, cfg)
    assert abs(est.estimate - 1.0) < 4 * est.std_error


def test_errors_map_to_python_exceptions():
    with pytest.raises(fl.NotPositiveDefiniteError):
        fl.PosDefMatrix([[1.0, 2.0], [2.0, 1.0]])
    with pytest.raises(fl.ParseError):
        fl.parse_function("exp:lambda=-1")
    with pytest.raises(fl.DimensionCapError):
        fl.forward_montecarlo(fl.exponential(1.0), 5, 0.0)
    assert issubclass(fl.DomainError, fl.Error)


def test_cli_in_process():
    code, out, err = fl.run_cli(["solve", "--count", "3"])
    assert code == 0 and out.startswith("x,value\n") and err == ""
    code, _, err = fl.run_cli(["solve", "--window", "1:-1"])
    assert code == 2 and err
