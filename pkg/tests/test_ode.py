import numpy as np
import pytest

from isorev._ode import HermiteInterpolant, solve_dp45


def test_dp45_exponential_accuracy():
    res = solve_dp45(lambda t, y: y, (0.0, 2.0), np.array([1.0]),
                     rtol=1e-10, atol=1e-10)
    assert abs(res.y[-1, 0] - np.exp(2.0)) < 1e-8
    assert res.stats["naccept"] == len(res.t) - 1


def test_dp45_backward_direction():
    res = solve_dp45(lambda t, y: y, (0.0, -2.0), np.array([1.0]),
                     rtol=1e-10, atol=1e-10)
    assert abs(res.y[-1, 0] - np.exp(-2.0)) < 1e-10


def test_dp45_lands_on_t_eval_in_order():
    want = [0.3, 0.7, 1.4, 1.9]
    res = solve_dp45(lambda t, y: np.array([np.cos(t)]), (0.0, 2.0),
                     np.array([0.0]), rtol=1e-11, atol=1e-11, t_eval=want)
    for w in want:
        k = np.argmin(np.abs(res.t - w))
        assert abs(res.t[k] - w) < 1e-12
        assert abs(res.y[k, 0] - np.sin(w)) < 1e-10


def test_dp45_t_eval_backward():
    want = [-0.5, -1.25]
    res = solve_dp45(lambda t, y: np.array([np.cos(t)]), (0.0, -2.0),
                     np.array([0.0]), rtol=1e-11, atol=1e-11, t_eval=want)
    for w in want:
        assert np.min(np.abs(res.t - w)) < 1e-12


def test_dp45_fixed_step_order_five():
    # with error control disabled, halving h should cut the global error by
    # about 2^5 (local extrapolation of the embedded pair)
    def err_at(h):
        res = solve_dp45(lambda t, y: np.array([y[1], -y[0]]), (0.0, 3.0),
                         np.array([1.0, 0.0]), rtol=1e18, atol=1e18,
                         max_step=h)
        return abs(res.y[-1, 0] - np.cos(3.0))
    r = err_at(0.1) / err_at(0.05)
    assert r > 16  # at least 4th order; DP gives ~32


def test_dp45_stop_predicate_truncates():
    res = solve_dp45(lambda t, y: y, (0.0, 50.0), np.array([1.0]),
                     rtol=1e-8, atol=1e-8, stop=lambda t, y: y[0] > 1e3)
    assert res.truncated
    assert res.t[-1] < 50.0
    assert res.y[-1, 0] > 1e3


def test_dp45_postprocess_hook_applies():
    calls = []

    def post(t, y):
        calls.append(t)
        return y / np.linalg.norm(y)

    res = solve_dp45(lambda t, y: np.array([-y[1], y[0]]), (0.0, 5.0),
                     np.array([1.0, 0.0]), rtol=1e-10, atol=1e-10,
                     postprocess=post)
    assert len(calls) == res.stats["naccept"]
    assert abs(np.linalg.norm(res.y[-1]) - 1.0) < 1e-15


@pytest.mark.parametrize("m", [2, 3])
def test_hermite_reproduces_nodes_exactly(m):
    t = np.linspace(0.0, 2.0, 17)
    f = np.sin(3 * t)
    derivs = [3 * np.cos(3 * t), -9 * np.sin(3 * t), -27 * np.cos(3 * t)][:m]
    itp = HermiteInterpolant(t, f, derivs)
    assert np.abs(itp(t) - f).max() < 1e-13
    assert np.abs(itp(t, 1) - derivs[0]).max() < 1e-10


def test_hermite_value_and_derivative_accuracy():
    t = np.linspace(-1.0, 1.0, 41)
    itp = HermiteInterpolant(t, np.exp(2 * t),
                             [2 * np.exp(2 * t), 4 * np.exp(2 * t)])
    x = np.linspace(-1, 1, 501)
    assert np.abs(itp(x) - np.exp(2 * x)).max() < 1e-9
    assert np.abs(itp(x, 1) - 2 * np.exp(2 * x)).max() < 1e-7
    assert np.abs(itp(x, 2) - 4 * np.exp(2 * x)).max() < 1e-5


def test_hermite_scalar_input():
    t = np.linspace(0, 1, 5)
    itp = HermiteInterpolant(t, t ** 2, [2 * t, np.full_like(t, 2.0)])
    assert isinstance(itp(0.37), float)
    assert abs(itp(0.37) - 0.37 ** 2) < 1e-14
