"""Reference RK4 integrator and the Hermite-interpolated IVP evaluator."""

import math

import pytest

from polybvp.exprparse import compile_function
from polybvp.refode import (
    DivergenceError,
    IvpSystem,
    UnsupportedProblemError,
    integrate_rk4,
    reference_solution,
)
from polybvp.solver import BoundaryCondition, BvpProblem


def exp_system():
    return IvpSystem(1, lambda x, u: [u[0]], 0.0, [1.0])


def tan_forced_problem(n=9):
    # y'' - 5y' + 2y = tan(x), y(0) = y'(0) = 0
    return BvpProblem(
        2,
        (2.0, -5.0, 1.0),
        compile_function("tan(x)"),
        (0.0, 1.0),
        [BoundaryCondition("left", 0, 0.0), BoundaryCondition("left", 1, 0.0)],
        n,
    )


def test_constant_trajectory():
    sys0 = IvpSystem(1, lambda x, u: [0.0], 0.0, [3.5])
    traj = integrate_rk4(sys0, 1.0, 10)
    assert len(traj) == 11
    assert all(state[0] == 3.5 for _, state in traj)
    assert traj[0][0] == 0.0 and traj[-1][0] == 1.0


def test_exponential_endpoint():
    traj = integrate_rk4(exp_system(), 1.0, 1000)
    assert abs(traj[-1][1][0] - math.e) <= 1e-11


def test_fourth_order_convergence():
    """Error at x=1 shrinks ~16x per step doubling (ratio in [12, 20])."""
    errors = []
    for steps in (100, 200, 400, 800):
        traj = integrate_rk4(exp_system(), 1.0, steps)
        errors.append(abs(traj[-1][1][0] - math.e))
    for coarse, fine in zip(errors, errors[1:]):
        assert 12.0 <= coarse / fine <= 20.0


def test_step_doubling_self_consistency():
    """The tan-forced system at 1e5 steps moves < 1e-12 when steps double."""
    f = compile_function("tan(x)")
    rhs = lambda x, u: [u[1], f(x) + 5.0 * u[1] - 2.0 * u[0]]
    sys2 = IvpSystem(2, rhs, 0.0, [0.0, 0.0])
    y1 = integrate_rk4(sys2, 1.0, 100000)[-1][1][0]
    y2 = integrate_rk4(sys2, 1.0, 200000)[-1][1][0]
    assert abs(y1 - y2) < 1e-12


def test_divergence_reports_step():
    # quadratic blow-up escapes to inf inside [0, 1]
    sys_blow = IvpSystem(1, lambda x, u: [u[0] * u[0]], 0.0, [5.0])
    with pytest.raises(DivergenceError, match="step"):
        integrate_rk4(sys_blow, 1.0, 100)


def test_validation():
    with pytest.raises(ValueError):
        IvpSystem(0, lambda x, u: [], 0.0, [])
    with pytest.raises(ValueError):
        IvpSystem(2, lambda x, u: [0.0, 0.0], 0.0, [1.0])
    with pytest.raises(ValueError):
        integrate_rk4(exp_system(), 1.0, 0)


def test_reference_imposes_initial_value():
    ref = reference_solution(tan_forced_problem())
    assert abs(ref(0.0)) <= 1e-14


def test_reference_on_pure_quadrature():
    p = BvpProblem(
        2,
        (0.0, 0.0, 1.0),
        lambda x: 2.0,
        (0.0, 1.0),
        [BoundaryCondition("left", 0, 0.0), BoundaryCondition("left", 1, 0.0)],
        5,
    )
    ref = reference_solution(p)
    worst = max(abs(ref(i / 200.0) - (i / 200.0) ** 2) for i in range(201))
    assert worst <= 1e-10


def test_reference_step_halving_agreement():
    ref = reference_solution(tan_forced_problem())
    doubled = reference_solution(tan_forced_problem(), steps=40000)
    assert abs(ref(1.0) - doubled(1.0)) <= 1e-10


def test_hermite_interpolation_error():
    """Between-node error stays <= 1e-9 for y' = y at 1e4 steps."""
    p = BvpProblem(
        1,
        (-1.0, 1.0),
        lambda x: 0.0,
        (0.0, 1.0),
        [BoundaryCondition("left", 0, 1.0)],
        5,
    )
    ref = reference_solution(p, steps=10000)
    worst = 0.0
    for i in range(999):
        x = (i + 0.37) / 1000.0  # deliberately off the RK grid
        worst = max(worst, abs(ref(x) - math.exp(x)))
    assert worst <= 1e-9


def test_right_conditions_rejected():
    p = BvpProblem(
        2,
        (0.0, 0.0, 1.0),
        lambda x: 2.0,
        (0.0, 1.0),
        [BoundaryCondition("left", 0, 0.0), BoundaryCondition("right", 0, 1.0)],
        5,
    )
    with pytest.raises(UnsupportedProblemError):
        reference_solution(p)
