"""Fixed-step RK4 reference integrator for initial value problems.

Provides the comparison solution for problems without a closed form: the
scalar ODE is rewritten in first-order companion form, integrated with
classical Runge-Kutta, and wrapped in a piecewise cubic Hermite evaluator
built from the stored state (the slope of y is just the next companion
component, so no extra derivative evaluations are needed).
"""

import math

from .solver import map_domain


class DivergenceError(RuntimeError):
    pass


class UnsupportedProblemError(ValueError):
    pass


class IvpSystem:
    """dimension-m first-order system u' = f(x, u), u(x0) = y0."""

    __slots__ = ("dimension", "f", "x0", "y0")

    def __init__(self, dimension, f, x0, y0):
        if not isinstance(dimension, int) or dimension < 1:
            raise ValueError("system dimension must be a positive integer")
        y0 = tuple(float(v) for v in y0)
        if len(y0) != dimension:
            raise ValueError(
                "initial state has %d components, expected %d" % (len(y0), dimension)
            )
        self.dimension = dimension
        self.f = f
        self.x0 = float(x0)
        self.y0 = y0


def _axpy(u, c, v):
    return tuple(a + c * b for a, b in zip(u, v))


def integrate_rk4(sys, x_end, steps):
    """Trajectory [(x0, y0), ..., (x_end, y_end)] of classical RK4."""
    if not isinstance(steps, int) or steps < 1:
        raise ValueError("steps must be a positive integer")
    h = (x_end - sys.x0) / steps
    x = sys.x0
    u = sys.y0
    out = [(x, u)]
    f = sys.f
    for i in range(steps):
        k1 = f(x, u)
        k2 = f(x + 0.5 * h, _axpy(u, 0.5 * h, k1))
        k3 = f(x + 0.5 * h, _axpy(u, 0.5 * h, k2))
        k4 = f(x + h, _axpy(u, h, k3))
        u = tuple(
            a + (h / 6.0) * (b + 2.0 * c + 2.0 * d + e)
            for a, b, c, d, e in zip(u, k1, k2, k3, k4)
        )
        x = sys.x0 + (i + 1) * h
        if any(not math.isfinite(v) for v in u):
            raise DivergenceError("non-finite state at step %d (x=%.17g)" % (i + 1, x))
        out.append((x, u))
    return out


def _companion(p):
    """Companion system of the mapped monic problem, on [0,1]."""
    m = p.order
    low = p.coefficients[:m]
    rhs = p.rhs

    def f(z, u):
        du = list(u[1:])
        acc = rhs(z)
        for a, v in zip(low, u):
            if a != 0.0:
                acc -= a * v
        du.append(acc)
        return tuple(du)

    init = [0.0] * m
    for bc in p.bcs:
        init[bc.derivative_order] = bc.value
    return IvpSystem(m, f, 0.0, init)


def reference_solution(p, steps=20000):
    """Dense-output evaluator x -> y(x) for an all-left-BC problem.

    Integrates the companion form over [0,1] in mapped coordinates and
    interpolates with cubic Hermite pieces; the slope at each node comes for
    free from the companion state.
    """
    for bc in p.bcs:
        if bc.side != "left":
            raise UnsupportedProblemError(
                "reference integration needs all conditions at the left endpoint; "
                "got one of order %d on the right" % bc.derivative_order
            )
    mapped = map_domain(p)
    sys = _companion(mapped)
    traj = integrate_rk4(sys, 1.0, steps)
    if mapped.order >= 2:
        slopes = [u[1] for _, u in traj]
    else:
        slopes = [sys.f(z, u)[0] for z, u in traj]
    values = [u[0] for _, u in traj]
    x0, x1 = p.domain
    span = x1 - x0
    n = steps
    step = 1.0 / n

    def evaluator(x):
        z = (x - x0) / span
        if not 0.0 <= z <= 1.0:
            if -1e-12 <= z <= 1.0 + 1e-12:
                z = min(1.0, max(0.0, z))
            else:
                raise ValueError("point %.17g outside the problem domain" % (x,))
        i = min(int(z * n), n - 1)
        t = z / step - i
        y0, y1 = values[i], values[i + 1]
        s0, s1 = slopes[i] * step, slopes[i + 1] * step
        t2 = t * t
        t3 = t2 * t
        return (
            (2.0 * t3 - 3.0 * t2 + 1.0) * y0
            + (t3 - 2.0 * t2 + t) * s0
            + (-2.0 * t3 + 3.0 * t2) * y1
            + (t3 - t2) * s1
        )

    return evaluator
