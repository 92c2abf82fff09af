"""L2 best approximation on [0,1]: quadrature, projection, reconstruction.

The projection coefficients c_k = <f, phi_k> are computed with a
Gauss-Legendre rule whose exactness degree covers the basis; for smooth f
over-integration makes the quadrature error negligible next to truncation.
"""

import math

from .basis import eval_basis
from .linalg import Vector
from .poly import Polynomial, add, scale


class QuadratureError(RuntimeError):
    """Node iteration failed to converge -- indicates a bug, not bad input."""


class EvaluationError(ValueError):
    """A function callback produced a non-finite value."""


class QuadratureRule:
    __slots__ = ("nodes", "weights")

    def __init__(self, nodes, weights):
        self.nodes = tuple(nodes)
        self.weights = tuple(weights)

    def __len__(self):
        return len(self.nodes)


def gauss_legendre_rule(q):
    """q-point Gauss-Legendre rule mapped to [0,1].

    Nodes are found by Newton iteration on P_q starting from the Chebyshev
    angles, to |dx| <= 1e-15 within 100 iterations; exact for polynomials of
    degree up to 2q-1.
    """
    if not isinstance(q, int) or not 1 <= q <= 128:
        raise ValueError("quadrature size %r outside supported range 1..128" % (q,))
    nodes = []
    weights = []
    for i in range(1, q + 1):
        x = math.cos(math.pi * (i - 0.25) / (q + 0.5))
        converged = False
        for _ in range(100):
            # P_q(x) and P_{q-1}(x) by the standard recurrence
            p_prev, p_cur = 1.0, x
            for k in range(1, q):
                p_prev, p_cur = p_cur, ((2 * k + 1) * x * p_cur - k * p_prev) / (k + 1)
            dp = q * (x * p_cur - p_prev) / (x * x - 1.0)
            dx = p_cur / dp
            x -= dx
            if abs(dx) <= 1e-15:
                converged = True
                break
        if not converged:
            raise QuadratureError("node %d of %d did not converge" % (i, q))
        p_prev, p_cur = 1.0, x
        for k in range(1, q):
            p_prev, p_cur = p_cur, ((2 * k + 1) * x * p_cur - k * p_prev) / (k + 1)
        dp = q * (x * p_cur - p_prev) / (x * x - 1.0)
        w = 2.0 / ((1.0 - x * x) * dp * dp)
        nodes.append(0.5 * (x + 1.0))
        weights.append(0.5 * w)
    order = sorted(range(q), key=lambda k: nodes[k])
    return QuadratureRule([nodes[k] for k in order], [weights[k] for k in order])


class ProjectionResult:
    __slots__ = ("coeffs", "l2_error_estimate")

    def __init__(self, coeffs, l2_error_estimate):
        self.coeffs = coeffs
        self.l2_error_estimate = l2_error_estimate


def _eval_checked(f, x):
    v = f(x)
    if not math.isfinite(v):
        raise EvaluationError("function evaluated to %r at x=%.17g" % (v, x))
    return v


def project(f, basis, rule=None):
    """Best-approximation coefficients of f in the basis, by quadrature.

    The rule must integrate degree 2n exactly; the default uses
    max(n+1, 32) points.  The l2_error_estimate is the Parseval remainder
    sqrt(|f|^2 - sum c_k^2), clamped at zero.
    """
    if rule is None:
        rule = gauss_legendre_rule(max(basis.n + 1, 32))
    if 2 * len(rule.nodes) - 1 < 2 * basis.n:
        raise ValueError(
            "rule with %d nodes is not exact to degree %d"
            % (len(rule.nodes), 2 * basis.n)
        )
    coeffs = [0.0] * (basis.n + 1)
    norm_sq = 0.0
    for x, w in zip(rule.nodes, rule.weights):
        fx = _eval_checked(f, x)
        phix = eval_basis(basis, x)
        wf = w * fx
        norm_sq += wf * fx
        for k in range(basis.n + 1):
            coeffs[k] += wf * phix[k]
    remainder = norm_sq - sum(c * c for c in coeffs)
    return ProjectionResult(Vector(coeffs), math.sqrt(max(0.0, remainder)))


def reconstruct(coeffs, basis):
    """sum_k c_k phi_k as a single monomial-form Polynomial."""
    if len(coeffs) != basis.n + 1:
        raise ValueError(
            "got %d coefficients for a basis of size %d" % (len(coeffs), basis.n + 1)
        )
    out = Polynomial([0.0])
    for c, phi in zip(coeffs, basis.phis):
        if c:
            out = add(out, scale(phi, c))
    return out


def max_abs_error(f, g, grid_points):
    """max |f - g| over a uniform grid on [0,1], endpoints included."""
    if grid_points < 2:
        raise ValueError("grid needs at least 2 points, got %d" % (grid_points,))
    worst = 0.0
    for i in range(grid_points):
        x = i / (grid_points - 1)
        d = abs(_eval_checked(f, x) - _eval_checked(g, x))
        if d > worst:
            worst = d
    return worst
