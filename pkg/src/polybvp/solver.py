"""Linear constant-coefficient two-point BVPs by the operational-matrix scheme.

The highest derivative is expanded in the orthonormal basis, y^(m) = C^T phi,
and lower derivatives follow by repeated integration,

    y^(i)(z) = C^T Theta^(m-i) phi(z) + sum_{j=i}^{m-1} gamma_j z^(j-i)/(j-i)!,

with gamma_j = y^(j)(0).  Matching basis coefficients of the substituted ODE
gives n+1 equations; left boundary conditions pin gammas directly, right ones
contribute one row each through the exact endpoint integrals
Theta^(m-d-1) e0.  The solution polynomial is reconstructed by exact repeated
antidifferentiation of C^T phi (degree n+m), so imposed left conditions hold
to round-off and the endpoint rows are consistent with the returned
polynomial.

solve_paper_second_order keeps the closed-form second-order Dirichlet path
(rank-one correction matrix L absorbing the boundary terms) as an internal
oracle for the general assembly.
"""

import math

from .approx import project
from .basis import gram_schmidt_basis
from .linalg import (
    Matrix,
    SingularMatrixError,
    Vector,
    identity,
    mat_add,
    mat_mul,
    mat_scale,
    mat_vec,
    outer,
    solve_linear,
    transpose,
)
from .opmatrix import build_theta
from .poly import Polynomial, add, compose_linear, differentiate, integrate, scale

_SIDES = ("left", "right")


class IllPosedProblemError(ValueError):
    pass


class BoundaryCondition:
    """A condition y^(d)(endpoint) = value; left is x0, right is x1."""

    __slots__ = ("side", "derivative_order", "value")

    def __init__(self, side, derivative_order, value):
        if side not in _SIDES:
            raise ValueError("boundary side must be 'left' or 'right', got %r" % (side,))
        if not isinstance(derivative_order, int) or derivative_order < 0:
            raise ValueError("derivative order must be a non-negative integer")
        value = float(value)
        if not math.isfinite(value):
            raise ValueError("boundary value must be finite")
        self.side = side
        self.derivative_order = derivative_order
        self.value = value

    def __repr__(self):
        return "BoundaryCondition(%r, %d, %r)" % (
            self.side,
            self.derivative_order,
            self.value,
        )


class BvpProblem:
    """Order-m linear ODE sum_i a_i y^(i) = r on [x0,x1] with m conditions.

    coefficients are ascending in derivative order, a_m != 0; rhs is an
    evaluation callback; truncation is the basis degree n.
    """

    __slots__ = ("order", "coefficients", "rhs", "domain", "bcs", "truncation")

    def __init__(self, order, coefficients, rhs, domain, bcs, truncation):
        if not isinstance(order, int) or order < 1:
            raise ValueError("problem order must be a positive integer")
        coefficients = [float(c) for c in coefficients]
        if len(coefficients) != order + 1:
            raise ValueError(
                "order-%d problem needs %d coefficients, got %d"
                % (order, order + 1, len(coefficients))
            )
        if any(not math.isfinite(c) for c in coefficients):
            raise ValueError("coefficients must be finite")
        if coefficients[-1] == 0.0:
            raise ValueError("leading coefficient must be nonzero")
        x0, x1 = (float(domain[0]), float(domain[1]))
        if not (math.isfinite(x0) and math.isfinite(x1)) or not x0 < x1:
            raise ValueError("domain must be a finite interval with x0 < x1")
        bcs = list(bcs)
        if len(bcs) != order:
            raise ValueError(
                "order-%d problem needs exactly %d boundary conditions, got %d"
                % (order, order, len(bcs))
            )
        seen = set()
        for bc in bcs:
            if bc.derivative_order >= order:
                raise ValueError(
                    "boundary condition on derivative %d exceeds order %d"
                    % (bc.derivative_order, order)
                )
            key = (bc.side, bc.derivative_order)
            if key in seen:
                raise ValueError("duplicate boundary condition %s/%d" % key)
            seen.add(key)
        if not isinstance(truncation, int) or not 1 <= truncation <= 30:
            raise ValueError("truncation degree %r outside supported range 1..30" % (truncation,))
        self.order = order
        self.coefficients = tuple(coefficients)
        self.rhs = rhs
        self.domain = (x0, x1)
        self.bcs = tuple(bcs)
        self.truncation = truncation


class BvpSolution:
    """Solver output: basis coefficients of y^(m), integration constants,
    the solution polynomial in the original variable, and diagnostics."""

    __slots__ = (
        "c",
        "gammas",
        "solution_poly",
        "mapped_poly",
        "residual_max",
        "bc_residual_max",
        "diverged",
    )

    def __init__(self, c, gammas, solution_poly, mapped_poly, residual_max,
                 bc_residual_max, diverged):
        self.c = c
        self.gammas = gammas
        self.solution_poly = solution_poly
        self.mapped_poly = mapped_poly
        self.residual_max = residual_max
        self.bc_residual_max = bc_residual_max
        self.diverged = diverged


def map_domain(p):
    """The equivalent monic problem on [0,1].

    With h = x1-x0 the coefficient of the k-th mapped derivative picks up
    h^-k and order-d boundary values pick up h^d; the whole equation is then
    divided by the leading coefficient.
    """
    x0, x1 = p.domain
    h = x1 - x0
    if (x0, x1) == (0.0, 1.0) and p.coefficients[-1] == 1.0:
        return p
    lead = p.coefficients[-1] * h ** (-p.order)
    coeffs = [p.coefficients[k] * h ** (-k) / lead for k in range(p.order + 1)]
    coeffs[-1] = 1.0
    rhs = p.rhs

    def mapped_rhs(z, _r=rhs, _x0=x0, _h=h, _lead=lead):
        return _r(_x0 + _h * z) / _lead

    bcs = [
        BoundaryCondition(bc.side, bc.derivative_order, bc.value * h**bc.derivative_order)
        for bc in p.bcs
    ]
    return BvpProblem(p.order, coeffs, mapped_rhs, (0.0, 1.0), bcs, p.truncation)


def _gamma_split(p):
    """Left conditions fix gamma_d = value; the rest stay unknowns."""
    fixed = {}
    right = []
    for bc in p.bcs:
        if bc.side == "left":
            fixed[bc.derivative_order] = bc.value
        else:
            right.append(bc)
    right.sort(key=lambda bc: bc.derivative_order)
    free = [j for j in range(p.order) if j not in fixed]
    return fixed, free, right


def _monomial_columns(p, basis):
    """Basis expansion t_j of the gamma_j coefficient polynomial
    sum_{i<=j} a_i z^(j-i)/(j-i)!  (degree j <= m-1)."""
    rows = [basis.projection_row(q) for q in range(p.order)]
    cols = []
    for j in range(p.order):
        col = [0.0] * (basis.n + 1)
        for i in range(j + 1):
            ai = p.coefficients[i]
            if ai == 0.0:
                continue
            f = ai / math.factorial(j - i)
            for k, v in enumerate(rows[j - i]):
                col[k] += f * v
        cols.append(col)
    return cols


def assemble(p, basis, theta):
    """Joint linear system in (C, free gammas) for a monic problem on [0,1].

    Returns (Matrix, Vector).  Row layout: n+1 coefficient-matching rows,
    then one row per right-side boundary condition (ordered by derivative).
    Column layout: C_0..C_n, then the free gammas ascending.
    """
    if p.domain != (0.0, 1.0) or p.coefficients[-1] != 1.0:
        raise ValueError("assemble expects a mapped, monic problem")
    n = basis.n
    m = p.order
    size = n + 1

    tt = transpose(theta.theta)
    mc = None
    power = identity(size)
    for i in range(m, -1, -1):
        ai = p.coefficients[i]
        if ai != 0.0:
            term = mat_scale(power, ai)
            mc = term if mc is None else mat_add(mc, term)
        if i > 0:
            power = mat_mul(tt, power)

    fixed, free, right = _gamma_split(p)
    cols = _monomial_columns(p, basis)
    rho = list(project(p.rhs, basis).coeffs)
    for j, val in fixed.items():
        if val != 0.0:
            for k in range(size):
                rho[k] -= val * cols[j][k]

    dim = size + len(right)
    rows = []
    rhs = []
    for k in range(size):
        row = mc.row(k) + [cols[j][k] for j in free]
        rows.append(row)
        rhs.append(rho[k])

    # endpoint rows: y^(d)(1) = C.Theta^(m-d-1) e0 + sum_{j>=d} gamma_j/(j-d)!
    e0 = Vector([1.0] + [0.0] * n)
    for bc in right:
        d = bc.derivative_order
        w = e0
        for _ in range(m - d - 1):
            w = mat_vec(theta.theta, w)
        row = list(w) + [
            (1.0 / math.factorial(j - d) if j >= d else 0.0) for j in free
        ]
        val = bc.value
        for j, gval in fixed.items():
            if j >= d and gval != 0.0:
                val -= gval / math.factorial(j - d)
        rows.append(row)
        rhs.append(val)

    flat = [v for row in rows for v in row]
    return Matrix(dim, dim, flat), Vector(rhs)


def _reconstruct_mapped(c, gammas, basis, m):
    """Exact m-fold antiderivative of C^T phi plus the gamma polynomial."""
    y = Polynomial([0.0])
    for ck, phi in zip(c, basis.phis):
        if ck:
            y = add(y, scale(phi, ck))
    for _ in range(m):
        y = integrate(y)
    tail = [g / math.factorial(j) for j, g in enumerate(gammas)]
    return add(y, Polynomial(tail if tail else [0.0]))


def _diagnostics(p, solution_poly, grid=201):
    x0, x1 = p.domain
    derivs = [solution_poly]
    for _ in range(p.order):
        derivs.append(differentiate(derivs[-1]))
    res_max = 0.0
    rhs_max = 0.0
    for i in range(grid):
        x = x0 + (x1 - x0) * i / (grid - 1)
        rx = p.rhs(x)
        lhs = sum(a * derivs[k](x) for k, a in enumerate(p.coefficients))
        res = abs(lhs - rx)
        if res > res_max:
            res_max = res
        if abs(rx) > rhs_max:
            rhs_max = abs(rx)
    bc_max = 0.0
    for bc in p.bcs:
        at = x0 if bc.side == "left" else x1
        err = abs(derivs[bc.derivative_order](at) - bc.value)
        if err > bc_max:
            bc_max = err
    return res_max, bc_max, res_max > 1e3 * (1.0 + rhs_max)


def _finish(p, mapped, c, gammas, basis):
    mapped_poly = _reconstruct_mapped(c, gammas, basis, mapped.order)
    x0, x1 = p.domain
    if (x0, x1) == (0.0, 1.0):
        solution_poly = mapped_poly
    else:
        h = x1 - x0
        solution_poly = compose_linear(mapped_poly, 1.0 / h, -x0 / h)
    res_max, bc_max, diverged = _diagnostics(p, solution_poly)
    return BvpSolution(
        Vector(c),
        Vector(gammas),
        solution_poly,
        mapped_poly,
        res_max,
        bc_max,
        diverged,
    )


def solve(p):
    """Solve the problem; see module docstring for the scheme."""
    mapped = map_domain(p)
    n = mapped.truncation
    basis = gram_schmidt_basis(n)
    theta = build_theta(n)
    a, b = assemble(mapped, basis, theta)
    try:
        x = solve_linear(a, b)
    except SingularMatrixError as exc:
        raise IllPosedProblemError(
            "boundary conditions leave the system singular at column %d" % exc.column
        ) from None
    c = list(x)[: n + 1]
    fixed, free, _right = _gamma_split(mapped)
    tail = list(x)[n + 1 :]
    gammas = [0.0] * mapped.order
    for j, val in fixed.items():
        gammas[j] = val
    for j, val in zip(free, tail):
        gammas[j] = val
    return _finish(p, mapped, c, gammas, basis)


def solve_paper_second_order(p):
    """Closed-form path for y'' + a1 y' + a0 y = r, y(0)=alpha, y(1)=beta.

    Solves C^T (I + a1 Theta + a0 Theta^2 - L) = R^T where L is the outer
    product of the endpoint integral Theta^2 phi(1) = Theta e0 with the basis
    coefficients of a0 z + a1, and R absorbs the boundary data:
    R^T phi = r - (beta-alpha)(a0 z + a1) - a0 alpha.
    """
    if p.order != 2:
        raise IllPosedProblemError("closed-form path needs a second-order problem")
    if p.domain != (0.0, 1.0):
        raise IllPosedProblemError("closed-form path needs the domain [0,1]")
    sides = sorted((bc.side, bc.derivative_order) for bc in p.bcs)
    if sides != [("left", 0), ("right", 0)]:
        raise IllPosedProblemError(
            "closed-form path needs Dirichlet conditions at both endpoints"
        )
    mapped = map_domain(p)
    a0, a1 = mapped.coefficients[0], mapped.coefficients[1]
    alpha = next(bc.value for bc in mapped.bcs if bc.side == "left")
    beta = next(bc.value for bc in mapped.bcs if bc.side == "right")
    n = mapped.truncation
    basis = gram_schmidt_basis(n)
    theta = build_theta(n)
    size = n + 1

    t1 = [a1 * u + a0 * v for u, v in zip(basis.projection_row(0), basis.projection_row(1))]
    e0 = Vector([1.0] + [0.0] * n)
    v2 = mat_vec(theta.theta, e0)  # Theta^2 phi(1) under the endpoint identity
    lmat = outer(v2, Vector(t1))

    system = mat_add(
        mat_add(identity(size), mat_scale(theta.theta, a1)),
        mat_add(
            mat_scale(mat_mul(theta.theta, theta.theta), a0),
            mat_scale(lmat, -1.0),
        ),
    )
    rho = list(project(mapped.rhs, basis).coeffs)
    r = [
        rho[k] - (beta - alpha) * t1[k] - (a0 * alpha if k == 0 else 0.0)
        for k in range(size)
    ]
    try:
        c = solve_linear(transpose(system), Vector(r))
    except SingularMatrixError as exc:
        raise IllPosedProblemError(
            "boundary conditions leave the system singular at column %d" % exc.column
        ) from None
    gamma1 = beta - alpha - sum(ck * vk for ck, vk in zip(c, v2))
    return _finish(p, mapped, list(c), [alpha, gamma1], basis)
