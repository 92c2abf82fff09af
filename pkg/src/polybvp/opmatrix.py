"""Operational matrix of integration for the orthonormal basis.

Theta satisfies the defining identity  integral_0^zeta phi(eta) d eta =
Theta phi(zeta)  row by row, except that the last row drops the phi_{n+1}
spill-over term (the matrix is square by construction); that truncation is
part of the method and shows up in the solver's residual diagnostic, not
here.  Entries come from the closed form, no quadrature.
"""

import math

from .linalg import Matrix, identity, mat_mul


class OperationalMatrix:
    __slots__ = ("n", "theta")

    def __init__(self, n, theta):
        self.n = n
        self.theta = theta

    def __repr__(self):
        return "OperationalMatrix(n=%d)" % self.n


def build_theta(n):
    """The (n+1)x(n+1) integration matrix for basis degree n."""
    if not isinstance(n, int) or not 1 <= n <= 30:
        raise ValueError("operational matrix degree %r outside supported range 1..30" % (n,))
    size = n + 1
    e = [0.0] * (size * size)
    e[0] = 0.5
    e[1] = 1.0 / (2.0 * math.sqrt(3.0))
    for i in range(1, n):
        e[i * size + i - 1] = -1.0 / (2.0 * math.sqrt((2 * i - 1) * (2 * i + 1)))
        e[i * size + i + 1] = 1.0 / (2.0 * math.sqrt((2 * i + 1) * (2 * i + 3)))
    e[n * size + n - 1] = -1.0 / (2.0 * math.sqrt((2 * n - 1) * (2 * n + 1)))
    return OperationalMatrix(n, Matrix(size, size, e))


def theta_power(m, k):
    """Theta^k by repeated multiplication; Theta^0 is the identity."""
    if not isinstance(k, int) or k < 0:
        raise ValueError("power must be a non-negative integer, got %r" % (k,))
    acc = identity(m.n + 1)
    for _ in range(k):
        acc = mat_mul(acc, m.theta)
    return acc
