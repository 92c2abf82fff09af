"""Orthonormal polynomial basis of L2[0,1].

Two independent constructions of the same set phi_0..phi_n: Gram-Schmidt
over the Bernoulli polynomials, and the normalized shifted-Legendre
three-term recurrence.  Both are carried in exact rational arithmetic and
share one skeleton representation,

    phi_k = sqrt(scale_sq[k]) * (integer coefficient vector V_k),

so orthonormality, span and conversion identities can be verified with zero
rounding, and the float views of the two routes agree bit for bit.  Floats
are produced by a single correctly-rounded square root per coefficient.
"""

from fractions import Fraction
from functools import lru_cache
import math

from .linalg import Matrix, Vector
from .poly import Polynomial, bernoulli_polynomial

MAX_DEGREE = 30


class BasisConstructionError(ValueError):
    pass


def inner_product(f, g):
    """<f,g> on L2[0,1] via the term rule: <x^i, x^j> = 1/(i+j+1).

    Exact (a Fraction) when both polynomials have exact coefficients.
    """
    total = 0
    for i, a in enumerate(f.coeffs):
        if a == 0:
            continue
        for j, b in enumerate(g.coeffs):
            if b == 0:
                continue
            term = a * b
            if isinstance(term, (int, Fraction)):
                total = total + Fraction(term, i + j + 1)
            else:
                total = total + term / (i + j + 1)
    return total


def _ip_vec(u, v):
    # term-rule inner product of two exact coefficient lists
    total = Fraction(0)
    for i, a in enumerate(u):
        if a == 0:
            continue
        for j, b in enumerate(v):
            if b == 0:
                continue
            total += Fraction(a * b, i + j + 1)
    return total


def _radical_float(c, s):
    """Correctly rounded float of c*sqrt(s) for exact rational c and s >= 0."""
    if c == 0:
        return 0.0
    r = math.sqrt(float(Fraction(c) * Fraction(c) * Fraction(s)))
    return r if c > 0 else -r


class BasisVectorAtPoint:
    """phi_0(x)..phi_n(x) stacked as a vector."""

    __slots__ = ("values",)

    def __init__(self, values):
        self.values = values if isinstance(values, Vector) else Vector(values)

    def __len__(self):
        return len(self.values)

    def __getitem__(self, k):
        return self.values[k]

    def __iter__(self):
        return iter(self.values)

    def __repr__(self):
        return "BasisVectorAtPoint(%r)" % (list(self.values),)


class OrthonormalBasis:
    """The orthonormal polynomials phi_0..phi_n with conversion data.

    Float-facing fields:
      phis           list of Polynomial (monomial form, float coefficients)
      mono_to_basis  Matrix T with x^p = sum_k T[p][k] phi_k, p = 0..n
      basis_to_mono  Matrix of phi monomial coefficients (inverse of T)

    Exact skeleton (what the tests lean on):
      integer_coeffs[k], scale_sq[k]  with  phi_k = sqrt(scale_sq[k]) * V_k,
      exact_mono_rows[p][k]           rationals w with T[p][k] = w*sqrt(scale_sq[k])
    """

    __slots__ = (
        "n",
        "phis",
        "mono_to_basis",
        "basis_to_mono",
        "integer_coeffs",
        "scale_sq",
        "exact_mono_rows",
    )

    def __init__(self, ivecs, scales):
        n = len(ivecs) - 1
        self.n = n
        self.integer_coeffs = tuple(tuple(v) for v in ivecs)
        self.scale_sq = tuple(Fraction(s) for s in scales)
        self.phis = [
            Polynomial([_radical_float(c, s) for c in vec])
            for vec, s in zip(self.integer_coeffs, self.scale_sq)
        ]
        self.basis_to_mono = Matrix(
            n + 1,
            n + 1,
            [
                _radical_float(vec[j], s) if j < len(vec) else 0.0
                for vec, s in zip(self.integer_coeffs, self.scale_sq)
                for j in range(n + 1)
            ],
        )
        self.exact_mono_rows = tuple(
            tuple(self._triangular_row(p)) for p in range(n + 1)
        )
        self.mono_to_basis = Matrix(
            n + 1,
            n + 1,
            [
                _radical_float(w, s)
                for row in self.exact_mono_rows
                for w, s in zip(row, self.scale_sq)
            ],
        )

    def _triangular_row(self, p):
        # Solve x^p = sum_k T[p][k] phi_k by exact back substitution against
        # the phi coefficient matrix.  With T[p][k] = u_k / scale_sq[k] *
        # sqrt(scale_sq[k]) the radicals square away and the system
        # sum_k u_k V_k[j] = delta_pj is purely rational.
        n = self.n
        u = [Fraction(0)] * (n + 1)
        for j in range(n, -1, -1):
            vjj = self.integer_coeffs[j][j]
            if vjj == 0:
                raise BasisConstructionError(
                    "degenerate basis polynomial at index %d" % j
                )
            s = Fraction(1 if j == p else 0)
            for k in range(j + 1, n + 1):
                vk = self.integer_coeffs[k]
                if u[k]:
                    s -= u[k] * vk[j]
            u[j] = s / vjj
        return [u[k] / self.scale_sq[k] for k in range(n + 1)]

    def projection_row_exact(self, p):
        """Rationals w_k with <x^p, phi_k> = w_k * sqrt(scale_sq[k]).

        For p <= n these coincide with the triangular-solve rows of
        mono_to_basis; beyond n they are honest L2 projections (x^p is no
        longer in the span).
        """
        if p <= self.n:
            return list(self.exact_mono_rows[p])
        return [
            sum((Fraction(c, p + j + 1) for j, c in enumerate(vec)), Fraction(0))
            for vec in self.integer_coeffs
        ]

    def projection_row(self, p):
        return [
            _radical_float(w, s)
            for w, s in zip(self.projection_row_exact(p), self.scale_sq)
        ]


def _check_degree(n):
    if not isinstance(n, int) or not 0 <= n <= MAX_DEGREE:
        raise ValueError("basis degree %r outside supported range 0..%d" % (n, MAX_DEGREE))


def _normalize_residual(r, k):
    """Split an exact residual vector into sqrt-scale and primitive V."""
    q = _ip_vec(r, r)
    if q == 0:
        raise BasisConstructionError(
            "polynomial at index %d is dependent on its predecessors" % k
        )
    denom_lcm = 1
    for c in r:
        denom_lcm = denom_lcm * c.denominator // math.gcd(denom_lcm, c.denominator)
    ints = [int(c * denom_lcm) for c in r]
    g = 0
    for c in ints:
        g = math.gcd(g, abs(c))
    vec = [c // g for c in ints]
    factor = Fraction(g, denom_lcm)
    if vec[-1] < 0:  # positive leading coefficient fixes the sign
        vec = [-c for c in vec]
        factor = -factor
    return vec, factor * factor / q


@lru_cache(maxsize=None)
def gram_schmidt_basis(n):
    """Orthonormalize the Bernoulli polynomials B_0..B_n on [0,1].

    Modified Gram-Schmidt with one re-orthogonalization pass, in exact
    rational arithmetic; signs fixed by positive leading coefficients.
    """
    _check_degree(n)
    vecs = []
    scales = []
    for k in range(n + 1):
        r = [Fraction(c) for c in bernoulli_polynomial(k).coeffs]
        for second_pass in (False, True):
            for j in range(k):
                c = _ip_vec(r, [Fraction(v) for v in vecs[j]])
                if second_pass and c:
                    leak = abs(_radical_float(c, scales[j]))
                    if leak > 1e-8:
                        raise BasisConstructionError(
                            "orthogonality loss %.3e at index %d" % (leak, k)
                        )
                if c:
                    cs = c * scales[j]
                    r = [a - cs * v for a, v in zip(r, vecs[j] + (0,) * (len(r) - len(vecs[j])))]
        vec, ssq = _normalize_residual(r, k)
        vecs.append(tuple(vec))
        scales.append(ssq)
    return OrthonormalBasis(vecs, scales)


@lru_cache(maxsize=None)
def legendre_basis(n):
    """Same basis via the shifted Legendre recurrence, scaled by sqrt(2k+1)."""
    _check_degree(n)
    vecs = [(1,)]
    if n >= 1:
        vecs.append((-1, 2))
    for k in range(1, n):
        prev, cur = vecs[k - 1], vecs[k]
        # (k+1) P_{k+1} = (2k+1)(2x-1) P_k - k P_{k-1}
        nxt = [Fraction(0)] * (k + 2)
        for j, c in enumerate(cur):
            nxt[j + 1] += Fraction(2 * (2 * k + 1) * c, k + 1)
            nxt[j] -= Fraction((2 * k + 1) * c, k + 1)
        for j, c in enumerate(prev):
            nxt[j] -= Fraction(k * c, k + 1)
        assert all(c.denominator == 1 for c in nxt)
        vecs.append(tuple(int(c) for c in nxt))
    return OrthonormalBasis(list(vecs), [Fraction(2 * k + 1) for k in range(n + 1)])


def eval_basis(basis, x):
    """phi(x) by the stable three-term recurrence (not monomial Horner)."""
    n = basis.n
    vals = [0.0] * (n + 1)
    p_prev = 1.0
    vals[0] = 1.0
    if n == 0:
        return BasisVectorAtPoint(vals)
    t = 2.0 * x - 1.0
    p_cur = t
    vals[1] = math.sqrt(3.0) * p_cur
    for k in range(1, n):
        p_nxt = ((2 * k + 1) * t * p_cur - k * p_prev) / (k + 1)
        p_prev, p_cur = p_cur, p_nxt
        vals[k + 1] = math.sqrt(2 * k + 3) * p_cur
    return BasisVectorAtPoint(vals)


def monomial_conversion(basis):
    """The matrix T with x^p = sum_k T[p][k] phi_k for p = 0..n."""
    return basis.mono_to_basis
