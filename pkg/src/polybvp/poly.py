"""Dense univariate polynomial arithmetic plus Bernoulli generators.

Coefficients are stored ascending (coeffs[k] multiplies x**k) and may be
ints, Fractions or floats.  The arithmetic is plain coefficient-level
arithmetic in whatever number type you feed it, so exact inputs stay exact;
that property is load-bearing for the orthonormal basis construction.
"""

from fractions import Fraction
from functools import lru_cache
import math

# Bernoulli generation is capped where the alternating sums stay
# double-precision safe once converted; nothing downstream needs more.
MAX_BERNOULLI = 30


class Polynomial:
    """A univariate polynomial, lowest-order coefficient first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        coeffs = list(coeffs)
        if not coeffs:
            raise ValueError("polynomial needs at least one coefficient")
        for c in coeffs:
            if isinstance(c, float) and not math.isfinite(c):
                raise ValueError("non-finite coefficient %r" % c)
        # drop exactly-zero leading terms; keep one coefficient for the zero poly
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs.pop()
        self.coeffs = tuple(coeffs)

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def __call__(self, x):
        return eval_poly(self, x)

    def __eq__(self, other):
        return isinstance(other, Polynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return "Polynomial(%r)" % (list(self.coeffs),)


def eval_poly(p, x):
    """Evaluate p at x by Horner's scheme."""
    acc = p.coeffs[-1]
    for c in reversed(p.coeffs[:-1]):
        acc = acc * x + c
    return acc


def add(p, q):
    n = max(len(p.coeffs), len(q.coeffs))
    out = []
    for k in range(n):
        a = p.coeffs[k] if k < len(p.coeffs) else 0
        b = q.coeffs[k] if k < len(q.coeffs) else 0
        out.append(a + b)
    return Polynomial(out)


def scale(p, c):
    return Polynomial([c * a for a in p.coeffs])


def multiply(p, q):
    out = [0] * (len(p.coeffs) + len(q.coeffs) - 1)
    for i, a in enumerate(p.coeffs):
        if a == 0:
            continue
        for j, b in enumerate(q.coeffs):
            out[i + j] += a * b
    return Polynomial(out)


def differentiate(p):
    if len(p.coeffs) == 1:
        return Polynomial([0 * p.coeffs[0]])
    return Polynomial([k * c for k, c in enumerate(p.coeffs)][1:])


def _div_exact(c, k):
    # keep exact coefficient types exact; floats just divide
    if isinstance(c, (int, Fraction)):
        return Fraction(c, k)
    return c / k


def integrate(p):
    """Antiderivative with zero constant term."""
    if len(p.coeffs) == 1 and p.coeffs[0] == 0:
        return Polynomial([p.coeffs[0]])
    out = [0]
    for k, c in enumerate(p.coeffs):
        out.append(_div_exact(c, k + 1))
    return Polynomial(out)


def as_float(p):
    return Polynomial([float(c) for c in p.coeffs])


def compose_linear(p, a, b):
    """The polynomial q(x) = p(a*x + b)."""
    inner = Polynomial([b, a])
    acc = Polynomial([p.coeffs[-1]])
    for c in reversed(p.coeffs[:-1]):
        acc = add(multiply(acc, inner), Polynomial([c]))
    return acc


@lru_cache(maxsize=None)
def _bernoulli_exact(n):
    # Alternating-sum (Kronecker style) formula.  The inner power sum has to
    # start at k = 0 (with 0**0 == 1): starting it at 1 shifts the whole thing
    # to B_n(1) and flips the sign of B_1.
    total = Fraction(0)
    for j in range(1, n + 2):
        inner = sum(k**n for k in range(j))
        total += Fraction((-1) ** j * math.comb(n + 1, j), j) * inner
    return -total


def _check_bernoulli_range(n):
    if not isinstance(n, int) or not 0 <= n <= MAX_BERNOULLI:
        raise ValueError(
            "Bernoulli index %r outside supported range 0..%d" % (n, MAX_BERNOULLI)
        )


def bernoulli_number(n):
    """The n-th Bernoulli number (B_1 = -1/2 convention), as a float."""
    _check_bernoulli_range(n)
    return float(_bernoulli_exact(n))


@lru_cache(maxsize=None)
def _bernoulli_polynomial_exact(n):
    # B_n(x) = sum_j C(n,j) * b_j * x^(n-j), assembled ascending
    coeffs = [math.comb(n, n - k) * _bernoulli_exact(n - k) for k in range(n + 1)]
    return Polynomial(coeffs)


def bernoulli_polynomial(n):
    """The degree-n Bernoulli polynomial with exact Fraction coefficients."""
    _check_bernoulli_range(n)
    return _bernoulli_polynomial_exact(n)
