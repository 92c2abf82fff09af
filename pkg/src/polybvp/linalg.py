"""Small dense real vectors and matrices, and one linear solver.

Everything in this package runs at desk scale (systems below ~40x40), so
these are deliberately plain: row-major storage, triple-loop products,
Gaussian elimination with partial pivoting.  Values are immutable after
construction.
"""

import math


class LinAlgError(ValueError):
    pass


class SingularMatrixError(LinAlgError):
    def __init__(self, column, message=None):
        self.column = column
        super().__init__(message or "matrix is singular at column %d" % column)


def _check_finite(values, what):
    for v in values:
        if not math.isfinite(v):
            raise LinAlgError("non-finite entry %r in %s" % (v, what))


class Vector:
    __slots__ = ("entries",)

    def __init__(self, entries):
        entries = [float(v) for v in entries]
        if not entries:
            raise LinAlgError("vector needs at least one entry")
        _check_finite(entries, "vector")
        self.entries = tuple(entries)

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def __iter__(self):
        return iter(self.entries)

    def __eq__(self, other):
        return isinstance(other, Vector) and self.entries == other.entries

    def __repr__(self):
        return "Vector(%r)" % (list(self.entries),)


class Matrix:
    """Dense rows x cols matrix, entries row-major."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows, cols, entries):
        entries = [float(v) for v in entries]
        if rows < 1 or cols < 1:
            raise LinAlgError("matrix dimensions must be positive")
        if len(entries) != rows * cols:
            raise LinAlgError(
                "expected %d entries for a %dx%d matrix, got %d"
                % (rows * cols, rows, cols, len(entries))
            )
        _check_finite(entries, "matrix")
        self.rows = rows
        self.cols = cols
        self.entries = tuple(entries)

    @classmethod
    def from_rows(cls, rows):
        rows = [list(r) for r in rows]
        ncols = len(rows[0])
        flat = []
        for r in rows:
            if len(r) != ncols:
                raise LinAlgError("ragged rows in matrix literal")
            flat.extend(r)
        return cls(len(rows), ncols, flat)

    def at(self, i, j):
        return self.entries[i * self.cols + j]

    def row(self, i):
        return list(self.entries[i * self.cols : (i + 1) * self.cols])

    def to_rows(self):
        return [self.row(i) for i in range(self.rows)]

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and (self.rows, self.cols) == (other.rows, other.cols)
            and self.entries == other.entries
        )

    def __repr__(self):
        return "Matrix.from_rows(%r)" % (self.to_rows(),)


def identity(n):
    return Matrix(n, n, [1.0 if i == j else 0.0 for i in range(n) for j in range(n)])


def transpose(a):
    return Matrix(a.cols, a.rows, [a.at(i, j) for j in range(a.cols) for i in range(a.rows)])


def mat_mul(a, b):
    if a.cols != b.rows:
        raise LinAlgError(
            "cannot multiply %dx%d by %dx%d" % (a.rows, a.cols, b.rows, b.cols)
        )
    out = [0.0] * (a.rows * b.cols)
    for i in range(a.rows):
        base = i * a.cols
        for k in range(a.cols):
            aik = a.entries[base + k]
            if aik == 0.0:
                continue
            brow = k * b.cols
            orow = i * b.cols
            for j in range(b.cols):
                out[orow + j] += aik * b.entries[brow + j]
    return Matrix(a.rows, b.cols, out)


def mat_add(a, b):
    if (a.rows, a.cols) != (b.rows, b.cols):
        raise LinAlgError(
            "cannot add %dx%d and %dx%d" % (a.rows, a.cols, b.rows, b.cols)
        )
    return Matrix(a.rows, a.cols, [x + y for x, y in zip(a.entries, b.entries)])


def mat_scale(a, c):
    return Matrix(a.rows, a.cols, [c * x for x in a.entries])


def mat_vec(a, v):
    if a.cols != len(v):
        raise LinAlgError("cannot apply %dx%d to length-%d vector" % (a.rows, a.cols, len(v)))
    return Vector(
        [sum(a.at(i, j) * v[j] for j in range(a.cols)) for i in range(a.rows)]
    )


def outer(u, v):
    return Matrix(len(u), len(v), [x * y for x in u for y in v])


def _lu_factor(a):
    """In-place LU with partial pivoting on a row-list copy of `a`.

    Returns (rows, perm) where rows hold L (below diagonal, unit implied) and
    U (on/above).  A pivot below 1e-13 times the largest initial |entry| is
    treated as structural singularity (an ill-posed assembly), not round-off,
    and reported with the offending column.
    """
    n = a.rows
    m = [a.row(i) for i in range(n)]
    perm = list(range(n))
    threshold = 1e-13 * max(abs(v) for v in a.entries)
    for col in range(n):
        piv = max(range(col, n), key=lambda r: abs(m[r][col]))
        pval = m[piv][col]
        if pval == 0.0 or abs(pval) < threshold:
            raise SingularMatrixError(col)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            perm[col], perm[piv] = perm[piv], perm[col]
        prow = m[col]
        for r in range(col + 1, n):
            f = m[r][col] / pval
            m[r][col] = f
            if f == 0.0:
                continue
            row = m[r]
            for c in range(col + 1, n):
                row[c] -= f * prow[c]
    return m, perm


def _lu_solve(m, perm, b):
    n = len(perm)
    x = [b[p] for p in perm]
    for col in range(n):
        xc = x[col]
        if xc != 0.0:
            for r in range(col + 1, n):
                x[r] -= m[r][col] * xc
    for col in range(n - 1, -1, -1):
        s = x[col]
        row = m[col]
        for c in range(col + 1, n):
            s -= row[c] * x[c]
        x[col] = s / row[col]
    return x


def solve_linear(a, b):
    """Solve a*x = b by Gaussian elimination with partial pivoting.

    The LU solution is polished with two steps of iterative refinement using
    compensated (exactly summed) residuals; for the small, well-conditioned
    systems produced here this brings each solution component to within a few
    ulps, which downstream polynomial reconstruction needs because basis
    coefficients get amplified by large monomial coefficients.
    """
    if a.rows != a.cols:
        raise LinAlgError("solve needs a square matrix, got %dx%d" % (a.rows, a.cols))
    if a.rows != len(b):
        raise LinAlgError(
            "matrix is %dx%d but right-hand side has length %d" % (a.rows, a.cols, len(b))
        )
    n = a.rows
    lu, perm = _lu_factor(a)
    x = _lu_solve(lu, perm, list(b.entries))
    for _ in range(2):
        residual = [
            math.fsum([a.at(i, j) * x[j] for j in range(n)] + [-b[i]])
            for i in range(n)
        ]
        if all(v == 0.0 for v in residual):
            break
        d = _lu_solve(lu, perm, residual)
        x = [xi - di for xi, di in zip(x, d)]
    return Vector(x)
