"""Exact scalar and linear-algebra kernel.

Two scalar backends run through the whole library:

* exact mode -- real numbers are :class:`fractions.Fraction`, complex numbers
  are :class:`QC` (a pair of Fractions).  All combinatorial, homological and
  wedge-algebra computations are bit-exact in this mode.
* float mode -- plain ``float`` / ``complex``.  Used for the transcendental
  operations (geodesic flow, arctanh distances, finite differences).

The linear algebra below is plain fraction-exact Gaussian elimination with
deterministic pivoting (first usable row, columns left to right), so repeated
runs produce identical bases.  Sizes in this package stay well under 100x100,
where Fraction arithmetic is instantaneous; we deliberately avoid pulling in a
CAS for this.
"""

from __future__ import annotations

from fractions import Fraction


class QC:
    """Complex number with exact rational real/imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        other = _coerce(other)
        return QC(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        return QC(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return _coerce(other).__sub__(self)

    def __mul__(self, other):
        other = _coerce(other)
        return QC(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        d = other.re * other.re + other.im * other.im
        if d == 0:
            raise ZeroDivisionError("division by zero QC")
        return QC(
            (self.re * other.re + self.im * other.im) / d,
            (self.im * other.re - self.re * other.im) / d,
        )

    def __rtruediv__(self, other):
        return _coerce(other).__truediv__(self)

    def __neg__(self):
        return QC(-self.re, -self.im)

    def __pos__(self):
        return self

    # -- structure --------------------------------------------------------
    def conjugate(self):
        return QC(self.re, -self.im)

    def abs2(self):
        """|z|^2, exact."""
        return self.re * self.re + self.im * self.im

    def is_zero(self):
        return self.re == 0 and self.im == 0

    def __eq__(self, other):
        if isinstance(other, (QC, int, Fraction)):
            other = _coerce(other)
            return self.re == other.re and self.im == other.im
        return NotImplemented

    def __hash__(self):
        return hash((self.re, self.im))

    def __repr__(self):
        return f"QC({self.re!s}, {self.im!s})"

    def __complex__(self):
        return complex(float(self.re), float(self.im))


def _coerce(x):
    if isinstance(x, QC):
        return x
    if isinstance(x, (int, Fraction)):
        return QC(x, 0)
    raise TypeError(f"cannot coerce {type(x).__name__} to QC")


QC_ZERO = QC(0, 0)
QC_ONE = QC(1, 0)
QC_I = QC(0, 1)


def qc(re, im=0):
    return QC(re, im)


# ---------------------------------------------------------------------------
# generic field helpers: these work for Fraction and QC alike
# ---------------------------------------------------------------------------

def is_zero(x):
    if isinstance(x, QC):
        return x.is_zero()
    return x == 0


def conj(x):
    if isinstance(x, QC):
        return x.conjugate()
    if isinstance(x, complex):
        return x.conjugate()
    return x


# ---------------------------------------------------------------------------
# exact matrices: lists of lists over Fraction or QC
# ---------------------------------------------------------------------------

def mat_zeros(rows, cols, zero=Fraction(0)):
    return [[zero for _ in range(cols)] for _ in range(rows)]


def mat_identity(n, one=Fraction(1), zero=Fraction(0)):
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def mat_mul(a, b):
    rows, inner, cols = len(a), len(b), len(b[0]) if b else 0
    out = []
    for i in range(rows):
        row = []
        ai = a[i]
        for j in range(cols):
            s = ai[0] * b[0][j]
            for k in range(1, inner):
                s = s + ai[k] * b[k][j]
            row.append(s)
        out.append(row)
    return out


def mat_vec(a, v):
    return [sum_prod(row, v) for row in a]


def sum_prod(row, v):
    s = row[0] * v[0]
    for k in range(1, len(v)):
        s = s + row[k] * v[k]
    return s


def mat_transpose(a):
    return [list(col) for col in zip(*a)]


def rref(matrix):
    """Reduced row echelon form.

    Returns ``(R, pivots)`` where pivots is the list of pivot column indices.
    The input is not modified.  Works over any exact field (Fraction, QC).
    """
    m = [row[:] for row in matrix]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        pr = None
        for i in range(r, rows):
            if not is_zero(m[i][c]):
                pr = i
                break
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = m[r][c]
        m[r] = [x / inv for x in m[r]]
        for i in range(rows):
            if i != r and not is_zero(m[i][c]):
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def rank(matrix):
    if not matrix or not matrix[0]:
        return 0
    return len(rref(matrix)[1])


def nullspace(matrix, zero=Fraction(0), one=Fraction(1), ncols=None):
    """Basis of the right kernel, one vector per free column (ascending)."""
    if not matrix:
        if not ncols:
            return []
        return [[one if j == k else zero for j in range(ncols)]
                for k in range(ncols)]
    cols = len(matrix[0])
    r, pivots = rref(matrix)
    pivset = set(pivots)
    basis = []
    for free in range(cols):
        if free in pivset:
            continue
        v = [zero] * cols
        v[free] = one
        for i, pc in enumerate(pivots):
            v[pc] = -r[i][free]
        basis.append(v)
    return basis


def solve(matrix, rhs):
    """One solution of ``matrix @ x = rhs`` or ``None`` if inconsistent.

    ``rhs`` may live over a bigger field than the matrix (e.g. QC right-hand
    side over a Fraction matrix).  Free variables are set to zero, so the
    solution is deterministic.
    """
    rows = len(matrix)
    cols = len(matrix[0]) if rows else 0
    aug = [list(matrix[i]) + [rhs[i]] for i in range(rows)]
    r = 0
    pivots = []
    for c in range(cols):
        pr = None
        for i in range(r, rows):
            if not is_zero(aug[i][c]):
                pr = i
                break
        if pr is None:
            continue
        aug[r], aug[pr] = aug[pr], aug[r]
        inv = aug[r][c]
        aug[r] = [x / inv for x in aug[r]]
        for i in range(rows):
            if i != r and not is_zero(aug[i][c]):
                f = aug[i][c]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    for i in range(r, rows):
        if not is_zero(aug[i][cols]):
            return None
    zero = rhs[0] * 0 if rhs else Fraction(0)
    x = [zero] * cols
    for i, pc in enumerate(pivots):
        x[pc] = aug[i][cols]
    return x


def mat_inverse(matrix):
    """Exact inverse; ``None`` if singular."""
    n = len(matrix)
    if n == 0:
        return []
    aug = [list(matrix[i]) + [Fraction(1) if i == j else Fraction(0) for j in range(n)]
           for i in range(n)]
    # make identity augmentation live in the same field as the matrix
    sample = matrix[0][0]
    if isinstance(sample, QC):
        aug = [list(matrix[i]) + [QC_ONE if i == j else QC_ZERO for j in range(n)]
               for i in range(n)]
    r = 0
    for c in range(n):
        pr = None
        for i in range(r, n):
            if not is_zero(aug[i][c]):
                pr = i
                break
        if pr is None:
            return None
        aug[r], aug[pr] = aug[pr], aug[r]
        inv = aug[r][c]
        aug[r] = [x / inv for x in aug[r]]
        for i in range(n):
            if i != r and not is_zero(aug[i][c]):
                f = aug[i][c]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[r])]
        r += 1
    return [row[n:] for row in aug]


def independent_subset(vectors, ambient_dim):
    """Indices of a greedy (by position) maximal independent subset."""
    chosen = []
    basis_rows = []
    for idx, v in enumerate(vectors):
        cand = basis_rows + [list(v)]
        if rank(cand) > len(basis_rows):
            basis_rows = [row[:] for row in rref(cand)[0][: len(chosen) + 1]]
            chosen.append(idx)
        if len(chosen) == ambient_dim:
            break
    return chosen


def parse_fraction(text):
    """Parse 'p/q' or integer strings into Fraction."""
    return Fraction(str(text))
