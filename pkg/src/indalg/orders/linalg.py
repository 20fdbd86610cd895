"""Exact linear algebra over the rationals and the integers.

Everything here works on immutable tuple-of-tuples matrices.  Rational
routines use :class:`fractions.Fraction` and row reduction; integer
routines use Hermite normal form, which gives canonical bases for row
lattices and hence decidable lattice membership and saturation.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm

Row = tuple[Fraction, ...]
Mat = tuple[Row, ...]
IntRow = tuple[int, ...]
IntMat = tuple[IntRow, ...]


def mat_q(rows) -> Mat:
    """Coerce an iterable of iterables to a rational matrix."""
    return tuple(tuple(Fraction(x) for x in row) for row in rows)


def mat_z(rows) -> IntMat:
    out = []
    for row in rows:
        r = []
        for x in row:
            f = Fraction(x)
            if f.denominator != 1:
                raise ValueError(f"non-integer entry {x}")
            r.append(f.numerator)
        out.append(tuple(r))
    return tuple(out)


def shape(a: Mat) -> tuple[int, int]:
    return (len(a), len(a[0]) if a else 0)


def identity(n: int) -> Mat:
    one, zero = Fraction(1), Fraction(0)
    return tuple(
        tuple(one if i == j else zero for j in range(n)) for i in range(n)
    )


def zeros(n: int, m: int) -> Mat:
    z = Fraction(0)
    return tuple(tuple(z for _ in range(m)) for _ in range(n))


def transpose(a) -> tuple[tuple, ...]:
    if not a:
        return ()
    return tuple(zip(*a))


def matmul(a, b) -> Mat:
    bt = transpose(b)
    return tuple(
        tuple(sum(Fraction(x) * Fraction(y) for x, y in zip(row, col)) for col in bt)
        for row in a
    )


def scalar_mul(c, a) -> Mat:
    c = Fraction(c)
    return tuple(tuple(c * x for x in row) for row in a)


def is_zero(a) -> bool:
    return all(x == 0 for row in a for x in row)


def hstack(a, b) -> Mat:
    if not a:
        return mat_q(b)
    return tuple(tuple(ra) + tuple(rb) for ra, rb in zip(a, b))


def rref(a) -> tuple[Mat, tuple[int, ...]]:
    """Reduced row echelon form; returns (matrix, pivot column indices)."""
    rows = [list(map(Fraction, row)) for row in a]
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return tuple(tuple(row) for row in rows), tuple(pivots)


def rank(a) -> int:
    if not a:
        return 0
    return len(rref(a)[1])


def nullspace(a) -> tuple[Row, ...]:
    """Basis of the right kernel {v : a v = 0}, vectors as tuples."""
    if not a:
        return ()
    r, pivots = rref(a)
    ncols = len(a[0])
    pivset = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        v = [Fraction(0)] * ncols
        v[free] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -r[i][free]
        basis.append(tuple(v))
    return tuple(basis)


def apply_mat(a, v) -> Row:
    return tuple(sum(Fraction(x) * Fraction(y) for x, y in zip(row, v)) for row in a)


def solve_right(a, b) -> Mat | None:
    """X with a @ X = b, or None.  Free variables are set to zero."""
    n, m = shape(mat_q(a))
    aug, pivots = rref(hstack(a, b))
    k = len(b[0]) if b else 0
    if any(p >= m for p in pivots):
        return None
    x = [[Fraction(0)] * k for _ in range(m)]
    for i, p in enumerate(pivots):
        for j in range(k):
            x[p][j] = aug[i][m + j]
    return tuple(tuple(row) for row in x)


def solve_left(a, b) -> Mat | None:
    """X with X @ a = b, or None."""
    xt = solve_right(transpose(a), transpose(b))
    return None if xt is None else transpose(xt)


def col_space_leq(a, b) -> bool:
    """True iff every column of a lies in the column span of b."""
    return rank(b) == rank(hstack(b, a))


def inverse(a) -> Mat:
    n, m = shape(mat_q(a))
    if n != m:
        raise ValueError("not square")
    inv = solve_right(a, identity(n))
    if inv is None:
        raise ValueError("singular matrix")
    return inv


def lcm_denoms(a) -> int:
    d = 1
    for row in a:
        for x in row:
            d = lcm(d, Fraction(x).denominator)
    return d


def clear_denominators(a) -> IntMat:
    d = lcm_denoms(a)
    return mat_z(scalar_mul(d, a))


# --- integer lattice routines --------------------------------------------


def hnf_rows(rows) -> IntMat:
    """Canonical row-style Hermite normal form of the lattice spanned by
    ``rows``.  Zero rows are dropped; pivots are positive and entries above
    each pivot are reduced into [0, pivot)."""
    work = [list(r) for r in rows if any(x != 0 for x in r)]
    if not work:
        return ()
    ncols = len(work[0])
    r = 0
    for c in range(ncols):
        while True:
            live = [i for i in range(r, len(work)) if work[i][c] != 0]
            if not live:
                break
            if len(live) == 1:
                i = live[0]
                work[r], work[i] = work[i], work[r]
                break
            live.sort(key=lambda i: abs(work[i][c]))
            p = live[0]
            for i in live[1:]:
                q = work[i][c] // work[p][c]
                work[i] = [x - q * y for x, y in zip(work[i], work[p])]
            work = [w for w in work[:r]] + [
                w for w in work[r:] if any(x != 0 for x in w)
            ]
        if r < len(work) and work[r][c] != 0:
            if work[r][c] < 0:
                work[r] = [-x for x in work[r]]
            for i in range(r):
                q = work[i][c] // work[r][c]
                if q:
                    work[i] = [x - q * y for x, y in zip(work[i], work[r])]
            r += 1
            if r == len(work):
                break
    return tuple(tuple(w) for w in work[:r])


def _pivot(row: IntRow) -> int:
    return next(i for i, x in enumerate(row) if x != 0)


def in_row_lattice(hnf: IntMat, v) -> bool:
    """Membership of integer vector v in the row lattice given by an HNF
    basis."""
    w = list(v)
    for row in hnf:
        p = _pivot(row)
        if any(w[i] != 0 for i in range(p)):
            return False
        if w[p] % row[p] != 0:
            return False
        q = w[p] // row[p]
        if q:
            w = [x - q * y for x, y in zip(w, row)]
    return all(x == 0 for x in w)


def lattice_leq(rows_a, rows_b) -> bool:
    """True iff the row lattice of rows_a is contained in that of rows_b."""
    h = hnf_rows(rows_b)
    return all(in_row_lattice(h, r) for r in rows_a)


def left_kernel_int(m: IntMat, width: int | None = None) -> IntMat:
    """Canonical basis of {x in Z^k : x m = 0} for an integer k-row matrix.

    Row-reduces [m | I] with unimodular operations; the identity tails of
    the rows whose m-part vanishes generate the kernel lattice exactly.
    """
    k = len(m)
    if k == 0:
        return ()
    n = len(m[0]) if m[0:] and m[0] else (width if width is not None else 0)
    work = [list(m[i]) + [1 if j == i else 0 for j in range(k)] for i in range(k)]
    r = 0
    for c in range(n):
        while True:
            live = [i for i in range(r, k) if work[i][c] != 0]
            if not live:
                break
            if len(live) == 1:
                i = live[0]
                work[r], work[i] = work[i], work[r]
                r += 1
                break
            live.sort(key=lambda i: abs(work[i][c]))
            p = live[0]
            for i in live[1:]:
                q = work[i][c] // work[p][c]
                work[i] = [x - q * y for x, y in zip(work[i], work[p])]
    kernel = [tuple(w[n:]) for w in work if all(x == 0 for x in w[:n])]
    return hnf_rows(kernel)


def right_kernel_int(m: IntMat) -> IntMat:
    """Canonical basis (as rows) of {v in Z^n : m v = 0}."""
    mt = transpose(m)
    return left_kernel_int(mt, width=len(m))


def saturation(rows, dim: int) -> IntMat:
    """Canonical basis of (Q-span of rows) ∩ Z^dim.

    Computed as a double kernel: the rational row span is the left kernel
    of any integer matrix whose columns span the right kernel of ``rows``,
    and taking that left kernel over Z yields the saturated lattice.
    """
    rows = tuple(r for r in rows if any(x != 0 for x in r))
    if not rows:
        return ()
    ker = right_kernel_int(rows)  # rows of ker are right-kernel vectors
    if not ker:
        return hnf_rows(
            [[1 if j == i else 0 for j in range(dim)] for i in range(dim)]
        )
    n = transpose(ker)  # dim x k matrix whose columns span the kernel
    return left_kernel_int(n, width=len(ker))


def is_integer_matrix(a) -> bool:
    return all(Fraction(x).denominator == 1 for row in a for x in row)


def content_gcd(xs) -> int:
    g = 0
    for x in xs:
        g = gcd(g, x)
    return g
