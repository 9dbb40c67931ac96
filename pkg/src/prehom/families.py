"""Generators for the algebras and closed-form invariants of the example corpus."""

from __future__ import annotations

from fractions import Fraction

from .linalg import RatMatrix
from .parser import parse_poly
from .ratpoly import Poly, poly_det


def unit(n: int, i: int, j: int) -> RatMatrix:
    """Matrix unit ``E_ij`` with 1-based indices."""
    return RatMatrix.unit(n, i - 1, j - 1)


def normal_crossings(n: int) -> list[RatMatrix]:
    return [unit(n, i, i) for i in range(1, n + 1)]


def two_additive(n: int) -> list[RatMatrix]:
    """Identity plus ``E_i1``: scaling together with shears into the first coordinate."""
    return [RatMatrix.identity(n)] + [unit(n, i, 1) for i in range(2, n + 1)]


def aac_basis() -> list[RatMatrix]:
    return [RatMatrix.diag([1, 0, -1]), unit(3, 2, 1) + unit(3, 3, 2).scale(2), RatMatrix.diag([0, 1, 2])]


def ex_a_basis() -> list[RatMatrix]:
    return [RatMatrix.diag([1, 1, 0]), unit(3, 2, 1), unit(3, 3, 3)]


def non_example_basis() -> list[RatMatrix]:
    return [RatMatrix.diag([1, 1, 0]), unit(3, 2, 1), RatMatrix.diag([0, -1, 1])]


def lower_shift(n: int) -> RatMatrix:
    return RatMatrix([[1 if i == j + 1 else 0 for j in range(n)] for i in range(n)], n)


def toeplitz_lower(n: int) -> list[RatMatrix]:
    """Powers ``N^0..N^(n-1)`` of the lower shift: lower-triangular Toeplitz matrices."""
    shift = lower_shift(n)
    out = [RatMatrix.identity(n)]
    for _ in range(n - 1):
        out.append(out[-1] @ shift)
    return out


def lu_basis(n: int, m: int) -> list[RatMatrix]:
    """``X . M = A M - M B`` on ``n x m`` matrices, ``A`` lower triangular, ``B`` strictly upper.

    Coordinates are the entries of ``M`` in row-major order.
    """
    size = n * m

    def idx(i: int, j: int) -> int:
        return i * m + j

    mats = []
    for a in range(n):
        for b in range(a + 1):
            rows = [[0] * size for _ in range(size)]
            for j in range(m):
                rows[idx(a, j)][idx(b, j)] += 1
            mats.append(RatMatrix(rows, size))
    for a in range(m):
        for b in range(a + 1, m):
            rows = [[0] * size for _ in range(size)]
            for i in range(n):
                rows[idx(i, b)][idx(i, a)] -= 1
            mats.append(RatMatrix(rows, size))
    return mats


def lu_names(n: int, m: int) -> list[str]:
    return [f"m{i + 1}{j + 1}" for i in range(n) for j in range(m)]


def lu_matrix(n: int, m: int) -> list[list[Poly]]:
    size = n * m
    return [[Poly.var(size, i * m + j) for j in range(m)] for i in range(n)]


def leading_minor(mat: list[list[Poly]], k: int) -> Poly:
    return poly_det([row[:k] for row in mat[:k]])


def lu_numerator(n: int, m: int, i: int) -> Poly:
    """Leading ``i x i`` minor of ``M`` with column ``i`` deleted (``i`` is 1-based)."""
    mat = lu_matrix(n, m)
    cols = [c for c in range(m) if c != i - 1][:i]
    return poly_det([[mat[r][c] for c in cols] for r in range(i)])


SYMMETRIC_COORDS = [(1, 2), (1, 3), (1, 4), (2, 2), (2, 3), (2, 4), (3, 3), (3, 4), (4, 4)]
BLOCK_GROUP_ENTRIES = [(1, 1), (2, 2), (2, 3), (3, 2), (3, 3), (4, 1), (4, 2), (4, 3), (4, 4)]


def symmetric_action(entries=BLOCK_GROUP_ENTRIES, coords=SYMMETRIC_COORDS) -> list[RatMatrix]:
    """Matrices of ``M -> X M + M X^T`` on symmetric 4x4 matrices with ``x11 = 0``.

    One matrix per unit ``X = E_pq`` in ``entries``.  The subspace ``x11 = 0``
    is preserved because no entry lies in the first row except ``(1, 1)``.
    """
    index = {c: k for k, c in enumerate(coords)}
    size = len(coords)

    def coord(i: int, j: int) -> int | None:
        key = (min(i, j), max(i, j))
        return index.get(key)

    out = []
    for p, q in entries:
        rows = [[0] * size for _ in range(size)]
        # (E_pq M)_{ij} = delta_ip M_qj ;  (M E_qp)_{ij} = delta_jp M_iq
        for (i, j), target in index.items():
            if i == p:
                src = coord(q, j)
                if src is not None:
                    rows[target][src] += 1
            if j == p:
                src = coord(i, q)
                if src is not None:
                    rows[target][src] += 1
        out.append(RatMatrix(rows, size))
    return out


SYMMETRIC_NAMES = [f"x{i}{j}" for i, j in SYMMETRIC_COORDS]


def symmetric_minors() -> list[Poly]:
    """Leading 2x2 minor of rows/cols 2..3 and the 3x3, 4x4 leading minors."""
    n = len(SYMMETRIC_COORDS)
    index = {c: k for k, c in enumerate(SYMMETRIC_COORDS)}

    def entry(i: int, j: int) -> Poly:
        key = (min(i, j), max(i, j))
        return Poly.var(n, index[key]) if key in index else Poly.zero(n)

    f1 = poly_det([[entry(i, j) for j in (2, 3)] for i in (2, 3)])
    f2 = poly_det([[entry(i, j) for j in (1, 2, 3)] for i in (1, 2, 3)])
    f3 = poly_det([[entry(i, j) for j in (1, 2, 3, 4)] for i in (1, 2, 3, 4)])
    return [f1, f2, f3]


def sym_point(m: list[list[int]]) -> list[Fraction]:
    return [Fraction(m[i - 1][j - 1]) for i, j in SYMMETRIC_COORDS]


D1_TEXT = "(x3*x5 - x4^2) * (-(x1^2*x5) + 2*x1*x2*x4 - x2^2*x3)"
D2_TEXT = "(x2^2*x3^2 - 4*x1*x3^3 - 4*x2^3*x4 + 18*x1*x2*x3*x4 - 27*x4^2*x1^2) * x5"


def d1_poly() -> Poly:
    n = 5
    x = [Poly.var(n, i) for i in range(n)]
    z = Poly.zero(n)
    det3 = poly_det([[z, x[0], x[1]], [x[0], x[2], x[3]], [x[1], x[3], x[4]]])
    return (x[2] * x[4] - x[3] ** 2) * det3


def d2_poly() -> Poly:
    return parse_poly(D2_TEXT, [f"x{i}" for i in range(1, 6)])


def toeplitz_numerator(n: int, i: int, names_offset: int = 0, total: int | None = None) -> Poly:
    """Numerator of the degree-``i`` additive function of the Toeplitz group.

    The ``i x i`` determinant whose first column is ``(j/i) a_{j+1}`` and whose
    column ``c > 1`` holds ``a_{r-c+2}`` in row ``r`` (zero above the band).
    Variables ``a_1..a_n`` sit at positions ``names_offset..`` of a ring of
    ``total`` variables.
    """
    total = n if total is None else total

    def a(k: int) -> Poly:
        if k < 1 or k > n:
            return Poly.zero(total)
        return Poly.var(total, names_offset + k - 1)

    rows = []
    for r in range(1, i + 1):
        row = [a(r + 1).scale(Fraction(r, i))]
        for c in range(2, i + 1):
            row.append(a(r - c + 2))
        rows.append(row)
    return poly_det(rows)


def toeplitz_product_coeffs(n: int) -> list[Poly]:
    """First column ``c_k = sum_j a_j b_{k+1-j}`` of the product of two Toeplitz matrices."""
    total = 2 * n
    a = [Poly.var(total, i) for i in range(n)]
    b = [Poly.var(total, n + i) for i in range(n)]
    return [sum((a[j] * b[k - j] for j in range(k + 1)), Poly.zero(total)) for k in range(n)]


def homomorphism_defect(n: int, i: int) -> Poly:
    """``N_i(c) - N_i(a) b_1^i - N_i(b) a_1^i`` for the product ``c`` of two Toeplitz matrices.

    This is the additivity defect of ``N_i / a_1^i`` after clearing the
    denominator ``(a_1 b_1)^i``; it is the zero polynomial exactly when the
    function is additive on the group.
    """
    from .ratpoly import substitute

    total = 2 * n
    na = toeplitz_numerator(n, i, 0, total)
    nb = toeplitz_numerator(n, i, n, total)
    generic = toeplitz_numerator(n, i)
    nc = substitute(generic, toeplitz_product_coeffs(n))
    a1 = Poly.var(total, 0)
    b1 = Poly.var(total, n)
    return nc - na * b1 ** i - nb * a1 ** i


def product_blocks() -> list[RatMatrix]:
    """Two copies of the 2-dimensional scaling-plus-shear block on ``(x, y)`` and ``(z, w)``.

    First block: ``diag(1,1,0,0)`` and the shear ``x d/dy``.  Second block:
    ``diag(0,0,1,1)`` and the shear ``w d/dz``.
    """
    return [RatMatrix.diag([1, 1, 0, 0]), unit(4, 2, 1), RatMatrix.diag([0, 0, 1, 1]), unit(4, 3, 4)]
