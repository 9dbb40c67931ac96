"""Exact linear algebra over QQ.

The workhorse is :class:`Echelon`, an incremental sparse row-reduction
engine whose pivot rows are always kept fully reduced.  Inserting rows in any
order therefore ends in the same canonical reduced row-echelon form, which is
what makes :class:`Subspace` equality structural.

Dense :class:`RatMatrix` values are used at the API boundary; the large
systems built by the invariant engines go straight into :class:`Echelon` as
sparse ``{column: value}`` rows.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Iterable, Mapping, Sequence

from .ratpoly import UniPoly

SparseRow = dict[int, Fraction]


def _frac(c) -> Fraction:
    return c if isinstance(c, Fraction) else Fraction(c)


class Echelon:
    """Incremental canonical RREF over sparse rows with ``ncols`` columns."""

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.pivots: dict[int, SparseRow] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, row: Mapping[int, Fraction]) -> SparseRow:
        """Residual of ``row`` modulo the current row space."""
        out = {c: _frac(v) for c, v in row.items() if v}
        for c in [c for c in out if c in self.pivots]:
            coef = out.get(c)
            if not coef:
                continue
            for k, v in self.pivots[c].items():
                val = out.get(k, 0) - coef * v
                if val:
                    out[k] = val
                else:
                    out.pop(k, None)
        return out

    def add(self, row: Mapping[int, Fraction]) -> bool:
        """Insert a row; return True when it enlarged the row space."""
        res = self.reduce(row)
        if not res:
            return False
        p = min(res)
        inv = 1 / res[p]
        res = {k: v * inv for k, v in res.items()}
        for other in self.pivots.values():
            coef = other.get(p)
            if coef:
                for k, v in res.items():
                    val = other.get(k, 0) - coef * v
                    if val:
                        other[k] = val
                    else:
                        del other[k]
        self.pivots[p] = res
        return True

    def add_all(self, rows: Iterable[Mapping[int, Fraction]]) -> Echelon:
        for r in rows:
            self.add(r)
        return self

    def contains(self, row: Mapping[int, Fraction]) -> bool:
        return not self.reduce(row)

    def rows(self) -> list[SparseRow]:
        return [dict(self.pivots[p]) for p in sorted(self.pivots)]

    def free_columns(self) -> list[int]:
        return [c for c in range(self.ncols) if c not in self.pivots]

    def kernel_rows(self) -> list[SparseRow]:
        """Basis of the null space of the row space, one vector per free column."""
        basis = []
        for f in self.free_columns():
            vec: SparseRow = {f: Fraction(1)}
            for p, row in self.pivots.items():
                v = row.get(f)
                if v:
                    vec[p] = -v
            basis.append(vec)
        return basis

    def copy(self) -> Echelon:
        e = Echelon(self.ncols)
        e.pivots = {p: dict(r) for p, r in self.pivots.items()}
        return e


def solve_sparse(rows: Sequence[Mapping[int, Fraction]], rhs: Sequence, ncols: int
                 ) -> tuple[SparseRow, list[SparseRow]] | None:
    """Solve ``rows · x = rhs``; return a particular solution and a kernel basis.

    The particular solution sets every free variable to zero, which makes it
    the canonical representative of the affine solution set.  ``None`` means
    the system is inconsistent.
    """
    aug = Echelon(ncols + 1)
    for r, b in zip(rows, rhs):
        row = dict(r)
        if b:
            row[ncols] = _frac(b)
        aug.add(row)
    if ncols in aug.pivots:
        return None
    particular = {p: row[ncols] for p, row in aug.pivots.items() if row.get(ncols)}
    coef = Echelon(ncols)
    coef.pivots = {p: {k: v for k, v in row.items() if k != ncols} for p, row in aug.pivots.items()}
    return particular, coef.kernel_rows()


def dense(row: Mapping[int, Fraction], ncols: int) -> tuple[Fraction, ...]:
    return tuple(row.get(i, Fraction(0)) for i in range(ncols))


def sparse(vec: Sequence) -> SparseRow:
    return {i: _frac(v) for i, v in enumerate(vec) if v}


@dataclass(frozen=True)
class RatMatrix:
    """Dense immutable rational matrix."""

    rows: tuple[tuple[Fraction, ...], ...]
    ncols: int

    def __init__(self, rows: Iterable[Iterable], ncols: int | None = None):
        rs = tuple(tuple(_frac(v) for v in r) for r in rows)
        if ncols is None:
            if not rs:
                raise ValueError("ncols required for an empty matrix")
            ncols = len(rs[0])
        if any(len(r) != ncols for r in rs):
            raise ValueError("ragged matrix")
        object.__setattr__(self, "rows", rs)
        object.__setattr__(self, "ncols", ncols)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    @classmethod
    def zeros(cls, r: int, c: int) -> RatMatrix:
        return cls([[0] * c for _ in range(r)], c)

    @classmethod
    def identity(cls, n: int) -> RatMatrix:
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], n)

    @classmethod
    def diag(cls, entries: Sequence) -> RatMatrix:
        n = len(entries)
        return cls([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)], n)

    @classmethod
    def unit(cls, n: int, i: int, j: int) -> RatMatrix:
        """Matrix unit with a single 1 in row ``i``, column ``j`` (0-based)."""
        return cls([[1 if (a, b) == (i, j) else 0 for b in range(n)] for a in range(n)], n)

    @classmethod
    def from_flat(cls, flat: Sequence, n: int) -> RatMatrix:
        return cls([flat[i * n:(i + 1) * n] for i in range(n)], n)

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.rows[i][j]

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def flat(self) -> tuple[Fraction, ...]:
        return tuple(v for r in self.rows for v in r)

    def transpose(self) -> RatMatrix:
        return RatMatrix(zip(*self.rows), self.nrows) if self.rows else RatMatrix([], 0)

    def columns(self) -> list[tuple[Fraction, ...]]:
        return [tuple(r[j] for r in self.rows) for j in range(self.ncols)]

    def __add__(self, other: RatMatrix) -> RatMatrix:
        self._same_shape(other)
        return RatMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.ncols)

    def __sub__(self, other: RatMatrix) -> RatMatrix:
        self._same_shape(other)
        return RatMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.ncols)

    def __neg__(self) -> RatMatrix:
        return self.scale(-1)

    def scale(self, c) -> RatMatrix:
        c = _frac(c)
        return RatMatrix([[c * a for a in r] for r in self.rows], self.ncols)

    def __matmul__(self, other: RatMatrix) -> RatMatrix:
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = other.columns()
        return RatMatrix(
            [[sum((a * b for a, b in zip(r, c) if a and b), Fraction(0)) for c in cols] for r in self.rows],
            other.ncols,
        )

    def apply(self, v: Sequence) -> tuple[Fraction, ...]:
        if len(v) != self.ncols:
            raise ValueError("vector length mismatch")
        return tuple(sum((a * _frac(b) for a, b in zip(r, v) if a and b), Fraction(0)) for r in self.rows)

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.rows)

    def is_lower_triangular(self) -> bool:
        return all(not self.rows[i][j] for i in range(self.nrows) for j in range(i + 1, self.ncols))

    def is_upper_triangular(self) -> bool:
        return all(not self.rows[i][j] for i in range(self.nrows) for j in range(min(i, self.ncols)))

    def diagonal(self) -> tuple[Fraction, ...]:
        return tuple(self.rows[i][i] for i in range(min(self.shape)))

    def _same_shape(self, other: RatMatrix) -> None:
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def __str__(self) -> str:
        return "[" + ", ".join("[" + ", ".join(str(v) for v in r) + "]" for r in self.rows) + "]"


def rref(m: RatMatrix) -> tuple[RatMatrix, int]:
    """Reduced row-echelon form (zero rows at the bottom) and rank."""
    e = Echelon(m.ncols).add_all(sparse(r) for r in m.rows)
    rows = [dense(r, m.ncols) for r in e.rows()]
    rows += [(Fraction(0),) * m.ncols] * (m.nrows - len(rows))
    return RatMatrix(rows, m.ncols), e.rank


def rank(m: RatMatrix) -> int:
    return Echelon(m.ncols).add_all(sparse(r) for r in m.rows).rank


@dataclass(frozen=True)
class Subspace:
    """A subspace of QQ^ambient_dim stored by its canonical RREF basis."""

    ambient_dim: int
    basis: RatMatrix

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient_dim: int) -> Subspace:
        return cls.from_sparse((sparse(v) for v in vectors), ambient_dim)

    @classmethod
    def from_sparse(cls, rows: Iterable[Mapping[int, Fraction]], ambient_dim: int) -> Subspace:
        e = Echelon(ambient_dim)
        for r in rows:
            if any(c >= ambient_dim or c < 0 for c in r):
                raise ValueError("vector does not fit the ambient dimension")
            e.add(r)
        return cls._from_echelon(e)

    @classmethod
    def _from_echelon(cls, e: Echelon) -> Subspace:
        return cls(e.ncols, RatMatrix([dense(r, e.ncols) for r in e.rows()], e.ncols))

    @classmethod
    def zero(cls, ambient_dim: int) -> Subspace:
        return cls(ambient_dim, RatMatrix([], ambient_dim))

    @classmethod
    def full(cls, ambient_dim: int) -> Subspace:
        return cls(ambient_dim, RatMatrix.identity(ambient_dim))

    @property
    def dim(self) -> int:
        return self.basis.nrows

    def vectors(self) -> list[tuple[Fraction, ...]]:
        return list(self.basis.rows)

    def echelon(self) -> Echelon:
        return Echelon(self.ambient_dim).add_all(sparse(r) for r in self.basis.rows)

    def contains(self, v: Sequence) -> bool:
        return contains(self, v)

    def __contains__(self, v: Sequence) -> bool:
        return contains(self, v)

    def coordinates(self, v: Sequence) -> tuple[Fraction, ...]:
        """Coordinates of ``v`` in this basis; raises if ``v`` is outside."""
        if self.dim == 0:
            if any(v):
                raise ValueError("vector not in subspace")
            return ()
        sol = solve(self.basis.transpose(), v)
        if sol is None:
            raise ValueError("vector not in subspace")
        return sol


def _check_ambient(a: Subspace, b: Subspace) -> None:
    if a.ambient_dim != b.ambient_dim:
        raise ValueError(f"ambient mismatch: {a.ambient_dim} vs {b.ambient_dim}")


def kernel(m: RatMatrix) -> Subspace:
    """Right null space ``{v : m v = 0}``."""
    e = Echelon(m.ncols).add_all(sparse(r) for r in m.rows)
    return Subspace.from_sparse(e.kernel_rows(), m.ncols)


def kernel_sparse(rows: Iterable[Mapping[int, Fraction]], ncols: int) -> Subspace:
    e = Echelon(ncols).add_all(rows)
    return Subspace.from_sparse(e.kernel_rows(), ncols)


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    _check_ambient(a, b)
    return Subspace.span(list(a.basis.rows) + list(b.basis.rows), a.ambient_dim)


def subspace_intersect(a: Subspace, b: Subspace) -> Subspace:
    """Intersection via the kernel of ``[A^T | -B^T]`` (Zassenhaus-free)."""
    _check_ambient(a, b)
    if a.dim == 0 or b.dim == 0:
        return Subspace.zero(a.ambient_dim)
    ka, kb = a.dim, b.dim
    # unknowns: coefficients s (for a) and t (for b) with s·A = t·B
    eqs = []
    for col in range(a.ambient_dim):
        row = {}
        for i in range(ka):
            if a.basis.rows[i][col]:
                row[i] = a.basis.rows[i][col]
        for j in range(kb):
            if b.basis.rows[j][col]:
                row[ka + j] = -b.basis.rows[j][col]
        if row:
            eqs.append(row)
    ker = Echelon(ka + kb).add_all(eqs).kernel_rows()
    vecs = []
    for k in ker:
        v = [Fraction(0)] * a.ambient_dim
        for i in range(ka):
            c = k.get(i)
            if c:
                for col, x in enumerate(a.basis.rows[i]):
                    if x:
                        v[col] += c * x
        vecs.append(v)
    return Subspace.span(vecs, a.ambient_dim)


def contains(a: Subspace, v: Sequence) -> bool:
    if len(v) != a.ambient_dim:
        raise ValueError("vector length mismatch")
    return a.echelon().contains(sparse(v))


def solve(m: RatMatrix, b: Sequence) -> tuple[Fraction, ...] | None:
    """Canonical particular solution of ``m x = b`` (free variables zero), or None."""
    if len(b) != m.nrows:
        raise ValueError("right-hand side length mismatch")
    res = solve_sparse([sparse(r) for r in m.rows], b, m.ncols)
    if res is None:
        return None
    return dense(res[0], m.ncols)


def det_rat(m: RatMatrix) -> Fraction:
    """Determinant by fraction-free Bareiss elimination on the integer-cleared matrix."""
    if not m.is_square():
        raise ValueError("determinant of a non-square matrix")
    n = m.nrows
    if n == 0:
        return Fraction(1)
    # clear denominators row by row so that Bareiss runs over the integers
    scale = Fraction(1)
    a: list[list[int]] = []
    for r in m.rows:
        den = 1
        for v in r:
            den = den * v.denominator // _gcd(den, v.denominator)
        a.append([int(v * den) for v in r])
        scale /= den
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return Fraction(0)
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1] * scale


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def char_poly(m: RatMatrix) -> UniPoly:
    """``det(tI - m)`` by the division-free Samuelson-Berkowitz recursion."""
    if not m.is_square():
        raise ValueError("characteristic polynomial of a non-square matrix")
    n = m.nrows
    if n == 0:
        return UniPoly.one()
    a = [list(r) for r in m.rows]
    # coefficient vectors are kept highest degree first; start from the 1x1 corner
    coeffs = [Fraction(1), -a[n - 1][n - 1]]
    for k in range(n - 2, -1, -1):
        # block [[a_kk, R], [C, A1]] with A1 the trailing (n-k-1)-square block
        size = n - k - 1
        R = a[k][k + 1:]
        C = [a[i][k] for i in range(k + 1, n)]
        A1 = [row[k + 1:] for row in a[k + 1:]]
        t = [Fraction(1), -a[k][k]]
        vec = C
        for _ in range(size):
            t.append(-sum((x * y for x, y in zip(R, vec)), Fraction(0)))
            vec = [sum((A1[i][j] * vec[j] for j in range(size) if A1[i][j]), Fraction(0)) for i in range(size)]
        # Toeplitz product: new[i] = sum_j t[i-j] * coeffs[j]
        new = []
        for i in range(size + 2):
            s = Fraction(0)
            for j in range(len(coeffs)):
                if 0 <= i - j < len(t):
                    s += t[i - j] * coeffs[j]
            new.append(s)
        coeffs = new
    return UniPoly(reversed(coeffs))


def _divisors_up_to(value: int, limit: int) -> list[int]:
    value = abs(value)
    if value == 0:
        return []
    if isqrt(value) <= limit:
        out = set()
        for d in range(1, isqrt(value) + 1):
            if value % d == 0:
                out.add(d)
                out.add(value // d)
        return sorted(d for d in out if d <= limit)
    return [d for d in range(1, limit + 1) if value % d == 0]


def rational_roots(p: UniPoly) -> list[Fraction]:
    """Distinct rational roots of ``p`` via the rational root theorem.

    The search is restricted by the Fujiwara bound on root size, so the
    divisor enumeration stays small even when the constant term is huge.
    """
    if p.is_zero():
        raise ValueError("zero polynomial has every root")
    roots: list[Fraction] = []
    q = p
    if q.degree() >= 1 and q.coeffs[0] == 0:
        roots.append(Fraction(0))
        k = next(i for i, c in enumerate(q.coeffs) if c)
        q = UniPoly(q.coeffs[k:])
    if q.degree() < 1:
        return roots
    # square-free, integer, primitive
    g = q.divmod(_uni_gcd(q, q.derivative()))[0]
    den = 1
    for c in g.coeffs:
        den = den * c.denominator // _gcd(den, c.denominator)
    ints = [int(c * den) for c in g.coeffs]
    cont = 0
    for c in ints:
        cont = _gcd(cont, c)
    ints = [c // cont for c in ints]
    deg = len(ints) - 1
    lead, const = ints[-1], ints[0]
    bound = 2 * max(abs(Fraction(ints[deg - k], lead)) ** (1 / k) for k in range(1, deg + 1)) + 1
    for qd in _divisors_up_to(lead, abs(lead)):
        for pd in _divisors_up_to(const, int(bound * qd) + 1):
            for num in (pd, -pd):
                if _gcd(num, qd) != 1:
                    continue
                # q^deg * g(num/q) evaluated over the integers
                val = sum(c * num**i * qd ** (deg - i) for i, c in enumerate(ints))
                if val == 0:
                    roots.append(Fraction(num, qd))
    return sorted(roots)


def _uni_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    from .ratpoly import uni_gcd

    return uni_gcd(a, b)


def root_multiplicity(p: UniPoly, r: Fraction) -> int:
    lin = UniPoly([-r, 1])
    k = 0
    while not p.is_zero() and p.degree() >= 1:
        quo, rem = p.divmod(lin)
        if not rem.is_zero():
            break
        p = quo
        k += 1
    return k


def rational_eigenvalues(m: RatMatrix) -> list[Fraction]:
    """Rational eigenvalues with algebraic multiplicity, ascending."""
    cp = char_poly(m)
    out: list[Fraction] = []
    for r in rational_roots(cp):
        out.extend([r] * root_multiplicity(cp, r))
    return out


def eigenspace(m: RatMatrix, lam) -> Subspace:
    if not m.is_square():
        raise ValueError("eigenspace of a non-square matrix")
    return kernel(m - RatMatrix.identity(m.nrows).scale(lam))


def inverse(m: RatMatrix) -> RatMatrix:
    if not m.is_square():
        raise ValueError("inverse of a non-square matrix")
    n = m.nrows
    cols = []
    for i in range(n):
        col = solve(m, [int(i == j) for j in range(n)])
        if col is None:
            raise ZeroDivisionError("matrix is singular")
        cols.append(col)
    return RatMatrix([[cols[j][i] for j in range(n)] for i in range(n)], n)
