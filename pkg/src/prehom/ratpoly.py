"""Sparse multivariate polynomials and dense univariate polynomials over QQ.

Coefficients are :class:`fractions.Fraction`.  A :class:`Poly` lives in a
fixed ambient ring ``QQ[x_1, ..., x_n]`` and stores only its nonzero terms,
keyed by exponent tuples of length ``n``.

The global monomial order is total degree first, then lexicographic with
``x_1 > x_2 > ... > x_n``.  It fixes leading terms (and hence exact division
and "monic" normalisation) and the canonical printing order.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Iterable, Iterator, Literal, Mapping, Sequence

Exps = tuple[int, ...]
Number = int | Fraction


def _frac(c: Number | str) -> Fraction:
    return c if isinstance(c, Fraction) else Fraction(c)


def order_key(e: Exps) -> tuple[int, Exps]:
    """Sort key realising the global degree-then-lex monomial order."""
    return (sum(e), e)


def monomials(n: int, d: int) -> list[Exps]:
    """All exponent vectors of total degree ``d`` in ``n`` variables, descending."""
    out: list[Exps] = []

    def rec(i: int, left: int, acc: list[int]) -> None:
        if i == n - 1:
            out.append(tuple(acc + [left]))
            return
        for a in range(left, -1, -1):
            rec(i + 1, left - a, acc + [a])

    if n == 0:
        return [()] if d == 0 else []
    rec(0, d, [])
    assert len(out) == comb(n + d - 1, d)
    return out


class Poly:
    """Immutable sparse polynomial with rational coefficients."""

    __slots__ = ("n", "_terms", "_hash")

    def __init__(self, n: int, terms: Mapping[Exps, Number] | None = None):
        if n < 0:
            raise ValueError("ambient dimension must be non-negative")
        self.n = n
        clean: dict[Exps, Fraction] = {}
        if terms:
            for e, c in terms.items():
                if len(e) != n:
                    raise ValueError(f"monomial {e} has length {len(e)}, expected {n}")
                if any(a < 0 for a in e):
                    raise ValueError(f"negative exponent in {e}")
                if c:
                    clean[tuple(e)] = _frac(c)
        self._terms = clean
        self._hash: int | None = None

    @classmethod
    def _raw(cls, n: int, terms: dict[Exps, Fraction]) -> Poly:
        # trusted constructor: terms already clean
        p = object.__new__(cls)
        p.n = n
        p._terms = terms
        p._hash = None
        return p

    # constructors -----------------------------------------------------
    @classmethod
    def zero(cls, n: int) -> Poly:
        return cls._raw(n, {})

    @classmethod
    def constant(cls, n: int, c: Number) -> Poly:
        c = _frac(c)
        return cls._raw(n, {(0,) * n: c} if c else {})

    @classmethod
    def var(cls, n: int, i: int) -> Poly:
        if not 0 <= i < n:
            raise IndexError(f"variable index {i} out of range for n={n}")
        e = [0] * n
        e[i] = 1
        return cls._raw(n, {tuple(e): Fraction(1)})

    @classmethod
    def monomial(cls, e: Sequence[int], c: Number = 1) -> Poly:
        return cls(len(e), {tuple(e): c})

    @classmethod
    def linear_form(cls, coeffs: Sequence[Number]) -> Poly:
        n = len(coeffs)
        terms = {}
        for i, c in enumerate(coeffs):
            if c:
                e = [0] * n
                e[i] = 1
                terms[tuple(e)] = _frac(c)
        return cls._raw(n, terms)

    # basic protocol ---------------------------------------------------
    @property
    def terms(self) -> Mapping[Exps, Fraction]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[Exps, Fraction]]:
        return iter(self._terms.items())

    def coefficient(self, e: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(e), Fraction(0))

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and (0,) * self.n in self._terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self._terms.get((0,) * self.n, Fraction(0))

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Poly):
            return self.n == other.n and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant_value() == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n, frozenset(self._terms.items())))
        return self._hash

    def _check(self, other: Poly) -> None:
        if self.n != other.n:
            raise ValueError(f"dimension mismatch: {self.n} vs {other.n}")

    def _lift(self, other: Poly | Number) -> Poly:
        if isinstance(other, Poly):
            self._check(other)
            return other
        return Poly.constant(self.n, other)

    # arithmetic -------------------------------------------------------
    def __add__(self, other: Poly | Number) -> Poly:
        if not isinstance(other, (Poly, int, Fraction)):
            return NotImplemented
        other = self._lift(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Poly._raw(self.n, out)

    __radd__ = __add__

    def __neg__(self) -> Poly:
        return Poly._raw(self.n, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other: Poly | Number) -> Poly:
        if not isinstance(other, (Poly, int, Fraction)):
            return NotImplemented
        return self + (-self._lift(other))

    def __rsub__(self, other: Number) -> Poly:
        return (-self) + other

    def scale(self, c: Number) -> Poly:
        c = _frac(c)
        if not c:
            return Poly.zero(self.n)
        return Poly._raw(self.n, {e: v * c for e, v in self._terms.items()})

    def __mul__(self, other: Poly | Number) -> Poly:
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Poly):
            return NotImplemented
        self._check(other)
        a, b = self._terms, other._terms
        if len(a) < len(b):
            a, b = b, a
        out: dict[Exps, Fraction] = {}
        for eb, cb in b.items():
            for ea, ca in a.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                v = out.get(e, 0) + ca * cb
                if v:
                    out[e] = v
                else:
                    del out[e]
        return Poly._raw(self.n, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> Poly:
        if k < 0:
            raise ValueError("negative power")
        result = Poly.constant(self.n, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # structure --------------------------------------------------------
    def total_degree(self) -> int:
        """Maximum total degree of a term; -1 for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    def homogeneous_degree(self) -> int | None | Literal["zero"]:
        """Common total degree of all terms, ``None`` if mixed, ``"zero"`` for 0."""
        if not self._terms:
            return "zero"
        degs = {sum(e) for e in self._terms}
        return degs.pop() if len(degs) == 1 else None

    def leading_monomial(self) -> Exps:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        return max(self._terms, key=order_key)

    def leading_coefficient(self) -> Fraction:
        return self._terms[self.leading_monomial()]

    def monic(self) -> Poly:
        return self.scale(1 / self.leading_coefficient())

    def sorted_terms(self) -> list[tuple[Exps, Fraction]]:
        return sorted(self._terms.items(), key=lambda t: order_key(t[0]), reverse=True)

    def partial(self, i: int) -> Poly:
        if not 0 <= i < self.n:
            raise IndexError(f"variable index {i} out of range for n={self.n}")
        out: dict[Exps, Fraction] = {}
        for e, c in self._terms.items():
            if e[i]:
                f = list(e)
                f[i] -= 1
                out[tuple(f)] = c * e[i]
        return Poly._raw(self.n, out)

    def degree_in(self, i: int) -> int:
        return max((e[i] for e in self._terms), default=-1)

    def __call__(self, point: Sequence[Number]) -> Fraction:
        return evaluate(self, point)

    def to_str(self, names: Sequence[str] | None = None) -> str:
        return format_poly(self, names)

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"Poly({self.n}, {format_poly(self)!r})"


def default_names(n: int) -> list[str]:
    return [f"x{i + 1}" for i in range(n)]


def format_poly(f: Poly, names: Sequence[str] | None = None) -> str:
    """Canonical text: terms in descending monomial order, ``p/q`` coefficients."""
    names = list(names) if names is not None else default_names(f.n)
    if len(names) != f.n:
        raise ValueError("wrong number of variable names")
    if f.is_zero():
        return "0"
    pieces: list[str] = []
    for k, (e, c) in enumerate(f.sorted_terms()):
        factors = [n if a == 1 else f"{n}^{a}" for n, a in zip(names, e) if a]
        mag = abs(c)
        if not factors:
            body = str(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = str(mag) + "*" + "*".join(factors)
        if k == 0:
            pieces.append(("-" if c < 0 else "") + body)
        else:
            pieces.append((" - " if c < 0 else " + ") + body)
    return "".join(pieces)


# module-level operations --------------------------------------------------

def poly_add(a: Poly, b: Poly) -> Poly:
    return a + b


def poly_mul(a: Poly, b: Poly) -> Poly:
    return a * b


def partial_derivative(f: Poly, i: int) -> Poly:
    return f.partial(i)


def evaluate(f: Poly, point: Sequence[Number]) -> Fraction:
    if len(point) != f.n:
        raise ValueError(f"point has length {len(point)}, expected {f.n}")
    pt = [_frac(v) for v in point]
    total = Fraction(0)
    for e, c in f.items():
        t = c
        for v, a in zip(pt, e):
            if a:
                t *= v**a
        total += t
    return total


def homogeneous_degree(f: Poly) -> int | None | Literal["zero"]:
    return f.homogeneous_degree()


def exact_divide(num: Poly, den: Poly) -> Poly | None:
    """Return ``q`` with ``num == q * den``, or ``None`` when ``den`` does not divide."""
    num._check(den)
    if den.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    lm_d = den.leading_monomial()
    lc_d = den._terms[lm_d]
    rem = dict(num._terms)
    quo: dict[Exps, Fraction] = {}
    while rem:
        lm = max(rem, key=order_key)
        if any(a < b for a, b in zip(lm, lm_d)):
            return None
        q_e = tuple(a - b for a, b in zip(lm, lm_d))
        q_c = rem[lm] / lc_d
        quo[q_e] = q_c
        for e, c in den._terms.items():
            t = tuple(a + b for a, b in zip(q_e, e))
            v = rem.get(t, 0) - q_c * c
            if v:
                rem[t] = v
            else:
                rem.pop(t, None)
    return Poly._raw(num.n, quo)


def restrict_to_line(f: Poly, p: Sequence[Number], q: Sequence[Number]) -> UniPoly:
    """The univariate polynomial ``t -> f(p + t q)``."""
    if len(p) != f.n or len(q) != f.n:
        raise ValueError("line data must have the ambient dimension")
    lines = [UniPoly([_frac(a), _frac(b)]) for a, b in zip(p, q)]
    powers: list[dict[int, UniPoly]] = [{0: UniPoly.one()} for _ in range(f.n)]

    def power(i: int, a: int) -> UniPoly:
        cache = powers[i]
        if a not in cache:
            cache[a] = power(i, a - 1) * lines[i]
        return cache[a]

    total = UniPoly.zero()
    for e, c in f.items():
        t = UniPoly.constant(c)
        for i, a in enumerate(e):
            if a:
                t = t * power(i, a)
        total = total + t
    return total


def substitute(f: Poly, forms: Sequence[Poly]) -> Poly:
    """Compose ``f`` with ``x_i -> forms[i]``; the forms may live in another ring."""
    if len(forms) != f.n:
        raise ValueError("need one substitution per variable")
    m = forms[0].n if forms else 0
    cache: list[dict[int, Poly]] = [{0: Poly.constant(m, 1)} for _ in forms]

    def power(i: int, a: int) -> Poly:
        if a not in cache[i]:
            cache[i][a] = power(i, a - 1) * forms[i]
        return cache[i][a]

    total = Poly.zero(m)
    for e, c in f.items():
        t = Poly.constant(m, c)
        for i, a in enumerate(e):
            if a:
                t = t * power(i, a)
        total = total + t
    return total


def poly_det(rows: Sequence[Sequence[Poly]]) -> Poly:
    """Determinant by Laplace expansion along rows, memoised on column subsets."""
    k = len(rows)
    if k == 0:
        raise ValueError("empty matrix")
    if any(len(r) != k for r in rows):
        raise ValueError("matrix is not square")
    n = rows[0][0].n
    memo: dict[tuple[int, int], Poly] = {}

    def minor(row: int, cols: int) -> Poly:
        # determinant of rows[row:] restricted to the column bitmask `cols`
        if row == k:
            return Poly.constant(n, 1)
        key = (row, cols)
        hit = memo.get(key)
        if hit is not None:
            return hit
        acc = Poly.zero(n)
        sign = 1
        for j in range(k):
            if not cols >> j & 1:
                continue
            entry = rows[row][j]
            if entry:
                sub = minor(row + 1, cols & ~(1 << j))
                if sub:
                    term = entry * sub
                    acc = acc + term if sign > 0 else acc - term
            sign = -sign
        memo[key] = acc
        return acc

    return minor(0, (1 << k) - 1)


class UniPoly:
    """Dense univariate polynomial over QQ, coefficients low degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Number] = ()):
        cs = [_frac(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def zero(cls) -> UniPoly:
        return cls()

    @classmethod
    def one(cls) -> UniPoly:
        return cls([1])

    @classmethod
    def constant(cls, c: Number) -> UniPoly:
        return cls([c])

    @classmethod
    def x(cls) -> UniPoly:
        return cls([0, 1])

    @classmethod
    def from_roots(cls, roots: Iterable[Number]) -> UniPoly:
        p = cls.one()
        for r in roots:
            p = p * cls([-_frac(r), 1])
        return p

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self) -> Fraction:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __eq__(self, other: object) -> bool:
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == UniPoly([other]).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __call__(self, t: Number) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def __add__(self, other: UniPoly | Number) -> UniPoly:
        if not isinstance(other, UniPoly):
            other = UniPoly([other])
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return UniPoly([x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)])

    __radd__ = __add__

    def __neg__(self) -> UniPoly:
        return UniPoly([-c for c in self.coeffs])

    def __sub__(self, other: UniPoly | Number) -> UniPoly:
        if not isinstance(other, UniPoly):
            other = UniPoly([other])
        return self + (-other)

    def __mul__(self, other: UniPoly | Number) -> UniPoly:
        if not isinstance(other, UniPoly):
            c = _frac(other)
            return UniPoly([x * c for x in self.coeffs])
        if not self.coeffs or not other.coeffs:
            return UniPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> UniPoly:
        r = UniPoly.one()
        for _ in range(k):
            r = r * self
        return r

    def derivative(self) -> UniPoly:
        return UniPoly([i * c for i, c in enumerate(self.coeffs)][1:])

    def divmod(self, other: UniPoly) -> tuple[UniPoly, UniPoly]:
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        rem = list(self.coeffs)
        dq = other.degree()
        lc = other.leading()
        quo = [Fraction(0)] * max(len(rem) - dq, 0)
        for i in range(len(rem) - 1, dq - 1, -1):
            c = rem[i] / lc
            if c:
                quo[i - dq] = c
                for j, b in enumerate(other.coeffs):
                    rem[i - dq + j] -= c * b
        return UniPoly(quo), UniPoly(rem[:dq])

    def monic(self) -> UniPoly:
        return self * (1 / self.leading())

    def __repr__(self) -> str:
        return f"UniPoly({[str(c) for c in self.coeffs]})"


def uni_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd by the Euclidean algorithm."""
    if a.is_zero() and b.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    while not b.is_zero():
        a, b = b, a.divmod(b)[1]
    return a.monic()


def is_squarefree(g: UniPoly) -> bool:
    if g.degree() <= 0:
        return True
    return uni_gcd(g, g.derivative()).degree() == 0


def parse_poly(src: str, names: Sequence[str]) -> Poly:
    from .parser import parse_poly as _parse

    return _parse(src, names)
