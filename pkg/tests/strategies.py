"""Hypothesis strategies and small random builders shared by the test modules."""

from __future__ import annotations

import random
from fractions import Fraction

from hypothesis import strategies as st

from prehom.linalg import RatMatrix, inverse
from prehom.liealg import LieAlgebraVF
from prehom.ratpoly import Poly, monomials

small_ints = st.integers(-5, 5)
rationals = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def polys(draw, n: int = 3, max_degree: int = 3, max_terms: int = 5):
    terms = draw(st.lists(
        st.tuples(st.tuples(*[st.integers(0, max_degree) for _ in range(n)]), small_ints),
        max_size=max_terms))
    out: dict = {}
    for e, c in terms:
        if sum(e) <= max_degree:
            out[e] = out.get(e, 0) + c
    return Poly(n, out)


@st.composite
def homogeneous_polys(draw, n: int = 3, max_degree: int = 4):
    d = draw(st.integers(0, max_degree))
    mons = monomials(n, d)
    coeffs = draw(st.lists(rationals, min_size=len(mons), max_size=len(mons)))
    return Poly(n, dict(zip(mons, coeffs)))


@st.composite
def matrices(draw, n: int):
    return RatMatrix(draw(st.lists(st.lists(small_ints, min_size=n, max_size=n), min_size=n, max_size=n)), n)


@st.composite
def vectors(draw, length: int):
    return draw(st.lists(rationals, min_size=length, max_size=length))


def closed_root_set(n: int, rng: random.Random) -> set[tuple[int, int]]:
    """A random set of strictly lower positions closed under composition."""
    roots = {(i, j) for i in range(n) for j in range(i) if rng.random() < 0.4}
    changed = True
    while changed:
        changed = False
        for (i, j) in list(roots):
            for (k, m) in list(roots):
                if j == k and (i, m) not in roots:
                    roots.add((i, m))
                    changed = True
    return roots


def random_invertible(n: int, rng: random.Random) -> tuple[RatMatrix, RatMatrix]:
    while True:
        p = RatMatrix([[rng.randint(-2, 2) for _ in range(n)] for _ in range(n)], n)
        try:
            return p, inverse(p)
        except ZeroDivisionError:
            continue


def random_closed_algebra(rng: random.Random, max_n: int = 3) -> LieAlgebraVF:
    """Diagonal span plus a closed set of root vectors, or a rotation block, conjugated."""
    n = rng.randint(1, max_n)
    mats: list[RatMatrix] = []
    if n >= 2 and rng.random() < 0.2:
        rot = [[0] * n for _ in range(n)]
        rot[0][1], rot[1][0] = -1, 1
        mats.append(RatMatrix(rot, n))
        if rng.random() < 0.5:
            mats.append(RatMatrix.identity(n))
    else:
        for _ in range(rng.randint(0, n)):
            mats.append(RatMatrix.diag([rng.randint(-2, 2) for _ in range(n)]))
        for i, j in sorted(closed_root_set(n, rng)):
            mats.append(RatMatrix.unit(n, i, j))
    if not any(any(m.flat()) for m in mats):
        mats.append(RatMatrix.identity(n))
    p, pinv = random_invertible(n, rng)
    mats = [p @ m @ pinv for m in mats]
    return LieAlgebraVF.spanned_by(mats, n)


def random_form(n: int, d: int, rng: random.Random, box: int = 3) -> Poly:
    return Poly(n, {m: rng.randint(-box, box) for m in monomials(n, d)})


def as_fraction_tuple(v) -> tuple[Fraction, ...]:
    return tuple(Fraction(x) for x in v)
