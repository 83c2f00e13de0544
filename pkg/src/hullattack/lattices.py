"""Full-rank rational lattices, Construction A, hulls, and rotations.

A LatticeBasis keeps the literal basis rows it was built with (rotations
must preserve the Gram matrix, so rows are never silently rebased) and
caches a canonical HNF form for set-level equality.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import lcm

from .codes import LinearCode, from_generator
from .errors import (
    DimensionMismatch,
    DoesNotContainKZn,
    NotARotation,
    NotIntegral,
    ParseError,
    Singular,
)
from .linalg import (
    IntMatrix,
    RatMatrix,
    bareiss_det,
    canonical_basis,
    hnf,
)
from .modring import ModMatrix, kernel_mod

PYTHAGOREAN_TRIPLES = ((3, 4, 5), (5, 12, 13), (8, 15, 17), (7, 24, 25))


@dataclass(frozen=True)
class LatticeBasis:
    """Basis of a full-rank lattice in Q^n, kept exactly as given."""

    n: int
    basis: RatMatrix

    def __post_init__(self):
        if self.basis.rows != self.n or self.basis.cols != self.n:
            raise DimensionMismatch(
                f"basis must be {self.n}x{self.n}, got {self.basis.rows}x{self.basis.cols}"
            )
        scaled, _ = self.basis.clear_denominators()
        if bareiss_det(scaled) == 0:
            raise Singular("basis rows are dependent")

    @property
    def denominator(self) -> int:
        """Common denominator cleared during canonicalization."""
        d = 1
        for row in self.basis.entries:
            for x in row:
                d = lcm(d, x.denominator)
        return d

    @cached_property
    def canonical(self) -> RatMatrix:
        return canonical_basis(self.basis)

    def gram(self) -> RatMatrix:
        return self.basis.mul(self.basis.transpose())

    def contains(self, v) -> bool:
        """Exact membership of a rational vector."""
        v = [Fraction(x) for x in v]
        if len(v) != self.n:
            raise DimensionMismatch(f"vector length {len(v)} != {self.n}")
        den = self.denominator
        h = [[int(x * den) for x in row] for row in self.canonical.entries]
        w = [x * den for x in v]
        if any(x.denominator != 1 for x in w):
            return False
        w = [int(x) for x in w]
        for i in range(self.n):
            q, r = divmod(w[i], h[i][i])
            if r:
                return False
            if q:
                for j in range(i, self.n):
                    w[j] -= q * h[i][j]
        return True

    def to_dict(self) -> dict:
        d = self.basis.to_dict()
        d["n"] = self.n
        return d

    @staticmethod
    def from_dict(d: dict) -> "LatticeBasis":
        m = RatMatrix.from_dict(d)
        try:
            n = int(d["n"])
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"bad lattice JSON: {exc}") from None
        if m.rows != n or m.cols != n:
            raise ParseError(f"lattice basis must be {n}x{n}")
        try:
            return LatticeBasis(n, m)
        except (DimensionMismatch, Singular) as exc:
            raise ParseError(str(exc)) from None


@dataclass(frozen=True)
class RationalOrthogonal:
    """Exactly orthonormal rational matrix: M . M^T = I."""

    matrix: RatMatrix

    def __post_init__(self):
        m = self.matrix
        if m.rows != m.cols:
            raise NotARotation("orthonormal matrix must be square")
        if m.mul(m.transpose()) != RatMatrix.identity(m.rows):
            raise NotARotation("matrix rows are not orthonormal")

    @property
    def n(self) -> int:
        return self.matrix.rows

    def inverse(self) -> "RationalOrthogonal":
        return RationalOrthogonal(self.matrix.transpose())

    def compose(self, other: "RationalOrthogonal") -> "RationalOrthogonal":
        return RationalOrthogonal(self.matrix.mul(other.matrix))

    def to_dict(self) -> dict:
        return self.matrix.to_dict()

    @staticmethod
    def from_dict(d: dict) -> "RationalOrthogonal":
        try:
            return RationalOrthogonal(RatMatrix.from_dict(d))
        except NotARotation as exc:
            raise ParseError(str(exc)) from None


def construction_a(c: LinearCode) -> LatticeBasis:
    """The lattice {x in Z^n : x mod k in C}, as the HNF of the lifted
    generator stacked over k*I."""
    k, n = c.k, c.n
    rows = [list(r) for r in c.gen.entries]
    rows += [[k * int(i == j) for j in range(n)] for i in range(n)]
    h = hnf(IntMatrix.from_rows(rows))
    if h.rows != n:
        raise Singular("construction lattice is not full rank")
    return LatticeBasis(n, h.to_rat())


def s_hull(lattice: LatticeBasis, s: int) -> LatticeBasis:
    """The s-hull: the intersection of L with s times its dual.

    In basis coordinates x = c.B the dual condition x.y in sZ for all
    y in L reads c.G = 0 mod s*den (G the Gram matrix cleared of its
    denominator den), so the coefficient lattice is a kernel over
    Z_{s*den} plus (s*den)Z^n.  An explicit dual basis would square the
    entry denominators of a rotated basis; this stays small.
    """
    if s < 1:
        raise ValueError(f"scale must be positive, got {s}")
    n = lattice.n
    g = lattice.gram()
    den = 1
    for row in g.entries:
        for x in row:
            den = lcm(den, x.denominator)
    big = s * den
    cleared = ModMatrix.from_rows(big, [[int(x * den) for x in row] for row in g.entries])
    ker = kernel_mod(cleared)
    rows = [list(r) for r in ker.lift().entries]
    rows += [[big * int(i == j) for j in range(n)] for i in range(n)]
    coeff = hnf(IntMatrix.from_rows(rows))
    if coeff.rows != n:
        raise Singular("hull coefficient lattice is not full rank")
    return LatticeBasis(n, coeff.to_rat().mul(lattice.basis))


def rotate(lattice: LatticeBasis, o: RationalOrthogonal) -> LatticeBasis:
    """Apply the orthonormal transform row-wise: rows become row . O^T.

    The Gram matrix of the returned basis equals the input's exactly.
    """
    if o.n != lattice.n:
        raise DimensionMismatch(f"transform is {o.n}-dimensional, lattice is {lattice.n}")
    return LatticeBasis(lattice.n, lattice.basis.mul(o.matrix.transpose()))


def lattice_equal(a: LatticeBasis, b: LatticeBasis) -> bool:
    """Set-level equality via canonical forms."""
    return a.n == b.n and a.canonical == b.canonical


def mod_reduce_to_code(lattice: LatticeBasis, k: int) -> LinearCode:
    """Recover the code C with L = C + k*Z^n from an integral lattice
    containing k*Z^n."""
    if not lattice.basis.is_integral():
        raise NotIntegral("lattice basis has non-integer entries")
    n = lattice.n
    for i in range(n):
        if not lattice.contains([k * int(i == j) for j in range(n)]):
            raise DoesNotContainKZn(f"k*e_{i + 1} is not in the lattice")
    rows = [[int(x) % k for x in row] for row in lattice.basis.entries]
    return from_generator(ModMatrix.from_rows(k, rows, n))


def random_signed_perm_matrix(n: int, rng: random.Random) -> RatMatrix:
    sigma = list(range(n))
    rng.shuffle(sigma)
    rows = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        rows[i][sigma[i]] = Fraction(rng.choice((1, -1)))
    return RatMatrix.from_rows(rows)


def random_rational_orthogonal(n: int, seed: int, depth: int | None = None) -> RationalOrthogonal:
    """Exact orthonormal transform: a product of `depth` Pythagorean
    Givens rotations followed by a random signed permutation."""
    if n < 1:
        raise ValueError("dimension must be positive")
    if depth is None:
        depth = 2 * n
    rng = random.Random(seed)
    m = RatMatrix.identity(n)
    if n >= 2:
        for _ in range(depth):
            i = rng.randrange(n)
            j = rng.randrange(n - 1)
            if j >= i:
                j += 1
            a, b, c = PYTHAGOREAN_TRIPLES[rng.randrange(len(PYTHAGOREAN_TRIPLES))]
            cos = Fraction(a, c)
            sin = Fraction(b, c) if rng.randrange(2) == 0 else Fraction(-b, c)
            g = [[Fraction(int(r == t)) for t in range(n)] for r in range(n)]
            g[i][i] = cos
            g[i][j] = sin
            g[j][i] = -sin
            g[j][j] = cos
            m = m.mul(RatMatrix.from_rows(g))
    m = m.mul(random_signed_perm_matrix(n, rng))
    return RationalOrthogonal(m)
