"""Exact integer and rational matrix algebra.

All arithmetic is exact: integer matrices use Python ints, rational ones
use Fraction entries.  Nothing here ever rounds, so every downstream
equality check is a real equality.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt, lcm

from . import kernels
from .errors import NonSquare, ParseError, Singular


@dataclass(frozen=True)
class IntMatrix:
    """Immutable integer matrix (tuple of row tuples)."""

    entries: tuple[tuple[int, ...], ...]

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    @staticmethod
    def from_rows(rows, cols: int | None = None) -> "IntMatrix":
        rows = [tuple(int(x) for x in r) for r in rows]
        if rows and any(len(r) != len(rows[0]) for r in rows):
            raise ParseError("ragged rows")
        return IntMatrix(tuple(rows))

    @staticmethod
    def identity(n: int) -> "IntMatrix":
        return IntMatrix(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    def transpose(self) -> "IntMatrix":
        return IntMatrix(tuple(zip(*self.entries))) if self.entries else self

    def mul(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise NonSquare(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        bt = list(zip(*other.entries))
        return IntMatrix(
            tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in bt) for row in self.entries)
        )

    def to_rat(self) -> "RatMatrix":
        return RatMatrix(tuple(tuple(Fraction(x) for x in row) for row in self.entries))

    def to_dict(self) -> dict:
        return {
            "rows": self.rows,
            "cols": self.cols,
            "entries": [str(x) for row in self.entries for x in row],
        }

    @staticmethod
    def from_dict(d: dict) -> "IntMatrix":
        rows, cols, flat = _check_matrix_dict(d)
        try:
            vals = [int(s) for s in flat]
        except ValueError as exc:
            raise ParseError(f"bad integer entry: {exc}") from None
        return IntMatrix(tuple(tuple(vals[i * cols : (i + 1) * cols]) for i in range(rows)))


@dataclass(frozen=True)
class RatMatrix:
    """Immutable rational matrix (tuple of row tuples of Fractions)."""

    entries: tuple[tuple[Fraction, ...], ...]

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    @staticmethod
    def from_rows(rows) -> "RatMatrix":
        rows = [tuple(Fraction(x) for x in r) for r in rows]
        if rows and any(len(r) != len(rows[0]) for r in rows):
            raise ParseError("ragged rows")
        return RatMatrix(tuple(rows))

    @staticmethod
    def identity(n: int) -> "RatMatrix":
        return IntMatrix.identity(n).to_rat()

    def transpose(self) -> "RatMatrix":
        return RatMatrix(tuple(zip(*self.entries))) if self.entries else self

    def mul(self, other: "RatMatrix") -> "RatMatrix":
        if self.cols != other.rows:
            raise NonSquare(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        bt = list(zip(*other.entries))
        return RatMatrix(
            tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in bt) for row in self.entries)
        )

    def scale(self, c: Fraction) -> "RatMatrix":
        c = Fraction(c)
        return RatMatrix(tuple(tuple(c * x for x in row) for row in self.entries))

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for row in self.entries for x in row)

    def clear_denominators(self) -> tuple[list[list[int]], int]:
        """Return (den * self as int rows, den) with den the entrywise lcm."""
        den = 1
        for row in self.entries:
            for x in row:
                den = lcm(den, x.denominator)
        scaled = [[int(x * den) for x in row] for row in self.entries]
        return scaled, den

    def to_int(self) -> IntMatrix:
        if not self.is_integral():
            raise ParseError("matrix has non-integer entries")
        return IntMatrix(tuple(tuple(int(x) for x in row) for row in self.entries))

    def to_dict(self) -> dict:
        return {
            "rows": self.rows,
            "cols": self.cols,
            "entries": [_rat_str(x) for row in self.entries for x in row],
        }

    @staticmethod
    def from_dict(d: dict) -> "RatMatrix":
        rows, cols, flat = _check_matrix_dict(d)
        try:
            vals = [Fraction(s) for s in flat]
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad rational entry: {exc}") from None
        return RatMatrix(tuple(tuple(vals[i * cols : (i + 1) * cols]) for i in range(rows)))


def _rat_str(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _check_matrix_dict(d: dict) -> tuple[int, int, list]:
    if not isinstance(d, dict):
        raise ParseError("matrix JSON must be an object")
    try:
        rows, cols, flat = int(d["rows"]), int(d["cols"]), d["entries"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad matrix JSON: {exc}") from None
    if rows < 0 or cols < 0 or not isinstance(flat, list) or len(flat) != rows * cols:
        raise ParseError("matrix JSON entry count does not match shape")
    return rows, cols, flat


def hnf(m: IntMatrix) -> IntMatrix:
    """Canonical row Hermite normal form; zero rows dropped."""
    return IntMatrix.from_rows(kernels.hnf_rows([list(r) for r in m.entries], m.cols), m.cols)


def bareiss_det(rows: list[list[int]]) -> int:
    """Fraction-free determinant of a square integer matrix."""
    m = [list(r) for r in rows]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for p in range(n - 1):
        if m[p][p] == 0:
            for r in range(p + 1, n):
                if m[r][p]:
                    m[p], m[r] = m[r], m[p]
                    sign = -sign
                    break
            else:
                return 0
        piv = m[p][p]
        for i in range(p + 1, n):
            f = m[i][p]
            ri, rp = m[i], m[p]
            for j in range(p + 1, n):
                ri[j] = (piv * ri[j] - f * rp[j]) // prev
            ri[p] = 0
        prev = piv
    return sign * m[n - 1][n - 1]


def inv_int_rows(rows: list[list[int]]) -> tuple[list[list[int]], int]:
    """Exact inverse of a square integer matrix as (numerators, den).

    Fraction-free Gauss-Jordan (Bareiss/Montante): after the sweep the
    left block is den * I and the right block is den * inverse, with
    den = +-det.  Every interior division is exact.
    """
    n = len(rows)
    m = [list(r) + [int(i == j) for j in range(n)] for i, r in enumerate(rows)]
    w = 2 * n
    prev = 1
    for p in range(n):
        if m[p][p] == 0:
            for r in range(p + 1, n):
                if m[r][p]:
                    m[p], m[r] = m[r], m[p]
                    break
            else:
                raise Singular("matrix is singular")
        piv = m[p][p]
        for i in range(n):
            if i == p:
                continue
            f = m[i][p]
            ri, rp = m[i], m[p]
            for j in range(w):
                if j == p:
                    continue
                q, rem = divmod(piv * ri[j] - f * rp[j], prev)
                if rem:
                    raise AssertionError("inexact division in fraction-free elimination")
                ri[j] = q
            ri[p] = 0
        prev = piv
    den = m[0][0] if n else 1
    for i in range(n):
        if m[i][i] != den:
            raise AssertionError("fraction-free elimination lost its diagonal invariant")
    return [m[i][n:] for i in range(n)], den


def rat_inverse(m: RatMatrix) -> RatMatrix:
    """Exact inverse of a square rational matrix."""
    if m.rows != m.cols:
        raise NonSquare("inverse needs a square matrix")
    scaled, den = m.clear_denominators()
    inv, idet = inv_int_rows(scaled)
    factor = Fraction(den, idet)
    return RatMatrix(tuple(tuple(factor * x for x in row) for row in inv))


def det(m: RatMatrix) -> Fraction:
    """Exact determinant of a square rational matrix."""
    if m.rows != m.cols:
        raise NonSquare("determinant needs a square matrix")
    scaled, den = m.clear_denominators()
    return Fraction(bareiss_det(scaled), den ** m.rows)


def dual_basis(b: RatMatrix) -> RatMatrix:
    """Basis D of the dual lattice: D . B^T = I."""
    if b.rows != b.cols:
        raise NonSquare("dual basis needs a square basis")
    return rat_inverse(b.transpose())


def canonical_basis(b: RatMatrix) -> RatMatrix:
    """Canonical representative of the row lattice of b: clear the common
    denominator, take the HNF, scale back.  Unique per lattice."""
    scaled, den = b.clear_denominators()
    h = kernels.hnf_rows(scaled, b.cols)
    return RatMatrix(tuple(tuple(Fraction(x, den) for x in row) for row in h))


def lattice_intersect(b1: RatMatrix, b2: RatMatrix) -> RatMatrix:
    """Basis of the intersection of two full-rank lattices, canonical HNF.

    Works through duals: (L1 ^ L2)* = L1* + L2*, and a basis of the sum
    is the HNF of the stacked dual bases.
    """
    if b1.cols != b2.cols:
        raise NonSquare("lattices live in different dimensions")
    d1 = dual_basis(b1)
    d2 = dual_basis(b2)
    stacked = RatMatrix(d1.entries + d2.entries)
    sum_basis = canonical_basis(stacked)
    if sum_basis.rows != b1.cols:
        raise Singular("dual sum is not full rank")
    return canonical_basis(dual_basis(sum_basis))


def lll_reduce(b: RatMatrix, delta: Fraction = Fraction(99, 100)) -> RatMatrix:
    """LLL-reduce the rows of b (independent rows required).

    Denominators are cleared first so the all-integer reduction applies;
    the output spans exactly the same lattice as the input.
    """
    delta = Fraction(delta)
    if not Fraction(1, 4) < delta <= 1:
        raise ValueError("delta must be in (1/4, 1]")
    scaled, den = b.clear_denominators()
    try:
        red = kernels.lll_rows(scaled, delta.numerator, delta.denominator)
    except ValueError as exc:
        raise Singular(str(exc)) from None
    return RatMatrix(tuple(tuple(Fraction(x, den) for x in row) for row in red))


def gram_schmidt(b: RatMatrix) -> tuple[list[list[Fraction]], list[Fraction]]:
    """Exact Gram-Schmidt: returns (mu, squared norms of the b* vectors)."""
    rows = [list(r) for r in b.entries]
    n = len(rows)
    star: list[list[Fraction]] = []
    norms: list[Fraction] = []
    mu = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        v = [Fraction(x) for x in rows[i]]
        for j in range(i):
            if norms[j] == 0:
                raise Singular("dependent rows")
            mu[i][j] = sum((a * c for a, c in zip(rows[i], star[j])), Fraction(0)) / norms[j]
            v = [a - mu[i][j] * c for a, c in zip(v, star[j])]
        star.append(v)
        norms.append(sum((x * x for x in v), Fraction(0)))
    if norms and norms[-1] == 0:
        raise Singular("dependent rows")
    return mu, norms


def enumerate_short_vectors(b: RatMatrix, bound: Fraction) -> list[tuple[int, ...]]:
    """All coefficient vectors x != 0 with ||x . b||^2 <= bound, one per
    +-pair (representative: first nonzero coefficient positive).

    Depth-first search over the exact Gram-Schmidt triangle; interval
    endpoints come from integer square roots, so the output is exact.
    Vectors appear in discovery order, which is deterministic.
    """
    bound = Fraction(bound)
    n = b.rows
    if n != b.cols:
        raise NonSquare("enumeration needs a square basis")
    if bound < 0:
        return []
    mu, norms = gram_schmidt(b)
    out: list[tuple[int, ...]] = []
    x = [0] * n

    def descend(i: int, remaining: Fraction) -> None:
        # (x_i + t)^2 * norms[i] <= remaining, t = sum_{j>i} x_j mu[j][i]
        t = sum((x[j] * mu[j][i] for j in range(i + 1, n)), Fraction(0))
        q = remaining / norms[i]
        # |x_i + t| <= sqrt(q): with t = a/bb, u = x_i*bb + a must satisfy
        # u^2 * q.den <= q.num * bb^2
        a, bb = t.numerator, t.denominator
        cap = q.numerator * bb * bb
        if cap < 0:
            return
        s = isqrt(cap // q.denominator)
        while (s + 1) * (s + 1) * q.denominator <= cap:
            s += 1
        while s * s * q.denominator > cap:
            s -= 1
        lo = -(-(-s - a) // bb)  # ceil((-s - a) / bb)
        hi = (s - a) // bb
        for xi in range(lo, hi + 1):
            x[i] = xi
            used = (xi + t) * (xi + t) * norms[i]
            if i == 0:
                if any(x):
                    out.append(tuple(x))
            else:
                descend(i - 1, remaining - used)
        x[i] = 0

    if n:
        descend(n - 1, bound)
    result = []
    for v in out:
        lead = next((c for c in v if c), 0)
        if lead > 0:
            result.append(v)
    return result


def smith_diagonalize(rows, ncols: int, track: bool = True) -> tuple[list[int], list[list[int]]]:
    """Smith form diagonal of an integer matrix, plus row generators.

    Returns (diag, w) where diag holds the invariant factors (d_i >= 0,
    d_i | d_{i+1}) and, when track is set, w is an invertible integer
    matrix such that the rows diag[i] * w[i] generate the row module of
    the input.  w tracks the inverse of the accumulated column transform.
    """
    a = [list(r) for r in rows]
    nr = len(a)
    w = [[int(i == j) for j in range(ncols)] for i in range(ncols)] if track else []

    def col_swap(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        if track:
            w[i], w[j] = w[j], w[i]

    def col_sub(j, q, t):
        # col_j -= q * col_t  mirrors as  w_row_t += q * w_row_j
        for row in a:
            row[j] -= q * row[t]
        if track:
            wt, wj = w[t], w[j]
            for idx in range(ncols):
                wt[idx] += q * wj[idx]

    def col_negate(i):
        for row in a:
            row[i] = -row[i]
        if track:
            w[i] = [-x for x in w[i]]

    r = min(nr, ncols)
    t = 0
    while t < r:
        # locate a smallest-magnitude nonzero pivot in the trailing block
        piv = None
        best = None
        for i in range(t, nr):
            for j in range(t, ncols):
                v = abs(a[i][j])
                if v and (best is None or v < best):
                    best = v
                    piv = (i, j)
        if piv is None:
            break
        while True:
            i, j = piv
            if i != t:
                a[t], a[i] = a[i], a[t]
            if j != t:
                col_swap(t, j)
            # clear column t below, then row t to the right
            dirty = False
            for i in range(t + 1, nr):
                q = a[i][t] // a[t][t]
                if q:
                    for idx in range(ncols):
                        a[i][idx] -= q * a[t][idx]
                if a[i][t]:
                    dirty = True
            for j in range(t + 1, ncols):
                q = a[t][j] // a[t][t]
                if q:
                    col_sub(j, q, t)
                if a[t][j]:
                    dirty = True
            if dirty:
                piv = None
                best = None
                for i in range(t, nr):
                    for j in range(t, ncols):
                        v = abs(a[i][j])
                        if v and (best is None or v < best):
                            best = v
                            piv = (i, j)
                continue
            # pivot must divide every entry of the trailing block
            offender = None
            for i in range(t + 1, nr):
                for j in range(t + 1, ncols):
                    if a[i][j] % a[t][t]:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            for idx in range(ncols):
                a[t][idx] += a[offender][idx]
            piv = (t, t)
        if a[t][t] < 0:
            col_negate(t)
        t += 1
    diag = [a[i][i] for i in range(t)] + [0] * (r - t)
    return diag, w
