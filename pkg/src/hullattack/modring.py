"""Matrix algebra over the residue ring Z/kZ.

Z/kZ has zero divisors for composite k, so row reduction uses the Howell
normal form: the unique canonical form whose rows generate not just the
row module but every "leading zeros" truncation of it.  That uniqueness
is what lets code-level equality checks be plain tuple comparisons.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .errors import NonSquare, NotAUnit, ParseError
from .kernels import xgcd
from .linalg import IntMatrix, bareiss_det, inv_int_rows, smith_diagonalize


@dataclass(frozen=True)
class ModMatrix:
    """Immutable matrix over Z/kZ; entries normalized into [0, k)."""

    k: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    @property
    def rows(self) -> int:
        return len(self.entries)

    @staticmethod
    def from_rows(k: int, rows, cols: int | None = None) -> "ModMatrix":
        if k < 2:
            raise ParseError(f"modulus must be at least 2, got {k}")
        rows = [tuple(int(x) % k for x in r) for r in rows]
        if rows:
            cols = len(rows[0])
            if any(len(r) != cols for r in rows):
                raise ParseError("ragged rows")
        elif cols is None:
            raise ParseError("empty matrix needs an explicit column count")
        return ModMatrix(k, cols, tuple(rows))

    @staticmethod
    def identity(k: int, n: int) -> "ModMatrix":
        return ModMatrix.from_rows(k, [[int(i == j) for j in range(n)] for i in range(n)], n)

    def transpose(self) -> "ModMatrix":
        if not self.entries:
            return ModMatrix(self.k, 0, tuple(() for _ in range(self.cols)))
        return ModMatrix(self.k, self.rows, tuple(zip(*self.entries)))

    def mul(self, other: "ModMatrix") -> "ModMatrix":
        if self.k != other.k:
            raise ParseError("modulus mismatch")
        if self.cols != other.rows:
            raise NonSquare(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        k = self.k
        bt = list(zip(*other.entries)) if other.entries else [()] * other.cols
        out = tuple(
            tuple(sum(a * b for a, b in zip(row, col)) % k for col in bt) for row in self.entries
        )
        return ModMatrix(k, other.cols, out)

    def stack(self, other: "ModMatrix") -> "ModMatrix":
        if self.k != other.k or self.cols != other.cols:
            raise ParseError("stack needs matching modulus and width")
        return ModMatrix(self.k, self.cols, self.entries + other.entries)

    def lift(self) -> IntMatrix:
        """Entries as plain integers in [0, k)."""
        return IntMatrix(self.entries)

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "rows": self.rows,
            "cols": self.cols,
            "entries": [int(x) for row in self.entries for x in row],
        }

    @staticmethod
    def from_dict(d: dict) -> "ModMatrix":
        if not isinstance(d, dict):
            raise ParseError("mod matrix JSON must be an object")
        try:
            k = int(d["k"])
            rows, cols, flat = int(d["rows"]), int(d["cols"]), d["entries"]
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"bad mod matrix JSON: {exc}") from None
        if k < 2:
            raise ParseError(f"modulus must be at least 2, got {k}")
        if rows < 0 or cols < 0 or not isinstance(flat, list) or len(flat) != rows * cols:
            raise ParseError("mod matrix JSON entry count does not match shape")
        vals = []
        for s in flat:
            if not isinstance(s, int) or not 0 <= s < k:
                raise ParseError(f"mod matrix entry {s!r} outside [0, {k})")
            vals.append(s)
        return ModMatrix(k, cols, tuple(tuple(vals[i * cols : (i + 1) * cols]) for i in range(rows)))


def unit_multiplier(a: int, k: int) -> int:
    """A unit u mod k with u*a = gcd(a, k) (mod k)."""
    a %= k
    g = gcd(a, k)
    if g == k:
        return 1
    b, k1 = a // g, k // g
    u = pow(b, -1, k1)
    while gcd(u, k) != 1:
        u += k1
    return u % k


def _howell_rows(rows, cols: int, k: int) -> list[list[int]]:
    m = [list(r) for r in rows]
    r = 0
    for c in range(cols):
        piv = None
        for i in range(r, len(m)):
            if m[i][c]:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        # fold every lower row into the pivot row with a 2x2 transform
        # that is unimodular over Z, hence invertible mod k
        for i in range(r + 1, len(m)):
            b = m[i][c]
            if not b:
                continue
            a = m[r][c]
            g, x, y = xgcd(a, b)
            u, v = -(b // g), a // g
            ri, rj = m[r], m[i]
            for t in range(cols):
                rt, it = ri[t], rj[t]
                ri[t] = (x * rt + y * it) % k
                rj[t] = (u * rt + v * it) % k
        # normalize the pivot to its canonical divisor of k
        a = m[r][c]
        g = gcd(a, k)
        if a != g:
            u = unit_multiplier(a, k)
            m[r] = [(u * t) % k for t in m[r]]
        p = m[r][c]
        for i in range(r):
            q = m[i][c] // p
            if q:
                ri, rr = m[i], m[r]
                for t in range(cols):
                    ri[t] = (ri[t] - q * rr[t]) % k
        # the annihilator of the pivot scales this row into new content
        # that only shows up in later columns
        ann = k // p
        extra = [(ann * t) % k for t in m[r]]
        if any(extra):
            m.append(extra)
        r += 1
    return m[:r]


def howell_form(m: ModMatrix) -> ModMatrix:
    """Canonical Howell normal form; zero rows dropped."""
    return ModMatrix(m.k, m.cols, tuple(tuple(r) for r in _howell_rows(m.entries, m.cols, m.k)))


def kernel_mod(m: ModMatrix) -> ModMatrix:
    """Howell-form generator of {x in Z_k^cols : x . M^T = 0}."""
    n = m.cols
    a = m.transpose()
    aug = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(a.entries)]
    h = _howell_rows(aug, a.cols + n, m.k)
    gens = [row[a.cols :] for row in h if not any(row[: a.cols])]
    return ModMatrix(m.k, n, tuple(tuple(r) for r in gens))


def _inverse_by_elimination(m: ModMatrix) -> ModMatrix | None:
    """Gauss-Jordan restricted to unit pivots; None when it stalls."""
    n, k = m.rows, m.k
    a = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(m.entries)]
    for p in range(n):
        piv = next((r for r in range(p, n) if gcd(a[r][p], k) == 1), None)
        if piv is None:
            return None
        a[p], a[piv] = a[piv], a[p]
        inv = pow(a[p][p], -1, k)
        a[p] = [(inv * x) % k for x in a[p]]
        for i in range(n):
            if i != p and a[i][p]:
                f = a[i][p]
                ai, ap = a[i], a[p]
                for t in range(2 * n):
                    ai[t] = (ai[t] - f * ap[t]) % k
    return ModMatrix(k, n, tuple(tuple(row[n:]) for row in a))


def inverse_mod(m: ModMatrix) -> ModMatrix:
    """Exact inverse over Z/kZ; raises NotAUnit when det is not a unit."""
    if m.rows != m.cols:
        raise NonSquare("inverse needs a square matrix")
    k = m.k
    d = bareiss_det([list(r) for r in m.entries]) % k
    if gcd(d, k) != 1:
        raise NotAUnit(f"determinant {d} is not a unit mod {k}")
    got = _inverse_by_elimination(m)
    if got is not None:
        return got
    # no unit pivot available even though det is a unit: fall back to the
    # integer adjugate, which is always defined
    num, den = inv_int_rows([list(r) for r in m.entries])
    f = pow(den % k, -1, k)
    return ModMatrix(k, m.cols, tuple(tuple((x * f) % k for x in row) for row in num))


def is_unit_det(m: ModMatrix) -> bool:
    """True when det(M) is invertible mod k (M square)."""
    if m.rows != m.cols:
        raise NonSquare("determinant needs a square matrix")
    return gcd(bareiss_det([list(r) for r in m.entries]) % m.k, m.k) == 1


def is_free_rows(m: ModMatrix) -> bool:
    """True when the rows of M are linearly independent over Z/kZ.

    Rows are independent exactly when rows <= cols and every invariant
    factor of the lifted integer matrix is a unit mod k.
    """
    if m.rows == 0:
        return True
    if m.rows > m.cols:
        return False
    diag, _ = smith_diagonalize([list(r) for r in m.entries], m.cols, track=False)
    return all(gcd(d, m.k) == 1 for d in diag)


def row_module_structure(m: ModMatrix) -> tuple[tuple[int, ...], ModMatrix]:
    """Invariant factors and a minimal generating matrix of the row module.

    Stacks k*I under the lifted rows and Smith-diagonalizes with row
    tracking: the module decomposes as the direct sum of d_i * Z_k over
    the returned factors (each dividing k, in divisibility order), and
    the rows d_i * w_i with d_i < k form a minimal generating set.  The
    module is free exactly when every factor is 1 or k, and then the
    generator rows are themselves independent.
    """
    k, n = m.k, m.cols
    lifted = [list(r) for r in m.entries]
    lifted += [[k * int(i == j) for j in range(n)] for i in range(n)]
    diag, w = smith_diagonalize(lifted, n)
    if len(diag) != n or any(d == 0 or k % d for d in diag):
        raise AssertionError("row module of a mod-k matrix must have full integer rank")
    gens = [[(d * x) % k for x in w[i]] for i, d in enumerate(diag) if d < k]
    return tuple(diag), ModMatrix.from_rows(k, gens, n)
