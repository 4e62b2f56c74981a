"""Exact integer and rational linear algebra on plain tuples.

Vectors are ``tuple[int, ...]`` (or tuples of :class:`~fractions.Fraction`
where noted) and matrices are tuples of row tuples. Everything is arbitrary
precision; there is deliberately no floating point anywhere in this module or
anywhere downstream of it — the geometric claims the kernel makes are
equalities, so they are decided by equalities.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from operator import mul
from typing import Sequence

Vec = tuple[int, ...]
Mat = tuple[Vec, ...]
QVec = tuple[Fraction, ...]


# ---------------------------------------------------------------------------
# vectors

def dot(u: Sequence, v: Sequence):
    if len(u) != len(v):
        raise ValueError("dot of vectors with different lengths")
    return sum(map(mul, u, v))


def vadd(u: Sequence, v: Sequence) -> tuple:
    return tuple(a + b for a, b in zip(u, v, strict=True))


def vsub(u: Sequence, v: Sequence) -> tuple:
    return tuple(a - b for a, b in zip(u, v, strict=True))


def vneg(u: Sequence) -> tuple:
    return tuple(-a for a in u)


def vscale(k, u: Sequence) -> tuple:
    return tuple(k * a for a in u)


def is_zero(u: Sequence) -> bool:
    return all(a == 0 for a in u)


def primitive(v: Sequence[int]) -> Vec:
    """``v`` divided by the gcd of its entries; rejects the zero vector."""
    g = 0
    for a in v:
        g = gcd(g, a)
    if g == 0:
        raise ValueError("zero vector has no primitive representative")
    return tuple(a // g for a in v)


def clear_denominators(v: Sequence[Fraction | int]) -> Vec:
    """Scale a rational vector by the lcm of its denominators to an integer one."""
    fracs = [Fraction(a) for a in v]
    scale = 1
    for a in fracs:
        scale = scale * a.denominator // gcd(scale, a.denominator)
    return tuple(int(a * scale) for a in fracs)


# ---------------------------------------------------------------------------
# matrices

def identity(n: int) -> Mat:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def transpose(m: Sequence[Sequence]) -> tuple:
    return tuple(zip(*m, strict=True)) if m else ()


def mat_vec(m: Sequence[Sequence], v: Sequence) -> tuple:
    return tuple(dot(row, v) for row in m)


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> tuple:
    bt = transpose(b)
    return tuple(tuple(dot(row, col) for col in bt) for row in a)


def det(m: Sequence[Sequence[int]]) -> int:
    """Exact determinant by Bareiss fraction-free elimination.

    All intermediate divisions are exact, so the computation stays in the
    integers while keeping entry growth polynomial. (The independent cofactor
    oracle lives in the test suite, not here.)
    """
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("determinant requires a square matrix")
    if n == 0:
        return 1
    a = [list(row) for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def det_mod_p(m: Sequence[Sequence[int]], p: int) -> int:
    """det(m) reduced into {0, ..., p-1}; p must be prime."""
    from sympy import isprime

    if p < 2 or not isprime(p):
        raise ValueError(f"{p} is not prime")
    return det(m) % p


def rank(m: Sequence[Sequence[int]]) -> int:
    """Rank over the rationals, computed fraction-free."""
    a = [list(row) for row in m]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(r + 1, rows):
            if a[i][c] != 0:
                f, g = a[r][c], a[i][c]
                a[i] = [f * a[i][j] - g * a[r][j] for j in range(cols)]
        r += 1
        if r == rows:
            break
    return r


# ---------------------------------------------------------------------------
# normal forms

def hermite_normal_form(m: Sequence[Sequence[int]]) -> tuple[Mat, Mat]:
    """Row-style Hermite normal form.

    Returns ``(h, u)`` with ``h = u @ m``, ``u`` unimodular, pivots positive,
    entries above each pivot reduced into ``[0, pivot)``, and zero rows at the
    bottom. This fixes one convention once and for all; nothing downstream
    depends on any other.
    """
    a = [list(row) for row in m]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    u = [list(row) for row in identity(rows)]

    def rowop(i: int, j: int, q: int) -> None:
        # row_i -= q * row_j, applied to both a and u
        a[i] = [x - q * y for x, y in zip(a[i], a[j])]
        u[i] = [x - q * y for x, y in zip(u[i], u[j])]

    r = 0
    for c in range(cols):
        # Euclid on column c among rows r..: keep subtracting multiples of the
        # row with the smallest nonzero entry until one survivor remains.
        while True:
            live = [i for i in range(r, rows) if a[i][c] != 0]
            if len(live) <= 1:
                break
            piv = min(live, key=lambda i: (abs(a[i][c]), i))
            for i in live:
                if i != piv:
                    rowop(i, piv, a[i][c] // a[piv][c])
        live = [i for i in range(r, rows) if a[i][c] != 0]
        if not live:
            continue
        i = live[0]
        if i != r:
            a[r], a[i] = a[i], a[r]
            u[r], u[i] = u[i], u[r]
        if a[r][c] < 0:
            a[r] = [-x for x in a[r]]
            u[r] = [-x for x in u[r]]
        for i in range(r):
            if a[i][c] % a[r][c] != 0 or not (0 <= a[i][c] < a[r][c]):
                rowop(i, r, a[i][c] // a[r][c])
        r += 1
        if r == rows:
            break
    return tuple(tuple(row) for row in a), tuple(tuple(row) for row in u)


def smith_normal_form(m: Sequence[Sequence[int]]) -> tuple[Mat, Mat, Mat]:
    """Smith normal form with both transforms.

    Returns ``(s, u, v)`` with ``s = u @ m @ v`` diagonal, diagonal entries
    nonnegative with ``s[i] | s[i+1]``, and ``u``, ``v`` unimodular.
    """
    a = [list(row) for row in m]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    u = [list(row) for row in identity(rows)]
    v = [list(row) for row in identity(cols)]

    def row_sub(i: int, j: int, q: int) -> None:
        a[i] = [x - q * y for x, y in zip(a[i], a[j])]
        u[i] = [x - q * y for x, y in zip(u[i], u[j])]

    def col_sub(i: int, j: int, q: int) -> None:
        for row in a:
            row[i] -= q * row[j]
        for row in v:
            row[i] -= q * row[j]

    def row_swap(i: int, j: int) -> None:
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def col_swap(i: int, j: int) -> None:
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    t = 0
    while t < min(rows, cols):
        # Deterministic pivot: smallest |entry| in the remaining block.
        pivot = min(
            ((i, j) for i in range(t, rows) for j in range(t, cols) if a[i][j] != 0),
            key=lambda ij: (abs(a[ij[0]][ij[1]]), ij),
            default=None,
        )
        if pivot is None:
            break
        row_swap(t, pivot[0])
        col_swap(t, pivot[1])
        dirty = True
        while dirty:
            dirty = False
            for i in range(t + 1, rows):
                if a[i][t] != 0:
                    row_sub(i, t, a[i][t] // a[t][t])
                    if a[i][t] != 0:
                        row_swap(t, i)
                        dirty = True
            for j in range(t + 1, cols):
                if a[t][j] != 0:
                    col_sub(j, t, a[t][j] // a[t][t])
                    if a[t][j] != 0:
                        col_swap(t, j)
                        dirty = True
        # Divisibility fix-up: fold any non-multiple into the working row and
        # redo the elimination; |pivot| strictly drops, so this terminates.
        offender = next(
            (
                (i, j)
                for i in range(t + 1, rows)
                for j in range(t + 1, cols)
                if a[i][j] % a[t][t] != 0
            ),
            None,
        )
        if offender is not None:
            row_sub(t, offender[0], -1)
            continue
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    return (
        tuple(tuple(row) for row in a),
        tuple(tuple(row) for row in u),
        tuple(tuple(row) for row in v),
    )


def invariant_factors(m: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Nonzero diagonal of the Smith form."""
    s, _, _ = smith_normal_form(m)
    return tuple(s[i][i] for i in range(min(len(s), len(s[0]) if s else 0)) if s[i][i] != 0)


def solve_rational(m: Sequence[Sequence[int]], b: Sequence[int]) -> QVec | None:
    """One exact rational solution of ``m @ x = b``, or None if inconsistent.

    Underdetermined systems get the particular solution with all free
    variables set to zero (first-nonzero pivoting, so the answer is
    deterministic). The result substituted back satisfies the system exactly.
    """
    rows = len(m)
    if rows != len(b):
        raise ValueError("right-hand side length does not match row count")
    cols = len(m[0]) if rows else 0
    a = [[Fraction(x) for x in row] + [Fraction(y)] for row, y in zip(m, b)]
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        a[r] = [x / a[r][c] for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    if any(is_zero(row[:cols]) and row[cols] != 0 for row in a):
        return None
    x = [Fraction(0)] * cols
    for i, c in enumerate(pivots):
        x[c] = a[i][cols]
    return tuple(x)


def kernel_basis(m: Sequence[Sequence[int]]) -> tuple[Vec, ...]:
    """Z-basis of the integer kernel {x : m @ x = 0} (a saturated lattice)."""
    rows = len(m)
    cols = len(m[0]) if rows else 0
    if rows == 0:
        return identity(cols)
    s, _, v = smith_normal_form(m)
    d = min(rows, cols)
    out = []
    for j in range(cols):
        if j >= d or s[j][j] == 0:
            out.append(tuple(v[i][j] for i in range(cols)))
    return tuple(out)


def unimodular_inverse(u: Sequence[Sequence[int]]) -> Mat:
    """Exact inverse of a unimodular matrix (integer, by Cramer via solves)."""
    n = len(u)
    cols = []
    for j in range(n):
        e = tuple(1 if i == j else 0 for i in range(n))
        x = solve_rational(u, e)
        if x is None or any(f.denominator != 1 for f in x):
            raise ValueError("matrix is not unimodular")
        cols.append(tuple(int(f) for f in x))
    return transpose(cols)


# ---------------------------------------------------------------------------
# saturated spans

@dataclass(frozen=True)
class SpanLattice:
    """The saturated lattice (Q-span ∩ Z^dim) of a set of integer vectors.

    ``basis`` is a Z-basis of that lattice; ``proj`` are integer functionals
    with proj[i] · basis[j] = δ_ij, so any member x decomposes exactly as
    x = Σ (proj[i]·x) basis[i]; ``equations`` cut out the linear span.
    """

    dim: int
    basis: tuple[Vec, ...]
    proj: tuple[Vec, ...]
    equations: tuple[Vec, ...]

    def __post_init__(self):
        ident = identity(self.dim)
        object.__setattr__(
            self,
            "trivial",
            self.basis == ident and self.proj == ident and not self.equations,
        )

    @property
    def rank(self) -> int:
        return len(self.basis)

    def contains(self, x: Sequence) -> bool:
        return all(dot(e, x) == 0 for e in self.equations)

    def coords(self, x: Sequence) -> tuple:
        if self.trivial:
            return tuple(x)
        if not self.contains(x):
            raise ValueError("vector lies outside the span")
        return tuple(dot(p, x) for p in self.proj)

    def lift(self, y: Sequence) -> tuple:
        if self.trivial:
            return tuple(y)
        out: tuple = (0,) * self.dim
        for c, b in zip(y, self.basis, strict=True):
            out = vadd(out, vscale(c, b))
        return out

    def lift_functional(self, f: Sequence[int]) -> Vec:
        """An integer functional on Z^dim restricting to y ↦ ⟨f, y⟩ in coords."""
        if self.trivial:
            return tuple(f)
        out = (0,) * self.dim
        for c, p in zip(f, self.proj, strict=True):
            out = vadd(out, vscale(c, p))
        return out


def span_lattice(vectors: Sequence[Sequence[int]], dim: int) -> SpanLattice:
    """Compute the saturated span of integer vectors in Z^dim.

    Works through the Smith form of the matrix with the vectors as columns:
    if s = u·m·v then the first r columns of u^{-1} are a basis of the
    saturation and the first r rows of u give the coordinates.
    """
    nonzero = [tuple(v) for v in vectors if not is_zero(v)]
    if not nonzero:
        return SpanLattice(dim, (), (), identity(dim))
    if rank(nonzero) == dim:
        # Full span: the saturation is all of Z^dim, so use the standard
        # basis and skip the Smith machinery (keeps coordinates natural).
        return SpanLattice(dim, identity(dim), identity(dim), ())
    m = transpose(nonzero)  # dim x k, columns are the vectors
    s, u, _ = smith_normal_form(m)
    r = sum(1 for i in range(min(dim, len(nonzero))) if s[i][i] != 0)
    uinv = unimodular_inverse(u)
    basis = tuple(tuple(uinv[i][j] for i in range(dim)) for j in range(r))
    proj = tuple(tuple(u[i]) for i in range(r))
    equations = tuple(tuple(u[i]) for i in range(r, dim))
    return SpanLattice(dim, basis, proj, equations)
