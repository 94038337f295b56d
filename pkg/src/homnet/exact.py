"""Exact linear algebra over the rationals and integers.

Rank, linear solves and nullspaces are reduced to one primitive: the
fraction-free integer row echelon provided by the kernel backend (compiled
when available, pure Python otherwise).  Rational input rows are scaled to
integers first, which changes neither ranks, nullspaces, nor solution sets.
The Smith normal form is computed here directly; it is a diagnostic used for
torsion reporting, not a hot path.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import _kernel


def _scaled_int_row(row):
    denoms = [x.denominator for x in row if isinstance(x, Fraction)]
    if not denoms:
        return [int(x) for x in row]
    m = math.lcm(*denoms)
    return [int(x * m) if isinstance(x, Fraction) else int(x) * m for x in row]


def _echelon_of(matrix, extra=None):
    """Echelon of [matrix | extra] after per-row integer scaling."""
    rows = []
    for i, row in enumerate(matrix):
        full = list(row) + ([extra[i]] if extra is not None else [])
        rows.append(_scaled_int_row(full))
    ncols = len(rows[0]) if rows else 0
    return _kernel.echelon(rows, ncols)


def rank(matrix):
    if not matrix or not matrix[0]:
        return 0
    _, pivots = _echelon_of(matrix)
    return len(pivots)


def solve(matrix, rhs):
    """One exact solution of matrix * x = rhs with free variables set to
    zero, or None when the system is inconsistent."""
    m = len(matrix)
    n = len(matrix[0]) if m else 0
    if m == 0:
        return [Fraction(0)] * n
    rows, pivots = _echelon_of(matrix, extra=rhs)
    if pivots and pivots[-1] == n:
        return None
    x = [Fraction(0)] * n
    for k in range(len(pivots) - 1, -1, -1):
        c = pivots[k]
        acc = Fraction(rows[k][n])
        for j in range(c + 1, n):
            if x[j]:
                acc -= rows[k][j] * x[j]
        x[c] = acc / rows[k][c]
    return x


def nullspace(matrix):
    """Basis of the rational nullspace as primitive integer vectors.

    Each vector is cleared of denominators, divided by the gcd of its
    entries, and sign-fixed so its first nonzero entry is positive; basis
    vectors are ordered by their free column.
    """
    m = len(matrix)
    n = len(matrix[0]) if m else 0
    if n == 0:
        return []
    if m == 0:
        rows, pivots = [], []
    else:
        rows, pivots = _echelon_of(matrix)
    pivot_set = set(pivots)
    basis = []
    for fc in range(n):
        if fc in pivot_set:
            continue
        x = [Fraction(0)] * n
        x[fc] = Fraction(1)
        for k in range(len(pivots) - 1, -1, -1):
            c = pivots[k]
            if c > fc:
                continue
            acc = Fraction(0)
            for j in range(c + 1, n):
                if x[j]:
                    acc -= rows[k][j] * x[j]
            x[c] = acc / rows[k][c]
        basis.append(normalize_primitive(x))
    return basis


def normalize_primitive(vec):
    """Scale a rational vector to coprime integers with positive leading sign."""
    denoms = [v.denominator for v in vec if isinstance(v, Fraction)]
    m = math.lcm(*denoms) if denoms else 1
    ints = [int(v * m) for v in vec]
    g = 0
    for v in ints:
        g = math.gcd(g, abs(v))
    if g > 1:
        ints = [v // g for v in ints]
    for v in ints:
        if v:
            if v < 0:
                ints = [-w for w in ints]
            break
    return ints


# ---------------------------------------------------------------------------
# Smith normal form
# ---------------------------------------------------------------------------

@dataclass
class SNFResult:
    """U * M * V = diag(d) with U, V unimodular and d_1 | d_2 | ...

    d holds the nonzero invariant factors only; the diagonal is padded with
    zeros to the shape of M.
    """

    d: list
    U: list
    V: list

    def diagonal_matrix(self, nrows, ncols):
        out = [[0] * ncols for _ in range(nrows)]
        for k, v in enumerate(self.d):
            out[k][k] = v
        return out


def _swap_rows(mat, i, j):
    mat[i], mat[j] = mat[j], mat[i]


def _swap_cols(mat, i, j):
    for row in mat:
        row[i], row[j] = row[j], row[i]


def _add_row(mat, dst, src, k):
    mat[dst] = [a + k * b for a, b in zip(mat[dst], mat[src])]


def _add_col(mat, dst, src, k):
    for row in mat:
        row[dst] += k * row[src]


def _negate_row(mat, i):
    mat[i] = [-a for a in mat[i]]


def smith_normal_form(matrix):
    """Smith normal form of an integer matrix with transform tracking.

    The pivot is re-selected as the submatrix's smallest nonzero entry after
    every Euclidean step, which keeps the working entries from blowing up
    (reducing entries pairwise against a stale pivot is the classic way to
    explode the coefficients).
    """
    m = len(matrix)
    n = len(matrix[0]) if m else 0
    A = [list(map(int, row)) for row in matrix]
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def move_smallest_to_pivot(t):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                v = abs(A[i][j])
                if v and (best is None or v < best[0]):
                    best = (v, i, j)
        if best is None:
            return False
        _, pi, pj = best
        if pi != t:
            _swap_rows(A, pi, t)
            _swap_rows(U, pi, t)
        if pj != t:
            _swap_cols(A, pj, t)
            _swap_cols(V, pj, t)
        return True

    t = 0
    while t < min(m, n):
        if not move_smallest_to_pivot(t):
            break
        piv = A[t][t]

        # one Euclidean step against any neighbor the pivot does not divide;
        # the remainder strictly shrinks the submatrix minimum, so re-pivot
        stepped = False
        for i in range(t + 1, m):
            if A[i][t] % piv:
                q = A[i][t] // piv
                _add_row(A, i, t, -q)
                _add_row(U, i, t, -q)
                stepped = True
                break
        if stepped:
            continue
        for j in range(t + 1, n):
            if A[t][j] % piv:
                q = A[t][j] // piv
                _add_col(A, j, t, -q)
                _add_col(V, j, t, -q)
                stepped = True
                break
        if stepped:
            continue

        # the pivot divides its row and column: clear both exactly
        for i in range(t + 1, m):
            if A[i][t]:
                q = A[i][t] // piv
                _add_row(A, i, t, -q)
                _add_row(U, i, t, -q)
        for j in range(t + 1, n):
            if A[t][j]:
                q = A[t][j] // piv
                _add_col(A, j, t, -q)
                _add_col(V, j, t, -q)

        # divisibility chain: fold a column holding a non-multiple into
        # column t, then redo this stage with a shrinking pivot
        offender = None
        for i in range(t + 1, m):
            for j in range(t + 1, n):
                if A[i][j] % piv:
                    offender = j
                    break
            if offender is not None:
                break
        if offender is not None:
            _add_col(A, t, offender, 1)
            _add_col(V, t, offender, 1)
            continue
        if A[t][t] < 0:
            _negate_row(A, t)
            _negate_row(U, t)
        t += 1

    d = [A[k][k] for k in range(min(m, n)) if A[k][k]]
    return SNFResult(d=d, U=U, V=V)
