"""Exact linear algebra: integer normal forms and Fraction matrices.

Integer matrices are plain lists of lists of Python ints (arbitrary
precision).  The Smith normal form returns the transformation matrices,
which the toric-model construction needs; determinants use fraction-free
Bareiss elimination.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

Q = Fraction

IntMatrix = list[list[int]]


def identity(n: int) -> IntMatrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(a, b):
    rows, inner, cols = len(a), len(b), len(b[0])
    out = [[0] * cols for _ in range(rows)]
    for i in range(rows):
        ai = a[i]
        oi = out[i]
        for k in range(inner):
            c = ai[k]
            if c:
                bk = b[k]
                for j in range(cols):
                    oi[j] += c * bk[j]
    return out


def mat_vec(a, v):
    return [sum(a[i][j] * v[j] for j in range(len(v))) for i in range(len(a))]


def transpose(a):
    return [list(row) for row in zip(*a)]


def det_bareiss(m: IntMatrix) -> int:
    """Exact determinant of a square integer matrix (fraction-free)."""
    n = len(m)
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
        pk = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (pk * a[i][j] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = pk
    return sign * a[n - 1][n - 1]


# ---------------------------------------------------------------------------
# Smith normal form
# ---------------------------------------------------------------------------


def smith_normal_form(m: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return (U, S, V) with U*m*V = S, U and V unimodular, S diagonal
    with nonnegative entries satisfying d_i | d_{i+1}.

    Fraction-free integer elimination with pivoting by least absolute value.
    """
    rows = len(m)
    cols = len(m[0]) if rows else 0
    a = [list(r) for r in m]
    u = identity(rows)
    v = identity(cols)

    def row_op(i, j, c):  # row_i -= c * row_j
        a[i] = [x - c * y for x, y in zip(a[i], a[j])]
        u[i] = [x - c * y for x, y in zip(u[i], u[j])]

    def col_op(i, j, c):  # col_i -= c * col_j
        for r in a:
            r[i] -= c * r[j]
        for r in v:
            r[i] -= c * r[j]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]

    t = 0
    while t < min(rows, cols):
        # locate the nonzero entry of least absolute value in the submatrix
        piv = None
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                x = a[i][j]
                if x != 0 and (best is None or abs(x) < best):
                    best = abs(x)
                    piv = (i, j)
        if piv is None:
            break
        swap_rows(t, piv[0])
        swap_cols(t, piv[1])
        # clear row and column t; restart if a reduction produced a smaller entry
        dirty = True
        while dirty:
            dirty = False
            for i in range(t + 1, rows):
                if a[i][t] != 0:
                    q = a[i][t] // a[t][t]
                    row_op(i, t, q)
                    if a[i][t] != 0:
                        swap_rows(t, i)
                        dirty = True
            for j in range(t + 1, cols):
                if a[t][j] != 0:
                    q = a[t][j] // a[t][t]
                    col_op(j, t, q)
                    if a[t][j] != 0:
                        swap_cols(t, j)
                        dirty = True
        # enforce divisibility of the remaining block by the pivot
        p = a[t][t]
        fixed = False
        for i in range(t + 1, rows):
            for j in range(t + 1, cols):
                if a[i][j] % p != 0:
                    row_op(t, i, -1)  # add row i to row t, then redo this pivot
                    fixed = True
                    break
            if fixed:
                break
        if fixed:
            continue
        if p < 0:
            negate_row(t)
        t += 1
    return u, a, v


def invariant_factors(m: IntMatrix) -> list[int]:
    _, s, _ = smith_normal_form(m)
    out = []
    for i in range(min(len(s), len(s[0]) if s else 0)):
        if s[i][i] != 0:
            out.append(s[i][i])
    return out


def kernel_basis(v: list[int]) -> list[list[int]]:
    """Basis of the saturated lattice {x in Z^l : v.x = 0} (length l-1).

    Derived from the column transform of the SNF of the 1 x l matrix [v]:
    the columns of V past the first one span the kernel.
    """
    if all(x == 0 for x in v):
        raise ValueError("kernel_basis requires a nonzero vector")
    _, s, w = smith_normal_form([list(v)])
    cols = len(v)
    basis = []
    for j in range(1, cols):
        basis.append([w[i][j] for i in range(cols)])
    return basis


def egcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, x, y) with a*x + b*y = g = gcd(a, b)."""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if old_r < 0:
        old_r, old_x, old_y = -old_r, -old_x, -old_y
    return old_r, old_x, old_y


def bezout_vector(v: list[int]) -> list[int]:
    """An integer vector k with v.k = gcd(v) (requires some nonzero entry)."""
    k = [0] * len(v)
    g = 0
    for i, a in enumerate(v):
        if a == 0:
            continue
        if g == 0:
            g = abs(a)
            k[i] = 1 if a > 0 else -1
            continue
        g2, x, y = egcd(g, a)
        k = [c * x for c in k]
        k[i] = y
        g = g2
    if g == 0:
        raise ValueError("zero vector has no Bezout certificate")
    return k


# ---------------------------------------------------------------------------
# dense matrices over Q
# ---------------------------------------------------------------------------


def q_matrix(m) -> list[list[Fraction]]:
    return [[Q(x) for x in row] for row in m]


def q_identity(n: int) -> list[list[Fraction]]:
    return [[Q(1) if i == j else Q(0) for j in range(n)] for i in range(n)]


def q_rank(m) -> int:
    a = [list(row) for row in q_matrix(m)]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    rank = 0
    for c in range(cols):
        piv = None
        for i in range(rank, rows):
            if a[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        inv = 1 / a[rank][c]
        a[rank] = [x * inv for x in a[rank]]
        for i in range(rows):
            if i != rank and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[rank])]
        rank += 1
        if rank == rows:
            break
    return rank


def q_solve(m, rhs) -> list[Fraction]:
    """Solve the square system m*x = rhs exactly (raises on singular m)."""
    a = [list(row) + [Q(rhs[i])] for i, row in enumerate(q_matrix(m))]
    n = len(a)
    for c in range(n):
        piv = None
        for i in range(c, n):
            if a[i][c] != 0:
                piv = i
                break
        if piv is None:
            raise ArithmeticError("singular system")
        a[c], a[piv] = a[piv], a[c]
        inv = 1 / a[c][c]
        a[c] = [x * inv for x in a[c]]
        for i in range(n):
            if i != c and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return [a[i][n] for i in range(n)]


def q_inverse(m) -> list[list[Fraction]]:
    n = len(m)
    a = [list(row) + list(q_identity(n)[i]) for i, row in enumerate(q_matrix(m))]
    for c in range(n):
        piv = None
        for i in range(c, n):
            if a[i][c] != 0:
                piv = i
                break
        if piv is None:
            raise ArithmeticError("matrix is singular")
        a[c], a[piv] = a[piv], a[c]
        inv = 1 / a[c][c]
        a[c] = [x * inv for x in a[c]]
        for i in range(n):
            if i != c and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return [row[n:] for row in a]


def q_mat_mul(a, b):
    rows, inner, cols = len(a), len(b), len(b[0])
    out = [[Q(0)] * cols for _ in range(rows)]
    for i in range(rows):
        for k in range(inner):
            c = a[i][k]
            if c:
                for j in range(cols):
                    out[i][j] += c * b[k][j]
    return out


def charpoly(m) -> list[Fraction]:
    """Characteristic polynomial det(T*I - m), little-endian coefficients.

    Faddeev-LeVerrier; exact over Q, fine for the small matrices used here.
    """
    n = len(m)
    a = q_matrix(m)
    coeffs = [Q(0)] * (n + 1)
    coeffs[n] = Q(1)
    mk = q_identity(n)
    for k in range(1, n + 1):
        mk = q_mat_mul(a, mk)
        tr = sum(mk[i][i] for i in range(n))
        c = -tr / k
        coeffs[n - k] = c
        for i in range(n):
            mk[i][i] += c
    return coeffs
