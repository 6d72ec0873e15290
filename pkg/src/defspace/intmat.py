"""
Exact integer and rational matrix routines.

Smith normal form uses pivoting on the entry of minimal absolute value,
which keeps the entries small at the ranks used here.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


def identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def transpose(A):
    return [list(r) for r in zip(*A)] if A else []


def mat_mul(A, B):
    Bt = transpose(B)
    return [[sum(a * b for a, b in zip(r, c)) for c in Bt] for r in A]


def mat_vec(A, v):
    return [sum(a * b for a, b in zip(r, v)) for r in A]


def dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def smith_normal_form(A):
    """Return (diag, U, V) with U * A * V = D, U and V unimodular.

    ``diag`` lists the diagonal of D (length min(m, n)); the nonzero part
    forms a divisibility chain.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    D = [list(r) for r in A]
    U = identity(m)
    V = identity(n)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for M in (D, V):
            for r in M:
                r[i], r[j] = r[j], r[i]

    def add_row(src, dst, f):  # row_dst += f * row_src
        D[dst] = [x + f * y for x, y in zip(D[dst], D[src])]
        U[dst] = [x + f * y for x, y in zip(U[dst], U[src])]

    def add_col(src, dst, f):
        for M in (D, V):
            for r in M:
                r[dst] += f * r[src]

    t = 0
    while t < min(m, n):
        # pivot: minimal nonzero |entry| in the trailing block
        best = None
        for i in range(t, m):
            for j in range(t, n):
                x = D[i][j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            done = True
            p = D[t][t]
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(t, i, -(D[i][t] // p))
                    if D[i][t]:
                        done = False
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(t, j, -(D[t][j] // p))
                    if D[t][j]:
                        done = False
            if done:
                # enforce divisibility on the trailing block
                bad = None
                for i in range(t + 1, m):
                    for j in range(t + 1, n):
                        if D[i][j] % p:
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is None:
                    break
                add_row(bad, t, 1)
                continue
            # move the new minimal entry of row/col t into the pivot slot
            best = (abs(D[t][t]), t, t)
            for i in range(t + 1, m):
                if D[i][t] and abs(D[i][t]) < best[0]:
                    best = (abs(D[i][t]), i, t)
            for j in range(t + 1, n):
                if D[t][j] and abs(D[t][j]) < best[0]:
                    best = (abs(D[t][j]), t, j)
            _, i, j = best
            if i != t:
                swap_rows(t, i)
            if j != t:
                swap_cols(t, j)
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    diag = [D[i][i] for i in range(min(m, n))]
    return diag, U, V


def elementary_divisors(A):
    """Nonzero Smith invariants of A."""
    if not A or not A[0]:
        return []
    return [d for d in smith_normal_form(A)[0] if d]


def torsion_factors(A, ncols=None):
    """Invariant factors (> 1) of the torsion of Z^ncols / rowspace(A)."""
    if not A:
        return []
    return [d for d in elementary_divisors(A) if d > 1]


def integer_kernel(A, ncols=None):
    """Basis rows of the saturated lattice {x in Z^n : A x = 0}."""
    if ncols is None:
        ncols = len(A[0]) if A else 0
    if not A:
        return identity(ncols)
    diag, _, V = smith_normal_form(A)
    r = sum(1 for d in diag if d)
    return [[V[i][j] for i in range(ncols)] for j in range(r, ncols)]


def hermite_basis(rows, ncols=None):
    """Row-style Hermite normal form basis of the lattice spanned by ``rows``."""
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    M = [list(r) for r in rows if any(r)]
    out = []
    for col in range(ncols):
        while True:
            nz = [i for i, r in enumerate(M) if r[col]]
            if len(nz) <= 1:
                break
            i0 = min(nz, key=lambda i: abs(M[i][col]))
            for i in nz:
                if i != i0:
                    f = M[i][col] // M[i0][col]
                    M[i] = [x - f * y for x, y in zip(M[i], M[i0])]
        if nz:
            piv = M.pop(nz[0])
            if piv[col] < 0:
                piv = [-x for x in piv]
            out.append(piv)
        M = [r for r in M if any(r)]
    for i, row in enumerate(out):
        c = next(j for j, x in enumerate(row) if x)
        for k in range(i):
            f = out[k][c] // row[c]
            if f:
                out[k] = [x - f * y for x, y in zip(out[k], row)]
    return out


# ---------------------------------------------------------------------------
# rational helpers


def q_rref(A):
    M = [[Fraction(x) for x in r] for r in A]
    ncols = len(M[0]) if M else 0
    piv = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = 1 / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        piv.append(c)
        r += 1
    return M[:r], piv


def q_rank(A):
    if not A:
        return 0
    return len(q_rref(A)[0])


def q_solve_rows(basis, v):
    """Rational c with sum_j c_j basis[j] = v, or None if v is outside the span."""
    n = len(basis)
    if n == 0:
        return [] if not any(v) else None
    aug = [[Fraction(basis[j][i]) for j in range(n)] + [Fraction(v[i])] for i in range(len(v))]
    R, piv = q_rref(aug)
    if n in piv:
        return None
    c = [Fraction(0)] * n
    for row, pc in zip(R, piv):
        c[pc] = row[n]
    return c


def int_solve_rows(basis, v):
    """Integer coordinates of v in the given lattice basis; None if not integral/outside."""
    c = q_solve_rows(basis, v)
    if c is None or any(x.denominator != 1 for x in c):
        return None
    return [int(x) for x in c]


def q_inverse(A):
    n = len(A)
    aug = [list(r) + e for r, e in zip(A, identity(n))]
    R, piv = q_rref(aug)
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in R]


def int_inverse(A):
    inv = q_inverse(A)
    if any(x.denominator != 1 for r in inv for x in r):
        raise ValueError("matrix is not unimodular")
    return [[int(x) for x in r] for r in inv]


def lcm(a, b):
    return a * b // gcd(a, b) if a and b else 0
