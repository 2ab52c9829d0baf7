"""Dense exact linear algebra over a Field.

Matrices are row-major lists of lists of scalars.  All routines return
fresh objects and never mutate their arguments.
"""

from __future__ import annotations


def zeros(K, r, c):
    z = K.zero
    return [[z] * c for _ in range(r)]


def identity(K, n):
    A = zeros(K, n, n)
    one = K.one
    for i in range(n):
        A[i][i] = one
    return A


def copy_matrix(A):
    return [row[:] for row in A]


def transpose(A):
    if not A:
        return []
    return [list(col) for col in zip(*A)]


def mat_mul(K, A, B):
    if not A or not B:
        return []
    n, m, c = len(A), len(B), len(B[0])
    out = zeros(K, n, c)
    for i in range(n):
        Ai = A[i]
        Oi = out[i]
        for k in range(m):
            a = Ai[k]
            if not a:
                continue
            Bk = B[k]
            for j in range(c):
                b = Bk[j]
                if b:
                    Oi[j] = K.add(Oi[j], K.mul(a, b))
    return out


def mat_vec(K, A, v):
    out = []
    for row in A:
        s = K.zero
        for a, x in zip(row, v):
            if a and x:
                s = K.add(s, K.mul(a, x))
        out.append(s)
    return out


def scale_matrix(K, c, A):
    return [[K.mul(c, a) for a in row] for row in A]


def add_matrix(K, A, B):
    return [[K.add(a, b) for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def sub_matrix(K, A, B):
    return [[K.sub(a, b) for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def is_zero_matrix(A):
    return all(not a for row in A for a in row)


def rref(K, A):
    """Reduced row echelon form; returns (R, pivot_columns)."""
    R = copy_matrix(A)
    if not R:
        return R, []
    rows, cols = len(R), len(R[0])
    pivots = []
    r = 0
    for c in range(cols):
        pivot = None
        for i in range(r, rows):
            if R[i][c]:
                pivot = i
                break
        if pivot is None:
            continue
        R[r], R[pivot] = R[pivot], R[r]
        inv = K.inv(R[r][c])
        R[r] = [K.mul(inv, a) for a in R[r]]
        for i in range(rows):
            if i != r and R[i][c]:
                f = R[i][c]
                Rr = R[r]
                R[i] = [K.sub(a, K.mul(f, b)) for a, b in zip(R[i], Rr)]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return R, pivots


def rank(K, A):
    return len(rref(K, A)[1])


def row_space(K, A):
    """Canonical basis (RREF rows) of the row space; no zero rows."""
    R, pivots = rref(K, A)
    return R[: len(pivots)]


def nullspace(K, A):
    """Basis of the right kernel {x : A x = 0}."""
    if not A:
        return []
    cols = len(A[0])
    R, pivots = rref(K, A)
    pivset = set(pivots)
    free = [c for c in range(cols) if c not in pivset]
    basis = []
    for fc in free:
        v = [K.zero] * cols
        v[fc] = K.one
        for r, pc in enumerate(pivots):
            v[pc] = K.neg(R[r][fc])
        basis.append(v)
    return basis


def solve(K, A, b):
    """One solution of A x = b, or None if inconsistent."""
    if not A:
        return None if any(b) else []
    cols = len(A[0])
    aug = [row[:] + [bv] for row, bv in zip(A, b)]
    R, pivots = rref(K, aug)
    for r in range(len(pivots)):
        if pivots[r] == cols:
            return None
    # rows beyond the pivots are zero rows of the augmented RREF
    x = [K.zero] * cols
    for r, pc in enumerate(pivots):
        if pc < cols:
            x[pc] = R[r][cols]
    return x


def solve_matrix(K, A, B):
    """X with A X = B (columnwise), or None if any column is inconsistent."""
    if not A:
        return [] if is_zero_matrix(B) else None
    cols_b = len(B[0]) if B else 0
    X_cols = []
    for j in range(cols_b):
        x = solve(K, A, [row[j] for row in B])
        if x is None:
            return None
        X_cols.append(x)
    n = len(A[0])
    return [[X_cols[j][i] for j in range(cols_b)] for i in range(n)]


def inv(K, A):
    n = len(A)
    if any(len(row) != n for row in A):
        raise ValueError("inverse of a non-square matrix")
    aug = [row[:] + ident_row for row, ident_row in zip(A, identity(K, n))]
    R, pivots = rref(K, aug)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in R[:n]]


def in_row_space(K, basis_rref, v):
    """Membership test against an RREF basis (list of rows)."""
    w = list(v)
    ncols = len(w)
    for row in basis_rref:
        lead = next((c for c in range(ncols) if row[c]), None)
        if lead is None:
            continue
        if w[lead]:
            f = K.mul(w[lead], K.inv(row[lead]))
            w = [K.sub(a, K.mul(f, b)) for a, b in zip(w, row)]
    return not any(w)


def same_row_space(K, A, B):
    ra = row_space(K, A)
    rb = row_space(K, B)
    return ra == rb
