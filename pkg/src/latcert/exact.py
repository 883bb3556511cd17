"""Exact integer and rational matrix arithmetic.

Matrices are lists of lists, row-major.  Integer matrices hold Python ints
(arbitrary precision), rational matrices hold fractions.Fraction.  Vectors
are rows throughout; maps act on the right (v -> v @ M).
"""

from fractions import Fraction

from .errors import Degenerate, SingularPivot


def identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def zeros(m, n):
    return [[0] * n for _ in range(m)]


def copy_matrix(M):
    return [row[:] for row in M]


def transpose(M):
    return [list(col) for col in zip(*M)] if M else []


def mat_mul(A, B):
    if not A:
        return []
    n = len(B)
    assert all(len(row) == n for row in A), "dimension mismatch"
    Bt = transpose(B)
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def mat_add(A, B):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_sub(A, B):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_scale(M, c):
    return [[c * x for x in row] for row in M]


def mat_neg(M):
    return mat_scale(M, -1)


def row_mat_mul(v, M):
    """Row vector times matrix."""
    assert len(v) == len(M), "dimension mismatch"
    n = len(M[0]) if M else 0
    return [sum(v[i] * M[i][j] for i in range(len(v))) for j in range(n)]


def dot(u, v, G=None):
    """u . v, or u G v^T when a Gram matrix is given."""
    if G is None:
        return sum(a * b for a, b in zip(u, v))
    return sum(a * b for a, b in zip(row_mat_mul(u, G), v))


def is_symmetric(M):
    n = len(M)
    return all(len(row) == n for row in M) and all(
        M[i][j] == M[j][i] for i in range(n) for j in range(i)
    )


def is_zero_matrix(M):
    return all(x == 0 for row in M for x in row)


def to_fractions(M):
    return [[Fraction(x) for x in row] for row in M]


def is_integral(M):
    return all(Fraction(x).denominator == 1 for row in M for x in row)


def to_ints(M):
    assert is_integral(M), "matrix has non-integer entries"
    return [[int(x) for x in row] for row in M]


# ---------------------------------------------------------------------------
# Hermite normal form


def hnf(M):
    """Row-style Hermite normal form.

    Returns (H, U) with U unimodular, U @ M = H, pivots positive, entries
    above each pivot reduced into [0, pivot).
    """
    m = len(M)
    H = copy_matrix(M)
    U = identity(m)
    r = 0
    ncols = len(M[0]) if m else 0
    for c in range(ncols):
        if r == m:
            break
        # gcd-reduce column c below row r
        while True:
            nz = [i for i in range(r, m) if H[i][c] != 0]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(H[i][c]))
            if piv != r:
                H[r], H[piv] = H[piv], H[r]
                U[r], U[piv] = U[piv], U[r]
            done = True
            for i in range(r + 1, m):
                if H[i][c] != 0:
                    q = H[i][c] // H[r][c]
                    if q:
                        H[i] = [a - q * b for a, b in zip(H[i], H[r])]
                        U[i] = [a - q * b for a, b in zip(U[i], U[r])]
                    if H[i][c] != 0:
                        done = False
            if done:
                break
        if H[r][c] == 0:
            continue
        if H[r][c] < 0:
            H[r] = [-a for a in H[r]]
            U[r] = [-a for a in U[r]]
        for i in range(r):
            q = H[i][c] // H[r][c]
            if q:
                H[i] = [a - q * b for a, b in zip(H[i], H[r])]
                U[i] = [a - q * b for a, b in zip(U[i], U[r])]
        r += 1
    return H, U


# ---------------------------------------------------------------------------
# Smith normal form


def snf(M):
    """Smith normal form.

    Returns (S, U, V) with U, V unimodular and U @ M @ V = S diagonal,
    invariants nonnegative and d1 | d2 | ... .
    """
    m = len(M)
    n = len(M[0]) if m else 0
    S = copy_matrix(M)
    U = identity(m)
    V = identity(n)

    def swap_rows(i, j):
        S[i], S[j] = S[j], S[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in S:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        S[dst] = [a + q * b for a, b in zip(S[dst], S[src])]
        U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, q):
        for row in S:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]

    def pivot_search(t):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if S[i][j] != 0 and (best is None or abs(S[i][j]) < abs(S[best[0]][best[1]])):
                    best = (i, j)
        return best

    t = 0
    while t < min(m, n):
        pos = pivot_search(t)
        if pos is None:
            break
        while True:
            # move the globally minimal entry of the trailing block to the
            # pivot slot each pass; this keeps intermediate entries small
            swap_rows(t, pos[0])
            swap_cols(t, pos[1])
            dirty = False
            for i in range(t + 1, m):
                if S[i][t] != 0:
                    q = S[i][t] // S[t][t]
                    if q:
                        add_row(i, t, -q)
                    if S[i][t] != 0:
                        dirty = True
            for j in range(t + 1, n):
                if S[t][j] != 0:
                    q = S[t][j] // S[t][t]
                    if q:
                        add_col(j, t, -q)
                    if S[t][j] != 0:
                        dirty = True
            if dirty:
                pos = pivot_search(t)
                continue
            # pivot must divide the remaining block
            offender = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if S[i][j] % S[t][t] != 0:
                        offender = (i, j)
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            add_row(t, offender[0], 1)
            pos = (t, t)
        if S[t][t] < 0:
            S[t] = [-a for a in S[t]]
            U[t] = [-a for a in U[t]]
        t += 1
    return S, U, V


def snf_invariants(M):
    """Nonzero invariant factors d1 | d2 | ... of M."""
    S, _, _ = snf(M)
    return [S[i][i] for i in range(min(len(S), len(S[0]) if S else 0)) if S[i][i] != 0]


# ---------------------------------------------------------------------------
# Integer kernels and rational elimination


def int_kernel(M):
    """Saturated basis of {x in Z^rows : x @ M = 0}, rows of the result."""
    H, U = hnf(M)
    basis = [U[i] for i in range(len(H)) if all(x == 0 for x in H[i])]
    if not basis:
        return []
    Hb, _ = hnf(basis)
    return [row for row in Hb if any(x != 0 for x in row)]


def rat_inverse(M):
    """Exact inverse of a square rational matrix."""
    n = len(M)
    A = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(M)]
    for c in range(n):
        piv = next((i for i in range(c, n) if A[i][c] != 0), None)
        if piv is None:
            raise Degenerate("matrix is singular")
        A[c], A[piv] = A[piv], A[c]
        inv = 1 / A[c][c]
        A[c] = [x * inv for x in A[c]]
        for i in range(n):
            if i != c and A[i][c] != 0:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[c])]
    return [row[n:] for row in A]


def rat_solve_matrix(A, B):
    """Solve X @ A = B exactly (A square nonsingular); rows of B independent."""
    return mat_mul(B, rat_inverse(A))


def rat_rank(M):
    A = to_fractions(M)
    m = len(A)
    n = len(A[0]) if m else 0
    rank = 0
    for c in range(n):
        piv = next((i for i in range(rank, m) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        for i in range(m):
            if i != rank and A[i][c] != 0:
                f = A[i][c] / A[rank][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[rank])]
        rank += 1
    return rank


def det(M):
    """Exact determinant (fraction-free would be faster; exactness suffices)."""
    n = len(M)
    if n == 0:
        return 1
    A = to_fractions(M)
    sign = 1
    d = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if A[i][c] != 0), None)
        if piv is None:
            return 0
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            sign = -sign
        d *= A[c][c]
        for i in range(c + 1, n):
            if A[i][c] != 0:
                f = A[i][c] / A[c][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[c])]
    d *= sign
    if all(isinstance(x, int) for row in M for x in row):
        assert d.denominator == 1
        return int(d)
    return d


# ---------------------------------------------------------------------------
# Symmetric factorizations


def rat_ldlt(G):
    """Exact LDL^T of a symmetric rational matrix.

    Returns (L, D) with L unit lower triangular, D diagonal, L D L^T = G.
    Raises SingularPivot when a leading principal minor vanishes.
    """
    assert is_symmetric(G), "matrix must be symmetric"
    n = len(G)
    A = to_fractions(G)
    L = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    d = []
    for k in range(n):
        piv = A[k][k]
        if piv == 0:
            if any(A[i][j] != 0 for i in range(k, n) for j in range(k, n)):
                raise SingularPivot(f"zero pivot at position {k}")
            d.extend(Fraction(0) for _ in range(k, n))
            break
        d.append(piv)
        for i in range(k + 1, n):
            f = A[i][k] / piv
            L[i][k] = f
            if f != 0:
                for j in range(k + 1, n):
                    A[i][j] -= f * A[k][j]
                A[i][k] = Fraction(0)
    else:
        pass
    while len(d) < n:
        d.append(Fraction(0))
    D = [[d[i] if i == j else Fraction(0) for j in range(n)] for i in range(n)]
    return L, D


def sym_diagonal(G):
    """Diagonal of a congruence diagonalization of symmetric rational G.

    Handles zero pivots by symmetric row/column operations, so it works for
    any symmetric matrix; the signs give the Sylvester signature.
    """
    assert is_symmetric(G), "matrix must be symmetric"
    n = len(G)
    A = to_fractions(G)
    for k in range(n):
        if A[k][k] == 0:
            j = next((i for i in range(k + 1, n) if A[i][i] != 0), None)
            if j is not None:
                A[k], A[j] = A[j], A[k]
                for row in A:
                    row[k], row[j] = row[j], row[k]
            else:
                j = next((i for i in range(k + 1, n) if A[k][i] != 0), None)
                if j is None:
                    continue
                for col in range(n):
                    A[k][col] += A[j][col]
                for row in A:
                    row[k] += row[j]
        piv = A[k][k]
        for i in range(k + 1, n):
            if A[i][k] != 0:
                f = A[i][k] / piv
                for col in range(n):
                    A[i][col] -= f * A[k][col]
                for row in A:
                    row[i] -= f * row[k]
    return [A[i][i] for i in range(n)]


def signature_of_gram(G):
    """(positive, negative, zero) inertia counts of a symmetric matrix."""
    diag = sym_diagonal(G)
    pos = sum(1 for x in diag if x > 0)
    neg = sum(1 for x in diag if x < 0)
    return pos, neg, len(diag) - pos - neg
