"""Exact linear algebra over F2[t].

Matrices are sequences of rows; each entry is an int bitmask (bit k is the
t^k coefficient).  Returned matrices are tuples of tuples.  Row spans are
canonicalised by Hermite form: pivot columns strictly increase, every entry
above a pivot has lower degree than the pivot, zero rows trail.
"""

from __future__ import annotations

from unilcalc.kernels import gf2_deg, gf2_divmod, gf2_mul


def mat_identity(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def mat_zero(m, n):
    return tuple((0,) * n for _ in range(m))


def mat_transpose(M):
    if not M:
        return ()
    return tuple(tuple(row[j] for row in M) for j in range(len(M[0])))


def mat_add(Am, Bm):
    return tuple(tuple(x ^ y for x, y in zip(ra, rb)) for ra, rb in zip(Am, Bm))


def mat_mul(Am, Bm):
    Bt = mat_transpose(Bm)
    out = []
    for row in Am:
        acc = []
        for col in Bt:
            s = 0
            for x, y in zip(row, col):
                if x and y:
                    s ^= gf2_mul(x, y)
            acc.append(s)
        out.append(tuple(acc))
    return tuple(out)


def vec_mat_mul(v, M):
    out = mat_mul((tuple(v),), M)
    return out[0] if out else ()


def _row_addmul(rows, dst, src, q):
    # rows[dst] += q * rows[src]
    if not q:
        return
    rows[dst] = [x ^ gf2_mul(q, y) for x, y in zip(rows[dst], rows[src])]


def hnf(M):
    """Hermite form of the row span.  Returns (H, U) with U*M = H and U
    unimodular; H is the canonical basis described in the module docstring."""
    m = len(M)
    n = len(M[0]) if m else 0
    H = [list(row) for row in M]
    U = [list(row) for row in mat_identity(m)]
    r = 0
    for j in range(n):
        while True:
            cand = [i for i in range(r, m) if H[i][j]]
            if not cand:
                break
            i0 = min(cand, key=lambda i: gf2_deg(H[i][j]))
            if i0 != r:
                H[r], H[i0] = H[i0], H[r]
                U[r], U[i0] = U[i0], U[r]
            clean = True
            for i in range(r + 1, m):
                if H[i][j]:
                    q, rem = gf2_divmod(H[i][j], H[r][j])
                    _row_addmul(H, i, r, q)
                    _row_addmul(U, i, r, q)
                    if rem:
                        clean = False
            if clean:
                for i in range(r):
                    q, _ = gf2_divmod(H[i][j], H[r][j])
                    _row_addmul(H, i, r, q)
                    _row_addmul(U, i, r, q)
                r += 1
                break
    return tuple(tuple(row) for row in H), tuple(tuple(row) for row in U)


def rank(M):
    H, _ = hnf(M)
    return sum(1 for row in H if any(row))


def reduce_mod_rows(v, H):
    """Reduce v modulo the row span of a Hermite-form H."""
    v = list(v)
    for row in H:
        j = next((c for c, x in enumerate(row) if x), None)
        if j is None:
            break
        q, _ = gf2_divmod(v[j], row[j])
        if q:
            v = [x ^ gf2_mul(q, y) for x, y in zip(v, row)]
    return tuple(v)


def in_row_span(v, H):
    return not any(reduce_mod_rows(v, H))


def left_kernel(M):
    """Canonical basis of {u : u*M = 0}."""
    H, U = hnf(M)
    ker = [U[i] for i in range(len(H)) if not any(H[i])]
    if not ker:
        return ()
    K, _ = hnf(ker)
    return tuple(row for row in K if any(row))


def mat_inverse(M):
    H, U = hnf(M)
    if H != mat_identity(len(M)):
        raise ValueError("matrix is not unimodular over F2[t]")
    return U


def det(M):
    """Fraction-free (Bareiss) determinant."""
    n = len(M)
    if n == 0:
        return 1
    A = [list(row) for row in M]
    prev = 1
    for k in range(n - 1):
        if not A[k][k]:
            i0 = next((i for i in range(k + 1, n) if A[i][k]), None)
            if i0 is None:
                return 0
            A[k], A[i0] = A[i0], A[k]  # char 2, no sign to track
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = gf2_mul(A[i][j], A[k][k]) ^ gf2_mul(A[i][k], A[k][j])
                q, rem = gf2_divmod(num, prev)
                assert not rem, "Bareiss division must be exact"
                A[i][j] = q
        prev = A[k][k]
    return A[n - 1][n - 1]


def smith(M):
    """Smith form: returns (D, U, V) with U*M*V = D, D diagonal and each
    diagonal entry dividing the next."""
    m = len(M)
    n = len(M[0]) if m else 0
    A = [list(row) for row in M]
    U = [list(row) for row in mat_identity(m)]
    V = [list(row) for row in mat_identity(n)]

    def col_addmul(dst, src, q):
        # A[:, dst] += q * A[:, src]; record on V
        if not q:
            return
        for row in A:
            row[dst] ^= gf2_mul(q, row[src])
        for row in V:
            row[dst] ^= gf2_mul(q, row[src])

    def col_swap(c1, c2):
        for row in A:
            row[c1], row[c2] = row[c2], row[c1]
        for row in V:
            row[c1], row[c2] = row[c2], row[c1]

    for k in range(min(m, n)):
        while True:
            best = None
            for i in range(k, m):
                for j in range(k, n):
                    if A[i][j] and (best is None or gf2_deg(A[i][j]) < gf2_deg(A[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                break
            i0, j0 = best
            if i0 != k:
                A[k], A[i0] = A[i0], A[k]
                U[k], U[i0] = U[i0], U[k]
            if j0 != k:
                col_swap(k, j0)
            dirty = False
            for i in range(k + 1, m):
                if A[i][k]:
                    q, rem = gf2_divmod(A[i][k], A[k][k])
                    _row_addmul(A, i, k, q)
                    _row_addmul(U, i, k, q)
                    if rem:
                        dirty = True
            for j in range(k + 1, n):
                if A[k][j]:
                    q, rem = gf2_divmod(A[k][j], A[k][k])
                    col_addmul(j, k, q)
                    if rem:
                        dirty = True
            if dirty:
                continue
            # pivot divides the rest of the minor?  if not, fold the bad row in
            bad = next(
                (i for i in range(k + 1, m) for j in range(k + 1, n)
                 if A[i][j] and gf2_divmod(A[i][j], A[k][k])[1]),
                None,
            )
            if bad is None:
                break
            _row_addmul(A, k, bad, 1)
            _row_addmul(U, k, bad, 1)
    D = tuple(tuple(row) for row in A)
    return D, tuple(tuple(row) for row in U), tuple(tuple(row) for row in V)
