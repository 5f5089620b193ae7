import itertools
import random

from unilcalc.f2linalg import (
    det,
    hnf,
    in_row_span,
    left_kernel,
    mat_identity,
    mat_inverse,
    mat_mul,
    rank,
    reduce_mod_rows,
    smith,
    vec_mat_mul,
)
from unilcalc.kernels import gf2_divmod, gf2_mul


def rand_mat(rng, m, n, deg=3):
    return tuple(tuple(rng.randrange(1 << (deg + 1)) for _ in range(n)) for _ in range(m))


def rand_unimodular(rng, n, ops=8, deg=2):
    U = [list(r) for r in mat_identity(n)]
    for _ in range(ops if n > 1 else 0):
        i, j = rng.sample(range(n), 2)
        if rng.random() < 0.3:
            U[i], U[j] = U[j], U[i]
        else:
            q = rng.randrange(1 << (deg + 1))
            U[j] = [x ^ gf2_mul(q, y) for x, y in zip(U[j], U[i])]
    return tuple(tuple(r) for r in U)


def naive_det(M):
    n = len(M)
    if n == 0:
        return 1
    if n == 1:
        return M[0][0]
    total = 0
    for j in range(n):
        if M[0][j]:
            minor = tuple(row[:j] + row[j + 1 :] for row in M[1:])
            total ^= gf2_mul(M[0][j], naive_det(minor))
    return total


class TestDet:
    def test_against_cofactor_expansion(self):
        rng = random.Random(61)
        for _ in range(120):
            n = rng.randint(1, 4)
            M = rand_mat(rng, n, n)
            assert det(M) == naive_det(M)

    def test_multiplicative(self):
        rng = random.Random(67)
        for _ in range(60):
            n = rng.randint(1, 3)
            Am, Bm = rand_mat(rng, n, n, 2), rand_mat(rng, n, n, 2)
            assert det(mat_mul(Am, Bm)) == gf2_mul(det(Am), det(Bm))

    def test_singular(self):
        assert det(((0b10, 0b10), (0b10, 0b10))) == 0


class TestHermite:
    def _assert_canonical(self, H):
        pivots = []
        seen_zero = False
        for row in H:
            j = next((c for c, x in enumerate(row) if x), None)
            if j is None:
                seen_zero = True
                continue
            assert not seen_zero, "zero row above a nonzero row"
            assert not pivots or j > pivots[-1][0]
            pivots.append((j, row[j]))
        for r, (j, p) in enumerate(pivots):
            for i in range(r):
                assert gf2_divmod(H[i][j], p)[0] == 0, "entry above pivot not reduced"

    def test_transform_and_shape(self):
        rng = random.Random(71)
        for _ in range(80):
            M = rand_mat(rng, rng.randint(1, 4), rng.randint(1, 4))
            H, U = hnf(M)
            assert mat_mul(U, M) == H
            assert det(U) == 1
            self._assert_canonical(H)
            assert hnf(H)[0] == H

    def test_row_span_invariant(self):
        rng = random.Random(73)
        for _ in range(60):
            m = rng.randint(2, 4)
            M = rand_mat(rng, m, rng.randint(2, 4))
            W = rand_unimodular(rng, m)
            assert hnf(M)[0] == hnf(mat_mul(W, M))[0]

    def test_membership(self):
        rng = random.Random(79)
        for _ in range(60):
            M = rand_mat(rng, 3, 4, deg=2)
            H, _ = hnf(M)
            coeffs = [rng.randrange(16) for _ in range(3)]
            v = vec_mat_mul(tuple(coeffs), M)
            assert in_row_span(v, H)
            assert reduce_mod_rows(v, H) == (0, 0, 0, 0)


class TestKernel:
    def test_annihilates(self):
        rng = random.Random(83)
        for _ in range(80):
            M = rand_mat(rng, rng.randint(1, 4), rng.randint(1, 4))
            K = left_kernel(M)
            for row in K:
                assert not any(vec_mat_mul(row, M))
            assert len(K) == len(M) - rank(M)

    def test_complete_small(self):
        # every bounded-degree kernel vector lies in the computed span
        rng = random.Random(89)
        for _ in range(8):
            M = rand_mat(rng, 3, 2, deg=1)
            K = left_kernel(M)
            KH = K if K else ((0, 0, 0),)
            for u in itertools.product(range(16), repeat=3):
                if not any(vec_mat_mul(u, M)):
                    assert in_row_span(u, KH)


class TestInverse:
    def test_round_trip(self):
        rng = random.Random(97)
        for _ in range(40):
            n = rng.randint(1, 4)
            U = rand_unimodular(rng, n)
            assert mat_mul(U, mat_inverse(U)) == mat_identity(n)

    def test_rejects_nonunit(self):
        import pytest

        with pytest.raises(ValueError):
            mat_inverse(((0b10,),))


class TestSmith:
    def test_shape_and_transforms(self):
        rng = random.Random(101)
        for _ in range(80):
            m, n = rng.randint(1, 4), rng.randint(1, 4)
            M = rand_mat(rng, m, n, deg=2)
            D, U, V = smith(M)
            assert mat_mul(mat_mul(U, M), V) == D
            assert det(U) == 1 and det(V) == 1
            diag = [D[i][i] for i in range(min(m, n))]
            for i in range(m):
                for j in range(n):
                    if i != j:
                        assert D[i][j] == 0
            for a, b in zip(diag, diag[1:]):
                if b:
                    assert a and gf2_divmod(b, a)[1] == 0
                # zero may only follow zero or anything; nonzero after zero is wrong
                if not a:
                    assert not b
            if m == n:
                assert det(D) == det(M)
