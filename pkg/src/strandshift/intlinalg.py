"""Exact integer matrices, Smith normal form and integer linear solving.

Everything is arbitrary-precision Python int; no floating point enters.  The
matrices that reach this module (coboundary systems of split-merge skeletons)
are small, so a cubic elimination with minimum-absolute-value pivoting is
plenty.
"""

from __future__ import annotations


class IntMatrix:
    def __init__(self, rows):
        self.data = [list(map(int, r)) for r in rows]
        self.m = len(self.data)
        self.n = len(self.data[0]) if self.data else 0
        if any(len(r) != self.n for r in self.data):
            raise ValueError("ragged rows")

    @classmethod
    def zeros(cls, m, n):
        return cls([[0] * n for _ in range(m)])

    @classmethod
    def identity(cls, n):
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    def __getitem__(self, ij):
        return self.data[ij[0]][ij[1]]

    def __eq__(self, other):
        return isinstance(other, IntMatrix) and self.data == other.data

    def __repr__(self):
        return f"IntMatrix({self.data!r})"

    def copy(self):
        return IntMatrix(self.data)

    def mul(self, other: "IntMatrix") -> "IntMatrix":
        assert self.n == other.m
        out = [[0] * other.n for _ in range(self.m)]
        for i in range(self.m):
            row = self.data[i]
            for k in range(self.n):
                a = row[k]
                if a:
                    orow = other.data[k]
                    for j in range(other.n):
                        out[i][j] += a * orow[j]
        return IntMatrix(out)

    def mul_vec(self, v):
        assert self.n == len(v)
        return [sum(self.data[i][j] * v[j] for j in range(self.n)) for i in range(self.m)]

    def diagonal(self):
        return [self.data[i][i] for i in range(min(self.m, self.n))]


def determinant(M: IntMatrix) -> int:
    """Exact determinant by Bareiss fraction-free elimination."""
    assert M.m == M.n
    n = M.m
    a = [row[:] for row in M.data]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1] if n else 1


def smith_normal_form(M: IntMatrix):
    """U, S, V with U*M*V = S, U and V unimodular, S diagonal with d1 | d2 | ...

    Classic pivot-and-eliminate: repeatedly move a minimal-absolute-value
    nonzero entry to the pivot, clear its row and column, and restore the
    divisibility chain by folding offending entries back into the pivot
    column.
    """
    m, n = M.m, M.n
    a = [row[:] for row in M.data]
    u = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    v = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def row_op(i, j, q):  # row i -= q * row j
        for t in range(n):
            a[i][t] -= q * a[j][t]
        for t in range(m):
            u[i][t] -= q * u[j][t]

    def col_op(i, j, q):  # col i -= q * col j
        for r in a:
            r[i] -= q * r[j]
        for r in v:
            r[i] -= q * r[j]

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

    rank = min(m, n)
    for k in range(rank):
        while True:
            pivot = None
            best = None
            for i in range(k, m):
                for j in range(k, n):
                    x = abs(a[i][j])
                    if x and (best is None or x < best):
                        best = x
                        pivot = (i, j)
            if pivot is None:
                break
            i, j = pivot
            if i != k:
                swap_rows(k, i)
            if j != k:
                swap_cols(k, j)
            done = True
            for i in range(k + 1, m):
                if a[i][k]:
                    q = a[i][k] // a[k][k]
                    row_op(i, k, q)
                    if a[i][k]:
                        done = False
            for j in range(k + 1, n):
                if a[k][j]:
                    q = a[k][j] // a[k][k]
                    col_op(j, k, q)
                    if a[k][j]:
                        done = False
            if done:
                break
        if a[k][k] < 0:
            negate_row(k)

    # Divisibility chain: fold a non-multiple into the previous pivot.
    k = 0
    while k + 1 < rank:
        if a[k][k] and a[k + 1][k + 1] % a[k][k] != 0:
            # add column k+1 to column k, then rediagonalize from k
            col_op(k, k + 1, -1)
            for kk in range(k, rank):
                while True:
                    pivot = None
                    best = None
                    for i in range(kk, m):
                        for j in range(kk, n):
                            x = abs(a[i][j])
                            if x and (best is None or x < best):
                                best = x
                                pivot = (i, j)
                    if pivot is None:
                        break
                    i, j = pivot
                    if i != kk:
                        swap_rows(kk, i)
                    if j != kk:
                        swap_cols(kk, j)
                    done = True
                    for i in range(kk + 1, m):
                        if a[i][kk]:
                            q = a[i][kk] // a[kk][kk]
                            row_op(i, kk, q)
                            if a[i][kk]:
                                done = False
                    for j in range(kk + 1, n):
                        if a[kk][j]:
                            q = a[kk][j] // a[kk][kk]
                            col_op(j, kk, q)
                            if a[kk][j]:
                                done = False
                    if done:
                        break
                if a[kk][kk] < 0:
                    negate_row(kk)
            k = 0
            continue
        k += 1
    return IntMatrix(u), IntMatrix(a), IntMatrix(v)


def solve_integer(M: IntMatrix, d):
    """Some integer x with M x = d, or None when no integer solution exists.

    Via the Smith form: with U M V = S, the system becomes S y = U d; it is
    solvable iff each diagonal entry divides its right-hand side and the
    right-hand side vanishes beyond the rank, and then x = V y.
    """
    if len(d) != M.m:
        raise ValueError("dimension mismatch")
    U, S, V = smith_normal_form(M)
    rhs = U.mul_vec(list(d))
    y = [0] * M.n
    for i in range(min(M.m, M.n)):
        s = S[i, i]
        if s:
            if rhs[i] % s != 0:
                return None
            y[i] = rhs[i] // s
        elif rhs[i] != 0:
            return None
    for i in range(min(M.m, M.n), M.m):
        if rhs[i] != 0:
            return None
    return V.mul_vec(y)
