"""Exact dense linear algebra over a prime field F_p.

Matrices are numpy int64 arrays with every entry reduced to [0, p).  All
results are exact; float64 is used internally only where the arithmetic is
provably exact (products bounded by 2**53).  Subspaces are represented by
matrices whose *columns* form a basis.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import InputError

_MAX_MODULUS = 2**31
_FLOAT_EXACT = 2**53
_INT64_SAFE = 2**62
_PANEL = 128


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0 or n % 3 == 0:
        return False
    k = 5
    while k * k <= n:
        if n % k == 0 or n % (k + 2) == 0:
            return False
        k += 6
    return True


class PrimeField:
    """F_p for an odd prime p with 2 < p < 2**31.

    The modulus bound keeps every single product of reduced entries inside
    64-bit arithmetic; matrix products are additionally chunked so that
    accumulated sums never wrap.
    """

    __slots__ = ("p", "_float_inner_limit")

    def __init__(self, p: int):
        if not isinstance(p, (int, np.integer)):
            raise InputError(f"characteristic must be an integer, got {p!r}")
        p = int(p)
        if p <= 2 or p >= _MAX_MODULUS:
            raise InputError(f"characteristic must satisfy 2 < p < 2**31, got {p}")
        if not is_prime(p):
            raise InputError(f"characteristic {p} is not prime")
        self.p = p
        self._float_inner_limit = _FLOAT_EXACT // ((p - 1) ** 2)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeField", self.p))

    def __repr__(self):
        return f"PrimeField({self.p})"

    # -- element helpers -------------------------------------------------

    def inv(self, a: int) -> int:
        a = int(a) % self.p
        if a == 0:
            raise ZeroDivisionError(f"0 is not invertible mod {self.p}")
        return pow(a, self.p - 2, self.p)

    # -- array helpers ---------------------------------------------------

    def array(self, data) -> np.ndarray:
        return np.array(data, dtype=np.int64) % self.p

    def zeros(self, *shape) -> np.ndarray:
        return np.zeros(shape, dtype=np.int64)

    def identity(self, n: int) -> np.ndarray:
        return np.eye(n, dtype=np.int64)

    def matmul(self, A, B) -> np.ndarray:
        """Exact A @ B mod p.

        Uses BLAS float64 when the inner dimension keeps every accumulated
        sum below 2**53 (entries are non-negative, so partial sums are
        bounded by the final one); otherwise accumulates int64 chunks.
        """
        A = np.asarray(A, dtype=np.int64)
        B = np.asarray(B, dtype=np.int64)
        inner = A.shape[-1]
        if inner == 0:
            return np.zeros(A.shape[:-1] + B.shape[1:], dtype=np.int64)
        if inner <= self._float_inner_limit:
            C = np.matmul(A.astype(np.float64), B.astype(np.float64))
            return C.astype(np.int64) % self.p
        step = max(1, _INT64_SAFE // ((self.p - 1) ** 2))
        acc = None
        for i in range(0, inner, step):
            part = np.matmul(A[..., i : i + step], B[i : i + step]) % self.p
            acc = part if acc is None else (acc + part) % self.p
        return acc

    # -- elimination -----------------------------------------------------

    def rref(self, M) -> tuple[np.ndarray, tuple[int, ...]]:
        """Reduced row echelon form of M and its pivot columns.

        Pivoting takes the first nonzero entry scanning top-to-bottom in the
        leftmost unsolved column, so the computation is deterministic (the
        RREF itself is unique regardless).  Elimination is panel-blocked so
        the bulk of the work runs through matmul.
        """
        R = self.array(M)
        if R.ndim != 2:
            raise InputError("rref expects a 2-D matrix")
        m, n = R.shape
        if m == 0 or n == 0:
            return R, ()
        p = self.p
        piv_cols: list[int] = []
        r0 = 0
        c0 = 0
        while c0 < n and r0 < m:
            c1 = min(c0 + _PANEL, n)
            # multipliers for active rows r0..m-1, one column per new pivot
            L = np.zeros((m - r0, c1 - c0), dtype=np.int64)
            scales: list[int] = []
            k = 0
            for c in range(c0, c1):
                rr = r0 + k
                if rr >= m:
                    break
                nz = np.nonzero(R[rr:m, c])[0]
                if nz.size == 0:
                    continue
                i = rr + int(nz[0])
                if i != rr:
                    R[[rr, i], :] = R[[i, rr], :]
                    L[[rr - r0, i - r0], :] = L[[i - r0, rr - r0], :]
                s = self.inv(R[rr, c])
                scales.append(s)
                R[rr, c:c1] = R[rr, c:c1] * s % p
                f = R[rr + 1 : m, c].copy()
                L[rr + 1 - r0 :, k] = f
                R[rr + 1 : m, c:c1] = (R[rr + 1 : m, c:c1] - np.outer(f, R[rr, c:c1])) % p
                piv_cols.append(c)
                k += 1
            if c1 < n and k > 0:
                T = R[r0:m, c1:n]
                for j in range(k):
                    if j > 0:
                        T[j] = (T[j] - self.matmul(L[j : j + 1, :j], T[:j])[0]) % p
                    T[j] = T[j] * scales[j] % p
                if m - r0 > k:
                    T[k:] = (T[k:] - self.matmul(L[k:, :k], T[:k])) % p
            r0 += k
            c0 = c1
        # backward pass: clear entries above every pivot
        k_total = len(piv_cols)
        b = k_total
        while b > 0:
            a = max(0, b - _PANEL)
            cstart = piv_cols[a]
            for j in range(b - 1, a, -1):
                f = R[a:j, piv_cols[j]].copy()
                if np.any(f):
                    R[a:j, cstart:] = (R[a:j, cstart:] - np.outer(f, R[j, cstart:])) % p
            if a > 0:
                C = R[:a, piv_cols[a:b]].copy()
                if np.any(C):
                    R[:a, cstart:] = (R[:a, cstart:] - self.matmul(C, R[a:b, cstart:])) % p
            b = a
        return R, tuple(piv_cols)

    def rank(self, M) -> int:
        return len(self.rref(M)[1])

    def kernel_basis(self, M) -> np.ndarray:
        """Basis of the right kernel of M, one column per free variable.

        Columns are ordered by increasing free-column index; the count is
        cols(M) - rank(M).
        """
        M = self.array(M)
        m, n = M.shape
        R, piv = self.rref(M)
        free = [c for c in range(n) if c not in set(piv)]
        K = np.zeros((n, len(free)), dtype=np.int64)
        if free:
            K[free, range(len(free))] = 1
            if piv:
                K[list(piv), :] = (-R[: len(piv), :][:, free]) % self.p
        return K

    def solve(self, M, b):
        """One solution x of Mx = b, or None when b is outside the column space."""
        M = self.array(M)
        b = self.array(b)
        if b.ndim != 1 or b.shape[0] != M.shape[0]:
            raise InputError(
                f"right-hand side has {b.shape} entries, expected ({M.shape[0]},)"
            )
        n = M.shape[1]
        aug = np.hstack([M, b.reshape(-1, 1)])
        R, piv = self.rref(aug)
        if n in piv:
            return None
        x = np.zeros(n, dtype=np.int64)
        if piv:
            x[list(piv)] = R[: len(piv), n]
        return x

    # -- subspaces (columns span) -----------------------------------------

    def column_space(self, M) -> np.ndarray:
        """The independent columns of M, in their original order."""
        M = self.array(M)
        _, piv = self.rref(M)
        return M[:, list(piv)]

    def in_span(self, B, v) -> bool:
        return self.solve(B, v) is not None

    def intersect(self, A, B) -> np.ndarray:
        """Basis of col(A) n col(B)."""
        A = self.array(A)
        B = self.array(B)
        if A.shape[0] != B.shape[0]:
            raise InputError(
                f"ambient dimensions differ: {A.shape[0]} vs {B.shape[0]}"
            )
        if A.shape[1] == 0 or B.shape[1] == 0:
            return np.zeros((A.shape[0], 0), dtype=np.int64)
        K = self.kernel_basis(np.hstack([A, (-B) % self.p]))
        C = self.matmul(A, K[: A.shape[1], :])
        return self.column_space(C)


class Echelon:
    """Incremental row-space accumulator for independence tests.

    Rows are kept lead-normalized but not inter-reduced; that is enough for
    membership and dimension bookkeeping while keeping insertion cheap.
    """

    __slots__ = ("field", "width", "_rows", "_pivots")

    def __init__(self, field: PrimeField, width: int):
        self.field = field
        self.width = width
        self._rows: list[np.ndarray] = []
        self._pivots: dict[int, int] = {}

    @property
    def dim(self) -> int:
        return len(self._rows)

    def reduce(self, v) -> np.ndarray:
        p = self.field.p
        v = np.array(v, dtype=np.int64) % p
        while True:
            nz = np.nonzero(v)[0]
            if nz.size == 0:
                return v
            lead = int(nz[0])
            row_idx = self._pivots.get(lead)
            if row_idx is None:
                return v
            v = (v - v[lead] * self._rows[row_idx]) % p
            v[lead] = 0  # guard against reduction drift

    def contains(self, v) -> bool:
        return not np.any(self.reduce(v))

    def add(self, v) -> bool:
        """Insert v's residual; returns True when v enlarged the span."""
        res = self.reduce(v)
        nz = np.nonzero(res)[0]
        if nz.size == 0:
            return False
        lead = int(nz[0])
        res = res * self.field.inv(res[lead]) % self.field.p
        self._pivots[lead] = len(self._rows)
        self._rows.append(res)
        return True
