"""The Koszul complex on the minimal generators and its homology.

Degree-j chains live in R^(n choose j) with basis e_S for subsets S of the
generators, subsets ordered lexicographically; the coordinate layout is
subset-major, so the slice [s*l : (s+1)*l] of a chain is the ring coefficient
of the s-th subset.  Signs follow the position count: removing the i-th
smallest element of S contributes (-1)^i, and products carry the shuffle sign
of merging two disjoint subsets.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .algebra import ArtinianLocalAlgebra
from .errors import InputError, VerificationFailure

MAX_GENERATORS = 8


@dataclass(frozen=True)
class KoszulComplex:
    algebra: ArtinianLocalAlgebra
    n: int
    subsets: tuple[tuple[tuple[int, ...], ...], ...]  # subsets[j] lists the degree-j basis
    differentials: tuple[np.ndarray, ...]  # differentials[j] = d_{j+1} matrix

    def chain_dim(self, degree: int) -> int:
        return self.algebra.length * len(self.subsets[degree])

    def differential(self, j: int) -> np.ndarray:
        """The matrix of d_j : K_j -> K_{j-1}, 1 <= j <= n."""
        if not 1 <= j <= self.n:
            raise InputError(f"differential index {j} out of range 1..{self.n}")
        return self.differentials[j - 1]


@dataclass(frozen=True)
class KoszulHomologyProfile:
    """dim_k H_i(K^R) for 0 <= i <= n, with chosen cycle representatives."""

    dims: tuple[int, ...]
    cycle_representatives: tuple[np.ndarray, ...]


def build_koszul(R: ArtinianLocalAlgebra) -> KoszulComplex:
    n = R.edim
    if n > MAX_GENERATORS:
        raise InputError(
            f"Koszul complex limited to {MAX_GENERATORS} generators, got {n}"
        )
    l = R.length
    field = R.field
    subsets = tuple(
        tuple(itertools.combinations(range(n), j)) for j in range(n + 1)
    )
    index = [
        {S: i for i, S in enumerate(level)} for level in subsets
    ]
    diffs = []
    for j in range(1, n + 1):
        rows = l * len(subsets[j - 1])
        cols = l * len(subsets[j])
        d = np.zeros((rows, cols), dtype=np.int64)
        for s_idx, S in enumerate(subsets[j]):
            for pos, i in enumerate(S):
                T = S[:pos] + S[pos + 1 :]
                t_idx = index[j - 1][T]
                block = R.generator_matrices[i]
                if pos % 2 == 1:
                    block = (-block) % field.p
                d[t_idx * l : (t_idx + 1) * l, s_idx * l : (s_idx + 1) * l] = block
        diffs.append(d)
    for j in range(1, n):
        comp = field.matmul(diffs[j - 1], diffs[j])
        if np.any(comp):
            raise VerificationFailure(f"d_{j} o d_{j+1} is nonzero")
    return KoszulComplex(algebra=R, n=n, subsets=subsets, differentials=tuple(diffs))


def homology_profile(K: KoszulComplex) -> KoszulHomologyProfile:
    R = K.algebra
    field = R.field
    l = R.length
    n = K.n
    dims = []
    reps = []
    for j in range(n + 1):
        if j == 0:
            cycles = field.identity(l)
        else:
            cycles = field.kernel_basis(K.differentials[j - 1])
        if j < n:
            boundaries = field.column_space(K.differentials[j])
        else:
            boundaries = np.zeros((K.chain_dim(n), 0), dtype=np.int64)
        from .linalg import Echelon

        ech = Echelon(field, cycles.shape[0])
        for c in range(boundaries.shape[1]):
            ech.add(boundaries[:, c])
        chosen = []
        for c in range(cycles.shape[1]):
            if ech.add(cycles[:, c]):
                chosen.append(cycles[:, c])
        dims.append(len(chosen))
        reps.append(
            np.column_stack(chosen)
            if chosen
            else np.zeros((K.chain_dim(j), 0), dtype=np.int64)
        )
    euler = sum((-1) ** i * d for i, d in enumerate(dims))
    if euler != 0:
        raise VerificationFailure(f"Koszul Euler characteristic {euler} != 0")
    if dims[n] != R.socle_dimension:
        raise VerificationFailure(
            f"dim H_n = {dims[n]} differs from socle dimension {R.socle_dimension}"
        )
    return KoszulHomologyProfile(dims=tuple(dims), cycle_representatives=tuple(reps))


def mu_defining_ideal(profile: KoszulHomologyProfile) -> int:
    """mu(I) of the minimal Cohen presentation, read off H_1."""
    return profile.dims[1] if len(profile.dims) > 1 else 0


def wedge_multiply(K: KoszulComplex, a: tuple[int, np.ndarray], b: tuple[int, np.ndarray]):
    """Product of chains (degree, coordinate vector); strictly skew-commutative."""
    deg_a, u = a
    deg_b, w = b
    deg = deg_a + deg_b
    if deg > K.n:
        raise InputError(f"product degree {deg} exceeds {K.n}")
    R = K.algebra
    field = R.field
    l = R.length
    u = field.array(u)
    w = field.array(w)
    index = {S: i for i, S in enumerate(K.subsets[deg])}
    out = np.zeros(K.chain_dim(deg), dtype=np.int64)
    for s_idx, S in enumerate(K.subsets[deg_a]):
        ring_u = u[s_idx * l : (s_idx + 1) * l]
        if not np.any(ring_u):
            continue
        left = R.left_mult_matrix(ring_u)
        for t_idx, T in enumerate(K.subsets[deg_b]):
            if set(S) & set(T):
                continue
            ring_w = w[t_idx * l : (t_idx + 1) * l]
            if not np.any(ring_w):
                continue
            sign = _shuffle_sign(S, T)
            target = index[tuple(sorted(S + T))]
            prod = field.matmul(left, ring_w)
            out[target * l : (target + 1) * l] = (
                out[target * l : (target + 1) * l] + sign * prod
            ) % field.p
    return deg, out


def _shuffle_sign(S: tuple[int, ...], T: tuple[int, ...]) -> int:
    inversions = sum(1 for s in S for t in T if s > t)
    return -1 if inversions % 2 else 1


def h1_square_is_zero(K: KoszulComplex, profile: KoszulHomologyProfile | None = None) -> bool:
    """Whether every product of two H_1 classes is a boundary in degree 2."""
    if K.n < 2:
        return True
    if profile is None:
        profile = homology_profile(K)
    field = K.algebra.field
    reps = profile.cycle_representatives[1]
    boundaries = (
        field.column_space(K.differentials[2])
        if K.n >= 3
        else np.zeros((K.chain_dim(2), 0), dtype=np.int64)
    )
    for a in range(reps.shape[1]):
        for b in range(a, reps.shape[1]):
            _, prod = wedge_multiply(K, (1, reps[:, a]), (1, reps[:, b]))
            if not np.any(prod):
                continue
            if boundaries.shape[1] == 0:
                return False
            if not field.in_span(boundaries, prod):
                return False
    return True


def poincare_duality_check(K: KoszulComplex, profile: KoszulHomologyProfile | None = None) -> bool:
    """Full-rank pairing H_i x H_{n-i} -> H_n for a Gorenstein algebra."""
    R = K.algebra
    if R.socle_dimension != 1:
        raise InputError(
            f"Poincare duality check requires a Gorenstein algebra, socle dimension is "
            f"{R.socle_dimension}"
        )
    if profile is None:
        profile = homology_profile(K)
    field = R.field
    n = K.n
    top = profile.cycle_representatives[n]  # one column: delta * e_{1..n}
    for i in range(1, n):
        di, dni = profile.dims[i], profile.dims[n - i]
        if di != dni:
            return False
        if di == 0:
            continue
        left = profile.cycle_representatives[i]
        right = profile.cycle_representatives[n - i]
        pairing = np.zeros((di, dni), dtype=np.int64)
        for a in range(di):
            for b in range(dni):
                _, prod = wedge_multiply(K, (i, left[:, a]), (n - i, right[:, b]))
                sol = field.solve(top, prod)
                if sol is None:
                    raise VerificationFailure(
                        "top-degree product is not a multiple of the socle cycle"
                    )
                pairing[a, b] = sol[0]
        if field.rank(pairing) != di:
            return False
    return True
