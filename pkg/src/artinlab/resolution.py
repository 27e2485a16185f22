"""Minimal free resolutions and Betti numbers over an Artinian local algebra.

A module is carried as an explicit k-space with the action of every
distinguished algebra basis element (the n generator actions are a slice of
that).  Free modules R^b are coordinatized block-per-free-generator, so a
vector splits into b ring elements of length l; syzygies are then plain
kernel computations and minimal generators are lifted by a deterministic
greedy scan.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import ArtinianLocalAlgebra, quotient_maps
from .errors import InputError, VerificationFailure
from .linalg import Echelon
from . import series

DEFAULT_COLUMN_BUDGET = 200_000


@dataclass(frozen=True)
class FinModule:
    """A finite R-module as a k-space with the ring action."""

    algebra: ArtinianLocalAlgebra
    dimension: int
    ring_action: np.ndarray  # shape (l, dim, dim): action of each basis element

    @property
    def action_matrices(self) -> list[np.ndarray]:
        """Action of the n minimal generators."""
        return [self.ring_action[1 + i] for i in range(self.algebra.edim)]


def module_from_quotient(R: ArtinianLocalAlgebra, elements) -> FinModule:
    """The cyclic module R/(elements) with the induced action."""
    ideal = R.ideal_span(elements)
    proj, lift, _ = quotient_maps(R.field, ideal, R.length)
    dim = proj.shape[0]
    action = np.empty((R.length, dim, dim), dtype=np.int64)
    for k in range(R.length):
        action[k] = R.field.matmul(R.field.matmul(proj, R.left_mult_ops[k]), lift)
    return FinModule(algebra=R, dimension=dim, ring_action=action)


def regular_module(R: ArtinianLocalAlgebra) -> FinModule:
    return FinModule(algebra=R, dimension=R.length, ring_action=R.left_mult_ops)


def residue_field_module(R: ArtinianLocalAlgebra) -> FinModule:
    basis = R.power_basis(1)
    return module_from_quotient(R, [basis[:, c] for c in range(basis.shape[1])])


@dataclass(frozen=True)
class BettiTable:
    """Betti numbers with the differentials of the minimal resolution.

    ``differentials[i]`` has shape (beta_{i-1}, beta_i, l): entry [a, b] is the
    ring element in row a, column b of d_i.  ``exact_through`` is the last
    homological degree where exactness was verified numerically.
    """

    betti: tuple[int, ...]
    differentials: tuple[np.ndarray, ...]
    max_degree: int
    truncated: bool = False
    exact_through: int = 0

    def poincare_coefficients(self) -> tuple[int, ...]:
        return self.betti


def minimal_free_resolution(
    M: FinModule, D: int, column_budget: int = DEFAULT_COLUMN_BUDGET
) -> BettiTable:
    """Resolve M minimally out to homological degree D.

    Each step certifies itself: differential entries lie in m, consecutive
    columns are syzygies of the previous map, and the rank of each lifted map
    matches the syzygy dimension (step exactness).
    """
    if D < 0:
        raise InputError("resolution degree must be non-negative")
    R = M.algebra
    f = R.field
    l = R.length

    # step 0: minimal generators of M
    mM = _module_radical(M)
    gens = _greedy_complement(f, mM, _unit_columns(M.dimension), M.dimension)
    beta = [gens.shape[1]]
    phi = _cover_matrix(M, gens)
    diffs: list[np.ndarray] = []
    exact_through = 0
    truncated = False

    prev_syz_dim = M.dimension  # rank of phi_0 must cover all of M
    for step in range(1, D + 1):
        syzygies = f.kernel_basis(phi)
        k_dim = syzygies.shape[1]
        prev_rank = phi.shape[1] - k_dim
        # exactness at step-1: the lifted map covers exactly the target space
        if prev_rank != prev_syz_dim:
            raise VerificationFailure(
                f"resolution not exact at step {step - 1}: rank {prev_rank} "
                f"vs expected {prev_syz_dim}"
            )
        exact_through = step - 1
        if k_dim == 0:
            beta.extend([0] * (D - step + 1))
            diffs.extend(
                np.zeros((beta[i - 1], 0, l), dtype=np.int64) for i in range(step, D + 1)
            )
            return BettiTable(
                betti=tuple(beta),
                differentials=tuple(diffs),
                max_degree=D,
                truncated=False,
                exact_through=exact_through,
            )
        mK = _free_radical(R, syzygies, beta[-1])
        chosen = _greedy_complement(f, mK, syzygies, l * beta[-1])
        b = chosen.shape[1]
        _assert_entries_in_m(chosen, l, step)
        if np.any(f.matmul(phi, chosen)):
            raise VerificationFailure(f"d^2 != 0 entering step {step}")
        diffs.append(_columns_to_ring_entries(chosen, beta[-1], l))
        beta.append(b)
        if l * b > column_budget:
            truncated = True
            break
        prev_syz_dim = k_dim
        if step < D:
            phi = _free_cover_matrix(R, chosen)

    # pad with nothing: table covers degrees 0..len(beta)-1
    return BettiTable(
        betti=tuple(beta),
        differentials=tuple(diffs),
        max_degree=len(beta) - 1,
        truncated=truncated,
        exact_through=exact_through,
    )


def betti_of_k(R: ArtinianLocalAlgebra, D: int, column_budget: int = DEFAULT_COLUMN_BUDGET):
    """Minimal resolution of the residue field."""
    table = minimal_free_resolution(residue_field_module(R), D, column_budget)
    if table.betti[0] != 1 or (len(table.betti) > 1 and table.betti[1] != R.edim):
        raise VerificationFailure(
            f"resolution of k starts {table.betti[:2]}, expected (1, {R.edim})"
        )
    return table


# -- internal helpers ------------------------------------------------------------


def _unit_columns(dim: int) -> np.ndarray:
    return np.eye(dim, dtype=np.int64)


def _module_radical(M: FinModule) -> np.ndarray:
    """Basis of m*M."""
    mats = M.action_matrices
    if not mats:
        return np.zeros((M.dimension, 0), dtype=np.int64)
    return M.algebra.field.column_space(np.hstack(mats))


def _free_radical(R: ArtinianLocalAlgebra, basis: np.ndarray, blocks: int) -> np.ndarray:
    """Basis of m*K for K spanned by the given columns inside R^blocks."""
    f = R.field
    l = R.length
    cols = basis.shape[1]
    if cols == 0 or not R.generator_matrices:
        return np.zeros((basis.shape[0], 0), dtype=np.int64)
    moved = basis.reshape(blocks, l, cols).transpose(1, 0, 2).reshape(l, blocks * cols)
    pieces = []
    for G in R.generator_matrices:
        piece = f.matmul(G, moved).reshape(l, blocks, cols).transpose(1, 0, 2)
        pieces.append(piece.reshape(blocks * l, cols))
    return f.column_space(np.hstack(pieces))


def _greedy_complement(field, inside: np.ndarray, candidates: np.ndarray, width: int):
    """Columns of ``candidates`` independent modulo col(inside), scanned
    left to right (the lexicographically first lift of a basis of the
    quotient under the coordinate order)."""
    ech = Echelon(field, width)
    for c in range(inside.shape[1]):
        ech.add(inside[:, c])
    chosen = []
    for c in range(candidates.shape[1]):
        if ech.add(candidates[:, c]):
            chosen.append(candidates[:, c])
    if not chosen:
        return np.zeros((width, 0), dtype=np.int64)
    return np.column_stack(chosen)


def _cover_matrix(M: FinModule, gens: np.ndarray) -> np.ndarray:
    """The k-matrix of R^b -> M, e_{(j,k)} -> b_k . g_j (block layout j*l+k)."""
    R = M.algebra
    f = R.field
    l = R.length
    b = gens.shape[1]
    dim = M.dimension
    # flatten the ring action to ((a, k), dim) and hit all generators at once
    act = np.ascontiguousarray(M.ring_action.transpose(1, 0, 2)).reshape(dim * l, dim)
    out = f.matmul(act, gens)  # ((a, k), j)
    out = out.reshape(dim, l, b).transpose(0, 2, 1)  # [a, j, k]
    return np.ascontiguousarray(out.reshape(dim, b * l))


def _free_cover_matrix(R: ArtinianLocalAlgebra, gens: np.ndarray) -> np.ndarray:
    """Same as _cover_matrix for the free module R^blocks containing gens."""
    f = R.field
    l = R.length
    amb = gens.shape[0]
    blocks = amb // l
    b = gens.shape[1]
    G3 = gens.reshape(blocks, l, b)
    # ops has shape (l, l, l); contract ring coordinate of gens with ops
    ops_flat = R.left_mult_ops.transpose(1, 0, 2).reshape(l * l, l)  # rows (a, k)
    moved = G3.transpose(1, 0, 2).reshape(l, blocks * b)
    out = f.matmul(ops_flat, moved)  # ((a,k), (g,j))
    out = out.reshape(l, l, blocks, b)  # [a, k, g, j]
    out = out.transpose(2, 0, 3, 1)  # [g, a, j, k]
    return np.ascontiguousarray(out.reshape(blocks * l, b * l))


def _assert_entries_in_m(columns: np.ndarray, l: int, step: int):
    unity_rows = columns[::l, :]
    if np.any(unity_rows):
        raise VerificationFailure(
            f"differential at step {step} has a unit entry (resolution not minimal)"
        )


def _columns_to_ring_entries(columns: np.ndarray, blocks: int, l: int) -> np.ndarray:
    b = columns.shape[1]
    return np.ascontiguousarray(columns.reshape(blocks, l, b).transpose(0, 2, 1))


# -- Serre's inequality -----------------------------------------------------------


@dataclass(frozen=True)
class SerreReport:
    left: tuple[int, ...]  # beta^S_i(k)
    right: tuple[int, ...]  # expansion of P^R_k / (1 - t(P^R_S - 1))
    termwise_le: bool
    equality: bool
    first_strict_degree: int | None


def serre_inequality_check(R: ArtinianLocalAlgebra, quotient_elements, D: int) -> SerreReport:
    """Compare P^S_k against Serre's upper bound for S = R/(elements).

    Equality to degree D is Golod-homomorphism evidence for R ->> S; the
    inequality itself always holds, so a violation signals a bug.
    """
    if D < 1:
        raise InputError("Serre comparison needs degree at least 1")
    S = R.quotient_by_ideal(quotient_elements)
    left = betti_of_k(S, D).betti[: D + 1]
    M_S = module_from_quotient(R, quotient_elements)
    prs = minimal_free_resolution(M_S, D).betti[: D + 1]
    prk = betti_of_k(R, D).betti[: D + 1]
    denom = [1] + [-c for c in prs[:D]]  # 1 - t*(P^R_S - 1): drop constant, shift
    denom[1] += 1
    right_series = series.series_from_betti(prk).mul(
        series.series_from_coefficients(denom).inverse()
    )
    right = right_series.coefficients[: D + 1]
    strict = None
    le = True
    for i in range(min(len(left), len(right))):
        if left[i] > right[i]:
            le = False
            break
        if left[i] < right[i] and strict is None:
            strict = i
    return SerreReport(
        left=tuple(left),
        right=tuple(right),
        termwise_le=le,
        equality=le and strict is None,
        first_strict_degree=strict,
    )
