"""Artinian local algebras over F_p.

Every construction route (inverse system, ideal quotient, multiplication
table, quotients, fibre products, subalgebras) funnels through
``from_action_matrices``: given commuting nilpotent matrices A_1..A_n on some
faithful module, the algebra k[A_1..A_n] inside End(k^d) is rebuilt from
scratch — power filtration, minimal generators, a distinguished basis ordered
by m-adic degree, the full multiplication tensor, Hilbert function and socle.

Elements are coordinate vectors in the distinguished basis (entry 0 is the
coefficient of the unity).  In these coordinates the filtration is
coordinate-aligned: m^j is spanned by the basis vectors of degree >= j.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .dualpoly import DualPolynomial, contraction_span, parse_polynomial
from .errors import (
    InputError,
    NotArtinianError,
    PrincipalReductionNotFound,
    VerificationFailure,
)
from .linalg import Echelon, PrimeField


@dataclass(frozen=True)
class Classification:
    """Structural flags of an Artinian local algebra.

    ``epsilon_profile`` lists the compressed-ring degree bounds
    eps_i = min(C(n-1+s-i, n-1), C(n-1+i, n-1)) for 0 <= i <= s; the length
    bound compares l(R) against their sum over that full range.
    ``is_complete_intersection`` stays None unless a Koszul homology profile
    was supplied (the test is mu(I) = edim).
    """

    is_gorenstein: bool
    socle_type: int
    mu_m_squared: int
    is_stretched: bool
    is_almost_stretched: bool
    is_compressed: bool
    epsilon_profile: tuple[int, ...]
    codepth_leq_3_applicable: bool
    is_complete_intersection: bool | None


class ArtinianLocalAlgebra:
    """A finite-dimensional local k-algebra on a distinguished basis.

    Immutable after construction; do not mutate the stored arrays.
    """

    def __init__(
        self,
        field: PrimeField,
        generator_matrices: list[np.ndarray],
        left_mult_ops: np.ndarray,
        hilbert_function: tuple[int, ...],
        basis_labels: list[str],
        generator_names: list[str],
        socle_basis: np.ndarray,
        ambient_basis: np.ndarray | None = None,
    ):
        self.field = field
        self.generator_matrices = generator_matrices
        self.left_mult_ops = left_mult_ops  # shape (l, l, l): ops[k] = mult by basis elt k
        self.hilbert_function = hilbert_function
        self.basis_labels = basis_labels
        self.generator_names = generator_names
        self.socle_basis = socle_basis
        self.ambient_basis = ambient_basis  # columns: basis elements applied to the cyclic vector
        self.length = left_mult_ops.shape[0]
        self.edim = len(generator_matrices)
        self.loewy_length = len(hilbert_function) - 1
        self._offsets = tuple(
            int(x) for x in np.concatenate([[0], np.cumsum(hilbert_function)])
        )

    def __repr__(self):
        return (
            f"ArtinianLocalAlgebra(p={self.field.p}, length={self.length}, "
            f"hilbert={self.hilbert_function})"
        )

    # -- elements ----------------------------------------------------------

    def unity(self) -> np.ndarray:
        e = np.zeros(self.length, dtype=np.int64)
        e[0] = 1
        return e

    def generator_element(self, i: int) -> np.ndarray:
        if not 0 <= i < self.edim:
            raise InputError(f"generator index {i} out of range")
        e = np.zeros(self.length, dtype=np.int64)
        e[1 + i] = 1
        return e

    def left_mult_matrix(self, u) -> np.ndarray:
        u = self.field.array(u)
        return np.tensordot(u, self.left_mult_ops, axes=(0, 0)) % self.field.p

    def multiply(self, u, w) -> np.ndarray:
        return self.field.matmul(self.left_mult_matrix(u), self.field.array(w))

    def element_degree(self, u) -> int:
        """Largest j with u in m^j (loewy_length + 1 for u = 0)."""
        u = self.field.array(u)
        nz = np.nonzero(u)[0]
        if nz.size == 0:
            return self.loewy_length + 1
        first = int(nz[0])
        return next(j for j in range(len(self._offsets) - 1, -1, -1) if self._offsets[j] <= first)

    def coordinates_from_ambient(self, vectors) -> np.ndarray:
        """Distinguished coordinates of ambient vectors (columns, or one 1-D
        vector), for algebras built with a cyclic vector."""
        if self.ambient_basis is None:
            raise InputError("this algebra was built without an ambient realization")
        f = self.field
        V = f.array(vectors)
        single = V.ndim == 1
        if single:
            V = V.reshape(-1, 1)
        R, piv = f.rref(np.hstack([self.ambient_basis, V]))
        if list(piv[: self.length]) != list(range(self.length)) or len(piv) != self.length:
            raise InputError("vector lies outside the algebra's ambient image")
        coords = R[: self.length, self.length :]
        return coords[:, 0] if single else coords

    def evaluate(self, text: str) -> np.ndarray:
        """Evaluate a polynomial string in the generator names to an element."""
        poly = parse_polynomial(text, self.generator_names, self.field.p)
        out = np.zeros(self.length, dtype=np.int64)
        for mono, coeff in poly.terms.items():
            vec = self.unity()
            for i, e in enumerate(mono):
                for _ in range(e):
                    vec = self.field.matmul(self.generator_matrices[i], vec)
            out = (out + coeff * vec) % self.field.p
        return out

    # -- filtration and socle ------------------------------------------------

    def power_basis(self, j: int) -> np.ndarray:
        """Basis matrix of m^j (columns).  Coordinate-aligned by construction."""
        if j < 0:
            raise InputError("power index must be non-negative")
        off = self._offsets[min(j, len(self._offsets) - 1)]
        return self.field.identity(self.length)[:, off:]

    def power_dimension(self, j: int) -> int:
        return self.length - self._offsets[min(j, len(self._offsets) - 1)]

    @property
    def socle_dimension(self) -> int:
        return self.socle_basis.shape[1]

    @property
    def is_gorenstein(self) -> bool:
        return self.socle_dimension == 1

    def annihilator_of_power(self, i: int) -> np.ndarray:
        """Basis of (0 :_R m^i)."""
        basis = self.power_basis(i)
        if basis.shape[1] == 0:
            return self.field.identity(self.length)
        stacked = np.vstack([self.left_mult_matrix(basis[:, c]) for c in range(basis.shape[1])])
        return self.field.kernel_basis(stacked)

    # -- classification -------------------------------------------------------

    def classify(self, koszul_profile=None) -> Classification:
        n, s, l = self.edim, self.loewy_length, self.length
        r = self.socle_dimension
        mu2 = self.hilbert_function[2] if s >= 2 else 0
        if n >= 1:
            eps = tuple(
                min(math.comb(n - 1 + s - i, n - 1), math.comb(n - 1 + i, n - 1))
                for i in range(s + 1)
            )
        else:
            eps = ()
        ci = None
        if koszul_profile is not None:
            dims = getattr(koszul_profile, "dims", koszul_profile)
            ci = dims[1] == n if len(dims) > 1 else n == 0
        return Classification(
            is_gorenstein=(r == 1),
            socle_type=r,
            mu_m_squared=mu2,
            is_stretched=(mu2 == 1),
            is_almost_stretched=(mu2 == 2),
            is_compressed=(r == 1 and n >= 2 and l == sum(eps)),
            epsilon_profile=eps,
            codepth_leq_3_applicable=(n <= 3),
            is_complete_intersection=ci,
        )

    # -- quotients -------------------------------------------------------------

    def ideal_span(self, elements) -> np.ndarray:
        """Basis of the ideal generated by the given elements of m."""
        field = self.field
        seeds = []
        for e in elements:
            v = field.array(e)
            if v.shape != (self.length,):
                raise InputError("ideal generators must be coordinate vectors")
            if v[0] % field.p != 0:
                raise InputError("ideal generators must lie in the maximal ideal")
            seeds.append(v)
        ech = Echelon(field, self.length)
        kept: list[np.ndarray] = []
        frontier = []
        for v in seeds:
            if ech.add(v):
                kept.append(v)
                frontier.append(v)
        while frontier:
            nxt = []
            for v in frontier:
                for G in self.generator_matrices:
                    w = field.matmul(G, v)
                    if ech.add(w):
                        kept.append(w)
                        nxt.append(w)
            frontier = nxt
        if not kept:
            return np.zeros((self.length, 0), dtype=np.int64)
        return np.column_stack(kept)

    def quotient_with_map(self, elements):
        """The quotient algebra together with the surjection matrix sending
        distinguished coordinates of R to those of R/(elements)."""
        ideal = self.ideal_span(elements)
        proj, lift, _ = quotient_maps(self.field, ideal, self.length)
        mats = [
            self.field.matmul(self.field.matmul(proj, G), lift)
            for G in self.generator_matrices
        ]
        Q = from_action_matrices(
            self.field, mats, self.generator_names, cyclic_vector=proj[:, 0]
        )
        surjection = Q.coordinates_from_ambient(proj)
        return Q, surjection

    def quotient_by_ideal(self, elements) -> "ArtinianLocalAlgebra":
        return self.quotient_with_map(elements)[0]

    def quotient_by_power(self, i: int) -> "ArtinianLocalAlgebra":
        if not 2 <= i <= self.loewy_length:
            raise InputError(
                f"power must satisfy 2 <= i <= lo(R) = {self.loewy_length}, got {i}"
            )
        basis = self.power_basis(i)
        return self.quotient_by_ideal([basis[:, c] for c in range(basis.shape[1])])

    # -- principal reduction ----------------------------------------------------

    def find_principal_reduction(
        self,
        seed: int = 0,
        exhaustive_budget: int = 10**6,
        random_trials: int = 10**4,
    ) -> np.ndarray:
        """An x in m \\ m^2 with m^2 = x*m, certified by a rank computation.

        Any principal reduction can be normalized to a combination of the
        minimal generators (its m^2 part contributes only to m^3, so Nakayama
        removes it), and the certificate is scale-invariant; the exhaustive
        sweep therefore runs over scale-normalized generator combinations.
        """
        field = self.field
        p = field.p
        n = self.edim
        if n == 0:
            raise PrincipalReductionNotFound("exhausted", "the algebra has no generators")
        m_basis = self.power_basis(1)
        m2dim = self.power_dimension(2)

        def certifies(x) -> bool:
            image = field.matmul(self.left_mult_matrix(x), m_basis)
            return field.rank(image) == m2dim

        def from_coeffs(c) -> np.ndarray:
            x = np.zeros(self.length, dtype=np.int64)
            x[1 : 1 + n] = np.asarray(c, dtype=np.int64) % p
            return x

        for i in range(n):
            x = self.generator_element(i)
            if certifies(x):
                return x
        if p**n <= exhaustive_budget * (p - 1):
            # (p^n - 1)/(p - 1) candidates: leading coefficient normalized to 1
            for lead in range(n):
                for tail in itertools.product(range(p), repeat=n - 1 - lead):
                    c = [0] * lead + [1] + list(tail)
                    x = from_coeffs(c)
                    if certifies(x):
                        return x
            detail = (
                f"search exhausted: no principal reduction exists; mu(m^2) = "
                f"{self.hilbert_function[2] if self.loewy_length >= 2 else 0} >= 3 pathology"
            )
            raise PrincipalReductionNotFound("exhausted", detail)
        rng = np.random.default_rng(seed)
        for _ in range(random_trials):
            c = rng.integers(0, p, size=n)
            if not np.any(c):
                continue
            x = from_coeffs(c)
            if certifies(x):
                return x
        raise PrincipalReductionNotFound(
            "budget",
            f"random search budget ({random_trials} trials, seed {seed}) exhausted; "
            "existence undecided",
        )


# -- construction ----------------------------------------------------------------


def quotient_maps(field: PrimeField, subspace: np.ndarray, ambient: int):
    """Projection/section pair for ambient -> ambient/col(subspace).

    Returns (proj, lift, free): ``proj @ v`` reduces v against the subspace's
    row-echelon rows and reads off the non-pivot coordinates, so it kills
    exactly col(subspace); ``proj @ lift`` is the identity; ``free`` lists the
    surviving coordinate indices.
    """
    R, piv = field.rref(subspace.T)
    free = [c for c in range(ambient) if c not in set(piv)]
    M = np.zeros((ambient, ambient), dtype=np.int64)
    for k, pc in enumerate(piv):
        M[:, pc] = R[k]
    proj_full = (field.identity(ambient) - M) % field.p
    proj = proj_full[free, :]
    lift = field.identity(ambient)[:, free]
    return proj, lift, free


class _Tracked:
    """An operator together with its monomial expression in the generators."""

    __slots__ = ("op", "poly")

    def __init__(self, op: np.ndarray, poly: dict):
        self.op = op
        self.poly = poly


def from_action_matrices(
    field: PrimeField,
    action_matrices: list[np.ndarray],
    generator_names: list[str] | None = None,
    cyclic_vector: np.ndarray | None = None,
) -> ArtinianLocalAlgebra:
    """The algebra k[A_1..A_n] generated by commuting nilpotent matrices.

    The matrices need not be a minimal generating set: generators falling
    into m^2 (or into the span of earlier ones) are pruned.  Non-commuting
    or non-nilpotent input is rejected.

    When ``cyclic_vector`` is given, the ambient module is checked to be a
    faithful cyclic model of the algebra (basis operators applied to the
    vector stay independent) and ``coordinates_from_ambient`` becomes
    available on the result.
    """
    mats = [field.array(A) for A in action_matrices]
    if not mats:
        d = 1
    else:
        d = mats[0].shape[0]
        for A in mats:
            if A.shape != (d, d):
                raise InputError("action matrices must be square and equally sized")
    if generator_names is None:
        generator_names = [f"x{i + 1}" for i in range(len(mats))]
    if len(generator_names) != len(mats):
        raise InputError("one name per action matrix is required")
    for i, A in enumerate(mats):
        for j in range(i + 1, len(mats)):
            if np.any(field.matmul(A, mats[j]) != field.matmul(mats[j], A)):
                raise InputError(
                    f"action matrices {generator_names[i]} and {generator_names[j]} "
                    "do not commute"
                )

    width = d * d
    n_orig = len(mats)

    def times_gen(item: _Tracked, i: int) -> _Tracked:
        poly = {}
        for mono, c in item.poly.items():
            key = mono[:i] + (mono[i] + 1,) + mono[i + 1 :]
            poly[key] = c
        return _Tracked(field.matmul(mats[i], item.op), poly)

    # filtration levels: F_1 = module closure of the generators, F_{j+1} = m*F_j
    identity_item = _Tracked(field.identity(d), {(0,) * n_orig: 1})
    levels: list[list[_Tracked]] = []
    ech1 = Echelon(field, width)
    level1: list[_Tracked] = []
    frontier: list[_Tracked] = []
    for i in range(n_orig):
        item = times_gen(identity_item, i)
        if ech1.add(item.op.ravel()):
            level1.append(item)
            frontier.append(item)
    while frontier:
        nxt = []
        for item in frontier:
            for i in range(n_orig):
                cand = times_gen(item, i)
                if ech1.add(cand.op.ravel()):
                    level1.append(cand)
                    nxt.append(cand)
        frontier = nxt
    if level1:
        levels.append(level1)
    while levels and levels[-1]:
        prev = levels[-1]
        ech = Echelon(field, width)
        nxt = []
        for item in prev:
            for i in range(n_orig):
                cand = times_gen(item, i)
                if ech.add(cand.op.ravel()):
                    nxt.append(cand)
        if len(nxt) >= len(prev):
            raise InputError("action matrices are not nilpotent (no Artinian filtration)")
        if not nxt:
            break
        levels.append(nxt)

    loewy = len(levels)
    length = 1 + (len(levels[0]) if levels else 0)

    # minimal generators: images independent modulo m^2
    f2_ops = [it.op.ravel() for it in (levels[1] if loewy >= 2 else [])]
    ech = Echelon(field, width)
    for v in f2_ops:
        ech.add(v)
    min_gen_indices = []
    for i in range(n_orig):
        if ech.add(mats[i].ravel()):
            min_gen_indices.append(i)
    n_min = len(min_gen_indices)

    # distinguished basis: unity, then a complement of F_{j+1} in F_j per degree
    basis_items: list[_Tracked] = [identity_item]
    hilbert = [1]
    for j in range(1, loewy + 1):
        upper = levels[j] if j < loewy else []
        ech = Echelon(field, width)
        for it in upper:
            ech.add(it.op.ravel())
        block: list[_Tracked] = []
        candidates: list[_Tracked]
        if j == 1:
            candidates = [_Tracked(mats[i], {_mono(n_orig, i): 1}) for i in min_gen_indices]
            candidates += levels[0]
        else:
            candidates = levels[j - 1]
        for it in candidates:
            if ech.add(it.op.ravel()):
                block.append(it)
        basis_items.extend(block)
        hilbert.append(len(block))
    if len(basis_items) != length:
        raise VerificationFailure(
            f"basis construction mismatch: {len(basis_items)} vs length {length}"
        )

    # coordinates: one reduced elimination for generator action and products
    P = np.column_stack([it.op.ravel() for it in basis_items])
    prod_cols = []
    for i in min_gen_indices:
        for it in basis_items:
            prod_cols.append(field.matmul(mats[i], it.op).ravel())
    for it in basis_items:
        for jt in basis_items:
            prod_cols.append(field.matmul(it.op, jt.op).ravel())
    big = np.hstack([P, np.column_stack(prod_cols)]) if prod_cols else P
    R, piv = field.rref(big)
    if list(piv[:length]) != list(range(length)) or len(piv) != length:
        raise VerificationFailure("distinguished basis is not independent or not closed")
    coords = R[:length, length:]

    l = length
    gen_mats = []
    for pos in range(n_min):
        gen_mats.append(coords[:, pos * l : (pos + 1) * l].copy())
    ops = np.empty((l, l, l), dtype=np.int64)
    base = n_min * l
    for k in range(l):
        ops[k] = coords[:, base + k * l : base + (k + 1) * l]

    labels = [
        DualPolynomial(n_orig, it.poly, field.p).render(list(generator_names))
        for it in basis_items
    ]
    names = [generator_names[i] for i in min_gen_indices]

    if gen_mats:
        socle = field.kernel_basis(np.vstack(gen_mats))
    else:
        socle = field.identity(l)

    ambient_basis = None
    if cyclic_vector is not None:
        v = field.array(cyclic_vector)
        if v.shape != (d,):
            raise InputError(f"cyclic vector has shape {v.shape}, expected ({d},)")
        ambient_basis = np.column_stack([field.matmul(it.op, v) for it in basis_items])
        if field.rank(ambient_basis) != l:
            raise InputError(
                "the cyclic vector does not carry a faithful copy of the algebra"
            )

    return ArtinianLocalAlgebra(
        field=field,
        generator_matrices=gen_mats,
        left_mult_ops=ops,
        hilbert_function=tuple(hilbert),
        basis_labels=labels,
        generator_names=names,
        socle_basis=socle,
        ambient_basis=ambient_basis,
    )


def _mono(n: int, i: int) -> tuple:
    m = [0] * n
    m[i] = 1
    return tuple(m)


def from_inverse_system(p: int, generators: list[DualPolynomial]) -> ArtinianLocalAlgebra:
    """The algebra k[X_1..X_n]/ann(span of generators), realized through the
    contraction action on the span."""
    field = PrimeField(p)
    if not generators:
        raise InputError("at least one dual generator is required")
    for g in generators:
        if g.modulus != p:
            raise InputError("generator modulus does not match the field")
    if all(g.is_constant() for g in generators):
        raise InputError("all generators are constant: the algebra would be zero")
    span = contraction_span(generators)
    basis = span.span_basis
    n = generators[0].num_vars
    lead_index = {poly.leading_monomial(): idx for idx, poly in enumerate(basis)}
    w = span.total_dimension

    def express(poly: DualPolynomial) -> np.ndarray:
        vec = np.zeros(w, dtype=np.int64)
        terms = dict(poly.terms)
        while terms:
            lead = max(terms, key=lambda m: (sum(m), m))
            idx = lead_index.get(lead)
            if idx is None:
                raise VerificationFailure("contraction left the span: span not closed")
            c = terms[lead]
            vec[idx] = c
            for m, a in basis[idx].terms.items():
                v = (terms.get(m, 0) - c * a) % p
                if v:
                    terms[m] = v
                else:
                    terms.pop(m, None)
        return vec

    action = []
    for i in range(n):
        A = np.zeros((w, w), dtype=np.int64)
        for j, b in enumerate(basis):
            A[:, j] = express(b.contract(i))
        action.append(A)
    names = [f"Y{i + 1}" for i in range(n)]
    algebra = from_action_matrices(field, action, names)
    if algebra.length != w:
        raise VerificationFailure(
            f"length {algebra.length} differs from inverse-system dimension {w}"
        )
    return algebra


def from_ideal(
    p: int,
    variables: list[str],
    generators: list[str | DualPolynomial],
    max_bound: int = 20,
) -> ArtinianLocalAlgebra:
    """k[X]/I for I inside (X)^2, by truncated linear algebra.

    For increasing N the quotient by I + (X)^{N+1} is spanned inside the
    monomials of degree <= N; the first N whose degree-N layer vanishes
    proves (X)^N is contained in I, so that truncation is exact.
    """
    field = PrimeField(p)
    if max_bound < 2:
        raise InputError("max_bound must be at least 2")
    polys: list[DualPolynomial] = []
    for g in generators:
        poly = g if isinstance(g, DualPolynomial) else parse_polynomial(g, variables, p)
        if poly.is_zero():
            continue
        if poly.min_degree() < 2:
            raise InputError(
                f"ideal generator {poly.render(list(variables))!r} has a unit or linear term"
            )
        polys.append(poly)
    n = len(variables)

    for N in range(2, max_bound + 1):
        monos = _monomials_up_to(n, N)
        index = {m: i for i, m in enumerate(monos)}
        cols = []
        for g in polys:
            for m in _monomials_up_to(n, N - g.min_degree()):
                col = np.zeros(len(monos), dtype=np.int64)
                for a, c in g.terms.items():
                    t = tuple(x + y for x, y in zip(a, m))
                    if sum(t) <= N:
                        col[index[t]] = c
                cols.append(col)
        U = np.column_stack(cols) if cols else np.zeros((len(monos), 0), dtype=np.int64)
        proj, _, free = quotient_maps(field, U, len(monos))
        top = [index[m] for m in monos if sum(m) == N]
        if top and np.any(proj[:, top]):
            continue
        # degree-N layer vanished: the truncation is exact.  Free monomials
        # all have degree < N, so multiplying by a variable never escapes.
        q = len(free)
        action = []
        for v in range(n):
            A = np.zeros((q, q), dtype=np.int64)
            for col, mono_i in enumerate(free):
                m = monos[mono_i]
                t = tuple(m[j] + (1 if j == v else 0) for j in range(n))
                A[:, col] = proj[:, index[t]]
            action.append(A)
        unity = np.zeros(q, dtype=np.int64)
        unity[free.index(index[(0,) * n])] = 1
        return from_action_matrices(field, action, list(variables), cyclic_vector=unity)
    raise NotArtinianError(
        f"ideal quotient is not Artinian within truncation bound {max_bound}"
    )


def _monomials_up_to(n: int, degree: int) -> list[tuple]:
    """Exponent vectors of total degree <= degree, graded then lex."""
    out = []
    for d in range(degree + 1):
        if n == 0:
            if d == 0:
                out.append(())
            continue
        block = []
        for combo in itertools.combinations_with_replacement(range(n), d):
            m = [0] * n
            for i in combo:
                m[i] += 1
            block.append(tuple(m))
        out.extend(sorted(block, reverse=True))
    return out


def from_table(p: int, basis_size: int, generator_tables: list) -> ArtinianLocalAlgebra:
    """Rebuild an algebra from serialized generator multiplication matrices.

    The matrices must act on the algebra's own distinguished basis (unity
    first); the reconstruction verifies that the unity generates and that the
    algebra has the stated dimension.
    """
    field = PrimeField(p)
    mats = []
    for t in generator_tables:
        A = field.array(t)
        if A.shape != (basis_size, basis_size):
            raise InputError(
                f"generator table has shape {A.shape}, expected {(basis_size, basis_size)}"
            )
        mats.append(A)
    unity = np.zeros(basis_size, dtype=np.int64)
    unity[0] = 1
    algebra = from_action_matrices(
        field, mats, [f"x{i+1}" for i in range(len(mats))], cyclic_vector=unity
    )
    if algebra.length != basis_size:
        raise InputError(
            f"table is inconsistent: algebra has length {algebra.length}, "
            f"table claims {basis_size}"
        )
    return algebra
