"""Dual polynomials and the contraction action.

A dual polynomial lives in k[Y_1..Y_n]; the variable X_i of the ambient
polynomial ring acts by contraction: X_i sends the monomial Y^a to Y^(a - e_i)
when a_i >= 1 and to zero otherwise.  No binomial coefficients enter, so the
action behaves identically in every characteristic.

Exponent vectors are integer tuples of length ``num_vars``; coefficients are
reduced to [1, p).  Monomials are compared in graded lexicographic order.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InputError, PolynomialSyntaxError
from .linalg import PrimeField

Monomial = tuple[int, ...]


def _grlex_key(mono: Monomial):
    return (sum(mono), mono)


class DualPolynomial:
    """A sparse polynomial in the dual variables with coefficients mod p."""

    __slots__ = ("num_vars", "modulus", "terms")

    def __init__(self, num_vars: int, terms: dict[Monomial, int], modulus: int):
        self.num_vars = int(num_vars)
        self.modulus = int(modulus)
        clean: dict[Monomial, int] = {}
        for mono, coeff in terms.items():
            mono = tuple(int(e) for e in mono)
            if len(mono) != self.num_vars or any(e < 0 for e in mono):
                raise InputError(f"bad exponent vector {mono} for {self.num_vars} variables")
            c = int(coeff) % self.modulus
            if c:
                clean[mono] = c
        self.terms = clean

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, num_vars: int, modulus: int) -> "DualPolynomial":
        return cls(num_vars, {}, modulus)

    @classmethod
    def monomial(cls, num_vars: int, exponents: Monomial, modulus: int, coeff: int = 1):
        return cls(num_vars, {tuple(exponents): coeff}, modulus)

    # -- basic queries -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(sum(m) == 0 for m in self.terms)

    def total_degree(self) -> int:
        """Degree of the highest term; -1 for the zero polynomial."""
        return max((sum(m) for m in self.terms), default=-1)

    def min_degree(self) -> int:
        return min((sum(m) for m in self.terms), default=-1)

    def support_variables(self) -> set[int]:
        return {i for m in self.terms for i in range(self.num_vars) if m[i] > 0}

    def leading_monomial(self) -> Monomial:
        if not self.terms:
            raise InputError("zero polynomial has no leading monomial")
        return max(self.terms, key=_grlex_key)

    def __eq__(self, other):
        return (
            isinstance(other, DualPolynomial)
            and other.num_vars == self.num_vars
            and other.modulus == self.modulus
            and other.terms == self.terms
        )

    def __hash__(self):
        return hash((self.num_vars, self.modulus, frozenset(self.terms.items())))

    def __repr__(self):
        return f"DualPolynomial({self.render()!r} mod {self.modulus})"

    def render(self, names: list[str] | None = None) -> str:
        if not self.terms:
            return "0"
        names = names or [f"Y{i + 1}" for i in range(self.num_vars)]
        parts = []
        for mono in sorted(self.terms, key=_grlex_key, reverse=True):
            c = self.terms[mono]
            factors = [str(c)] if (c != 1 or sum(mono) == 0) else []
            for i, e in enumerate(mono):
                if e == 1:
                    factors.append(names[i])
                elif e > 1:
                    factors.append(f"{names[i]}^{e}")
            parts.append("*".join(factors))
        return " + ".join(parts)

    # -- arithmetic ----------------------------------------------------------

    def add(self, other: "DualPolynomial") -> "DualPolynomial":
        self._check_compatible(other)
        merged = dict(self.terms)
        for m, c in other.terms.items():
            merged[m] = merged.get(m, 0) + c
        return DualPolynomial(self.num_vars, merged, self.modulus)

    def scale(self, c: int) -> "DualPolynomial":
        return DualPolynomial(self.num_vars, {m: v * c for m, v in self.terms.items()}, self.modulus)

    def contract(self, var: int) -> "DualPolynomial":
        """Apply X_{var}: decrement the exponent of Y_{var}, dropping monomials
        where it is absent.  ``var`` is 0-based."""
        if not 0 <= var < self.num_vars:
            raise InputError(f"variable index {var} out of range for {self.num_vars} variables")
        out: dict[Monomial, int] = {}
        for m, c in self.terms.items():
            if m[var] >= 1:
                lowered = m[:var] + (m[var] - 1,) + m[var + 1 :]
                out[lowered] = c
        return DualPolynomial(self.num_vars, out, self.modulus)

    def embed(self, num_vars: int, offset: int = 0) -> "DualPolynomial":
        """Re-index into a larger variable set, shifting variables by ``offset``."""
        if offset < 0 or self.num_vars + offset > num_vars:
            raise InputError("embedding does not fit in the target variable set")
        out = {}
        for m, c in self.terms.items():
            out[(0,) * offset + m + (0,) * (num_vars - offset - self.num_vars)] = c
        return DualPolynomial(num_vars, out, self.modulus)

    def _check_compatible(self, other: "DualPolynomial"):
        if other.num_vars != self.num_vars:
            raise InputError(
                f"variable counts differ: {self.num_vars} vs {other.num_vars}"
            )
        if other.modulus != self.modulus:
            raise InputError(f"moduli differ: {self.modulus} vs {other.modulus}")


def sum_disjoint(f: DualPolynomial, g: DualPolynomial) -> DualPolynomial:
    """The formal sum of polynomials in disjoint variables.

    Both arguments must already live in the union variable set (use
    ``DualPolynomial.embed`` to re-index); sharing a variable is an error.
    """
    f._check_compatible(g)
    overlap = f.support_variables() & g.support_variables()
    if overlap:
        raise InputError(
            f"summands share variables {sorted(i + 1 for i in overlap)}; re-index first"
        )
    return f.add(g)


# -- polynomial text grammar --------------------------------------------------
#
# terms joined by '+'/'-'; a term is factors joined by '*'; a factor is either
# an integer literal or  name  or  name^exponent.  Whitespace is ignored.


def parse_polynomial(text: str, variables: list[str], modulus: int) -> DualPolynomial:
    if len(set(variables)) != len(variables):
        raise InputError(f"variable names are not unique: {variables}")
    index = {name: i for i, name in enumerate(variables)}
    n = len(variables)
    compact = "".join(text.split())
    if not compact:
        raise PolynomialSyntaxError("empty polynomial")
    terms: dict[Monomial, int] = {}
    sign = 1
    pos = 0
    if compact[0] in "+-":
        sign = -1 if compact[0] == "-" else 1
        pos = 1
    while pos <= len(compact):
        end = pos
        while end < len(compact) and compact[end] not in "+-":
            end += 1
        chunk = compact[pos:end]
        if not chunk:
            raise PolynomialSyntaxError(f"missing term near position {pos} in {text!r}")
        coeff, mono = _parse_term(chunk, index, n, text)
        mono = tuple(mono)
        terms[mono] = terms.get(mono, 0) + sign * coeff
        if end >= len(compact):
            break
        sign = -1 if compact[end] == "-" else 1
        pos = end + 1
    return DualPolynomial(n, terms, modulus)


def _parse_term(chunk: str, index: dict[str, int], n: int, full_text: str):
    coeff = 1
    mono = [0] * n
    for factor in chunk.split("*"):
        if not factor:
            raise PolynomialSyntaxError(f"empty factor in term {chunk!r} of {full_text!r}")
        if factor.isdigit():
            coeff *= int(factor)
            continue
        base, caret, exp = factor.partition("^")
        if base not in index:
            raise PolynomialSyntaxError(f"unknown variable {base!r} in {full_text!r}")
        if caret:
            if not exp.isdigit():
                raise PolynomialSyntaxError(f"bad exponent {exp!r} in {full_text!r}")
            e = int(exp)
        else:
            e = 1
        mono[index[base]] += e
    return coeff, mono


# -- contraction span ---------------------------------------------------------


@dataclass(frozen=True)
class ContractionSpan:
    """The k-span of all iterated contractions of a generator set.

    ``span_basis`` is linearly independent and the span is closed under every
    contraction; ``total_dimension`` equals the length of the corresponding
    Artinian algebra.  ``degree_profile[d]`` counts basis elements whose
    leading term (graded lex) has total degree d; for homogeneous generators
    this is the usual graded dimension count.
    """

    span_basis: tuple[DualPolynomial, ...]
    total_dimension: int
    degree_profile: tuple[int, ...]


def contraction_span(generators: list[DualPolynomial]) -> ContractionSpan:
    """Close the generators under the contractions by breadth-first search,
    keeping an echelon (by leading monomial) to discard dependent elements."""
    if not generators:
        raise InputError("at least one generator is required")
    n = generators[0].num_vars
    p = generators[0].modulus
    for g in generators[1:]:
        generators[0]._check_compatible(g)
    PrimeField(p)  # validates the modulus

    echelon: dict[Monomial, dict[Monomial, int]] = {}
    basis: list[DualPolynomial] = []

    def reduce_terms(terms: dict[Monomial, int]) -> dict[Monomial, int]:
        terms = dict(terms)
        while terms:
            lead = max(terms, key=_grlex_key)
            row = echelon.get(lead)
            if row is None:
                return terms
            c = terms[lead]
            for m, a in row.items():
                v = (terms.get(m, 0) - c * a) % p
                if v:
                    terms[m] = v
                else:
                    terms.pop(m, None)
        return terms

    def insert(terms: dict[Monomial, int]) -> DualPolynomial | None:
        residual = reduce_terms(terms)
        if not residual:
            return None
        lead = max(residual, key=_grlex_key)
        inv = pow(residual[lead], p - 2, p)
        normalized = {m: c * inv % p for m, c in residual.items()}
        echelon[lead] = normalized
        poly = DualPolynomial(n, normalized, p)
        basis.append(poly)
        return poly

    frontier = [poly for g in generators if (poly := insert(g.terms)) is not None]
    while frontier:
        next_frontier = []
        for f in frontier:
            for i in range(n):
                contracted = f.contract(i)
                if contracted.is_zero():
                    continue
                kept = insert(contracted.terms)
                if kept is not None:
                    next_frontier.append(kept)
        frontier = next_frontier

    degrees = [sum(lead) for lead in echelon]
    profile = [0] * (max(degrees, default=0) + 1)
    for d in degrees:
        profile[d] += 1
    return ContractionSpan(tuple(basis), len(basis), tuple(profile))
