"""Truncated integer power series and the rational Poincare-series formulas.

Polynomials are tuples of Python ints, lowest degree first, trailing zeros
trimmed; arithmetic is exact (coefficients grow geometrically and must never
wrap).  A RationalSeries is a numerator/denominator pair whose expansion is
well defined whenever the denominator has constant term +-1.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import InputError, VerificationFailure

Poly = tuple[int, ...]


def poly(coeffs: Sequence[int]) -> Poly:
    out = [int(c) for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def poly_add(a: Sequence[int], b: Sequence[int]) -> Poly:
    n = max(len(a), len(b))
    return poly([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def poly_sub(a: Sequence[int], b: Sequence[int]) -> Poly:
    return poly_add(a, [-c for c in b])


def poly_mul(a: Sequence[int], b: Sequence[int]) -> Poly:
    a, b = poly(a), poly(b)
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
    return poly(out)


def poly_pow(a: Sequence[int], e: int) -> Poly:
    out: Poly = (1,)
    for _ in range(e):
        out = poly_mul(out, a)
    return out


def poly_degree(a: Sequence[int]) -> int:
    a = poly(a)
    return len(a) - 1 if a else -1


ONE_PLUS_T: Poly = (1, 1)


@dataclass(frozen=True)
class PowerSeriesZ:
    """Exact integer series coefficients c_0..c_D."""

    coefficients: tuple[int, ...]

    @property
    def truncation_degree(self) -> int:
        return len(self.coefficients) - 1

    def __getitem__(self, i: int) -> int:
        return self.coefficients[i]

    def add(self, other: "PowerSeriesZ") -> "PowerSeriesZ":
        d = min(self.truncation_degree, other.truncation_degree)
        return PowerSeriesZ(tuple(self[i] + other[i] for i in range(d + 1)))

    def mul(self, other: "PowerSeriesZ") -> "PowerSeriesZ":
        d = min(self.truncation_degree, other.truncation_degree)
        out = [0] * (d + 1)
        for i in range(d + 1):
            for j in range(d + 1 - i):
                out[i + j] += self[i] * other[j]
        return PowerSeriesZ(tuple(out))

    def mul_poly(self, a: Sequence[int]) -> "PowerSeriesZ":
        """Multiply by a polynomial, keeping the truncation degree."""
        d = self.truncation_degree
        out = [0] * (d + 1)
        for i, c in enumerate(poly(a)):
            for j in range(d + 1 - i):
                out[i + j] += c * self[j]
        return PowerSeriesZ(tuple(out))

    def inverse(self) -> "PowerSeriesZ":
        c0 = self[0]
        if c0 not in (1, -1):
            raise InputError(f"series with constant term {c0} is not invertible over Z")
        d = self.truncation_degree
        out = [c0] + [0] * d
        for i in range(1, d + 1):
            acc = sum(self[j] * out[i - j] for j in range(1, i + 1))
            out[i] = -c0 * acc
        return PowerSeriesZ(tuple(out))


def series_from_coefficients(coeffs: Sequence[int]) -> PowerSeriesZ:
    return PowerSeriesZ(tuple(int(c) for c in coeffs))


@dataclass(frozen=True)
class RationalSeries:
    numerator: Poly
    denominator: Poly

    def __post_init__(self):
        object.__setattr__(self, "numerator", poly(self.numerator))
        object.__setattr__(self, "denominator", poly(self.denominator))

    def expand(self, degree: int) -> PowerSeriesZ:
        den = self.denominator
        if not den or den[0] not in (1, -1):
            raise InputError(
                f"denominator constant term must be +-1, got {den[0] if den else 0}"
            )
        num = list(self.numerator) + [0] * (degree + 1)
        c0 = den[0]
        out = [0] * (degree + 1)
        for i in range(degree + 1):
            acc = num[i] - sum(den[j] * out[i - j] for j in range(1, min(i, len(den) - 1) + 1))
            out[i] = c0 * acc  # division by +-1
        return PowerSeriesZ(tuple(out))

    def equals(self, other: "RationalSeries") -> bool:
        """Equality as rational functions (cross multiplication)."""
        return poly_mul(self.numerator, other.denominator) == poly_mul(
            other.numerator, self.denominator
        )

    def mul(self, other: "RationalSeries") -> "RationalSeries":
        return RationalSeries(
            poly_mul(self.numerator, other.numerator),
            poly_mul(self.denominator, other.denominator),
        )

    def div(self, other: "RationalSeries") -> "RationalSeries":
        if not other.numerator:
            raise ZeroDivisionError("division by the zero series")
        return RationalSeries(
            poly_mul(self.numerator, other.denominator),
            poly_mul(self.denominator, other.numerator),
        )

    @property
    def constant_term(self) -> int:
        n0 = self.numerator[0] if self.numerator else 0
        return n0 * self.denominator[0] if self.denominator else 0


ONE = RationalSeries((1,), (1,))


def _profile_dims(profile) -> tuple[int, ...]:
    return tuple(getattr(profile, "dims", profile))


# -- the closed formulas -------------------------------------------------------


def golod_series(n: int, profile) -> RationalSeries:
    """(1+t)^n over 1 - sum_i dim H_i(K^R) t^{i+1}: Serre's upper bound,
    attained exactly by Golod rings."""
    dims = _profile_dims(profile)
    den = [1] + [0] * (len(dims))
    for i in range(1, len(dims)):
        den[i + 1] = -dims[i]
    return RationalSeries(poly_pow(ONE_PLUS_T, n), poly(den))


def theorem_I_denominator(n: int, profile) -> RationalSeries:
    """((1+t)^n, 1 - t(kappa(t) - 1) + t^{n+1}(1+t)) where kappa is the Koszul
    homology generating series; requires a Gorenstein profile and n >= 2."""
    dims = _profile_dims(profile)
    if n < 2:
        raise InputError(f"embedding dimension must be at least 2, got {n}")
    if dims[-1] != 1:
        raise InputError(
            f"profile is not Gorenstein: dim H_n = {dims[-1]} (socle dimension != 1)"
        )
    den = [1] + [0] * max(len(dims), n + 2)
    for i in range(1, len(dims)):
        den[i + 1] -= dims[i]
    den[n + 1] += 1
    den[n + 2] += 1
    return RationalSeries(poly_pow(ONE_PLUS_T, n), poly(den))


def codepth3_denominator(n: int, r: int) -> RationalSeries:
    """((1+t)^n, 1 - r t^2 - r t^3 + t^5) for Gorenstein non-complete-
    intersection algebras of embedding dimension at most 3; r = mu(I)."""
    if n > 3:
        raise InputError(f"embedding dimension must be at most 3, got {n}")
    if n < 1 or r < 1:
        raise InputError("embedding dimension and mu(I) must be positive")
    return RationalSeries(poly_pow(ONE_PLUS_T, n), (1, 0, -r, -r, 0, 1))


def theorem_II_prediction(n: int) -> tuple[RationalSeries, Poly]:
    """Residue-field series and common module denominator for Artinian
    Gorenstein algebras with mu(m^2) <= 2."""
    if n < 1:
        raise InputError(f"embedding dimension must be positive, got {n}")
    if n == 1:
        return RationalSeries((1,), (1, -1)), (1, -1)
    den = (1, -n, 1)
    return RationalSeries((1,), den), poly_mul(poly_pow(ONE_PLUS_T, n), den)


def stretched_artinian_prediction(n: int, r: int) -> tuple[RationalSeries, Poly]:
    """Series and module denominator for stretched Artinian algebras of type r."""
    if r > n:
        raise InputError(
            f"type {r} exceeds embedding dimension {n}: impossible for a stretched "
            "Artinian algebra (corrupt data)"
        )
    if r < 1 or n < 1:
        raise InputError("type and embedding dimension must be positive")
    if r == n:
        return RationalSeries((1,), (1, -n)), (1, -n)
    den = (1, -n, 1)
    return RationalSeries((1,), den), poly_mul(poly_pow(ONE_PLUS_T, n - r + 1), den)


def dress_kramer(ps: RationalSeries, pt: RationalSeries) -> RationalSeries:
    """Residue-field series over a fibre product: 1/P = 1/P_S + 1/P_T - 1."""
    for s in (ps, pt):
        if s.constant_term != 1:
            raise InputError("Dress-Kramer requires series with constant term 1")
    ns, ds = ps.numerator, ps.denominator
    nt, dt = pt.numerator, pt.denominator
    num = poly_mul(ns, nt)
    den = poly_sub(poly_add(poly_mul(ds, nt), poly_mul(dt, ns)), num)
    return RationalSeries(num, den)


def dress_kramer_module(ps_m: RationalSeries, ps_k: RationalSeries, pr_k: RationalSeries):
    """P^R_M = P^S_M * P^R_k / P^S_k for a module M over the factor S."""
    if ps_k.constant_term != 1 or pr_k.constant_term != 1:
        raise InputError("Dress-Kramer requires residue-field series with constant term 1")
    return ps_m.mul(pr_k).div(ps_k)


def levin_socle_series(p: RationalSeries) -> RationalSeries:
    """The socle-quotient series P/(1 - t^2 P), as a formal operation."""
    shifted = poly_mul((0, 0, 1), p.numerator)
    return RationalSeries(p.numerator, poly_sub(p.denominator, shifted))


def quotient_power_prediction(n: int) -> RationalSeries:
    """1/(1 - nt): the series of k over R/m^i for mu(m^2) <= 2 Gorenstein R."""
    return RationalSeries((1,), (1, -n))


def deformation_divide(p: RationalSeries) -> RationalSeries:
    """P/(1+t), the exact non-zerodivisor quotient relation; composition
    helper, never applied automatically."""
    return RationalSeries(p.numerator, poly_mul(p.denominator, ONE_PLUS_T))


def denominator_divisibility_check(
    d: Sequence[int], p_hat: PowerSeriesZ, g_max: int
):
    """Smallest g <= g_max with (d * p_hat) vanishing in degrees g+1..D.

    The product is exact to the truncation degree D of p_hat, so the evidence
    window is (g, D]; g is capped at D-1 so the window is never empty, which
    keeps the absent outcome meaningful.  Returns None when no g qualifies.
    """
    d = poly(d)
    D = p_hat.truncation_degree
    if D < poly_degree(d) + 1:
        raise InputError(
            f"truncation degree {D} is too short for a degree-{poly_degree(d)} denominator"
        )
    product = p_hat.mul_poly(d)
    last_nonzero = -1
    for i in range(D + 1):
        if product[i] != 0:
            last_nonzero = i
    g = max(last_nonzero, 0)
    if g <= min(g_max, D - 1):
        return g
    return None


def default_divisibility_window(d: Sequence[int], loewy: int, edim: int) -> int:
    """Heuristic G_max: deg(d) + lo(R) + edim(R)."""
    return poly_degree(d) + loewy + edim


def series_from_betti(betti: Sequence[int]) -> PowerSeriesZ:
    return PowerSeriesZ(tuple(int(b) for b in betti))


# -- prediction dispatch ---------------------------------------------------------


@dataclass(frozen=True)
class Prediction:
    """A labeled rational series for P^R_k plus the module denominator that
    is claimed to clear every P^R_M."""

    label: str
    series: RationalSeries
    module_denominator: Poly


def predict(R, classification, profile=None) -> list[Prediction]:
    """Every applicable closed-form prediction for P^R_k, cross-checked for
    pairwise equality as rational functions (a mismatch is a hard failure)."""
    cls = classification
    n = R.edim
    s = R.loewy_length
    preds: list[Prediction] = []

    if cls.is_gorenstein and n >= 1 and cls.mu_m_squared <= 2 and s >= 1:
        series, moddenom = theorem_II_prediction(n)
        label = "theorem-II(1)" if n == 1 else "theorem-II(2)"
        preds.append(Prediction(label, series, moddenom))

    if cls.is_stretched and n >= 1:
        series, moddenom = stretched_artinian_prediction(n, cls.socle_type)
        preds.append(Prediction("stretched-sbr4(d=0)", series, moddenom))

    if cls.is_almost_stretched and cls.is_gorenstein and n >= 2:
        series, moddenom = theorem_II_prediction(n)
        preds.append(Prediction("almost-stretched-sbr4.6(d=0)", series, moddenom))

    if profile is not None:
        dims = _profile_dims(profile)
        gorenstein_profile = dims[-1] == 1
        not_ci = len(dims) > 1 and dims[1] != n
        if cls.is_gorenstein and gorenstein_profile and n >= 2 and s >= 2:
            socle_quotient_golod = cls.mu_m_squared <= 2 or (
                cls.is_compressed and s != 3
            )
            if socle_quotient_golod:
                series = theorem_I_denominator(n, dims)
                preds.append(
                    Prediction("theorem-I", series, series.denominator)
                )
        if cls.is_gorenstein and gorenstein_profile and not_ci and 1 <= n <= 3:
            series = codepth3_denominator(n, dims[1])
            preds.append(Prediction("codepth-3-ged3", series, series.denominator))

    for a in range(len(preds)):
        for b in range(a + 1, len(preds)):
            if not preds[a].series.equals(preds[b].series):
                raise VerificationFailure(
                    f"predictions disagree: {preds[a].label} vs {preds[b].label}"
                )
    return preds
