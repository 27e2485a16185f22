"""Request/response models and handlers shared by the API and the CLI.

Every report carries the characteristic, the seed, the tool version and the
degree bounds that produced it, so replaying a report's inputs reproduces it
byte for byte.
"""

from __future__ import annotations

from typing import Literal, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator

from . import __version__
from .algebra import (
    ArtinianLocalAlgebra,
    from_ideal,
    from_inverse_system,
    from_table,
)
from .dualpoly import parse_polynomial
from .errors import InputError, VerificationFailure
from .koszul import (
    build_koszul,
    h1_square_is_zero,
    homology_profile,
    mu_defining_ideal,
    poincare_duality_check,
)
from .resolution import betti_of_k, minimal_free_resolution, module_from_quotient
from .series import (
    Prediction,
    RationalSeries,
    default_divisibility_window,
    denominator_divisibility_check,
    golod_series,
    predict,
    series_from_betti,
)
from .structure import (
    NotDecomposable,
    connected_sum,
    decompose_connected_sum,
    fibre_product,
)


class StrictModel(BaseModel):
    model_config = ConfigDict(extra="forbid")


# -- ring definitions ---------------------------------------------------------


class TableDefinition(StrictModel):
    basis: int
    generators: list[list[list[int]]]


class RingDefinition(StrictModel):
    """One of: dual_generators (Macaulay inverse system), ideal (with optional
    truncation_bound), or table (serialized multiplication matrices)."""

    characteristic: int = 101
    variables: Optional[list[str]] = None
    dual_generators: Optional[list[str]] = None
    ideal: Optional[list[str]] = None
    truncation_bound: int = 20
    table: Optional[TableDefinition] = None

    @model_validator(mode="after")
    def _exactly_one_source(self):
        sources = [
            self.dual_generators is not None,
            self.ideal is not None,
            self.table is not None,
        ]
        if sum(sources) != 1:
            raise ValueError(
                "exactly one of dual_generators, ideal, or table is required"
            )
        if self.table is None and not self.variables:
            raise ValueError("variables are required with dual_generators or ideal")
        if self.variables is not None and len(set(self.variables)) != len(self.variables):
            raise ValueError("variable names must be unique")
        return self


class ModuleSpec(StrictModel):
    quotient_by: list[str]


class SeriesJSON(StrictModel):
    """Coefficient lists, lowest degree first."""

    numerator: list[int]
    denominator: list[int]

    @classmethod
    def of(cls, series: RationalSeries) -> "SeriesJSON":
        return cls(numerator=list(series.numerator), denominator=list(series.denominator))

    def to_series(self) -> RationalSeries:
        return RationalSeries(tuple(self.numerator), tuple(self.denominator))


def build_algebra(defn: RingDefinition, characteristic: int | None = None) -> ArtinianLocalAlgebra:
    p = characteristic if characteristic is not None else defn.characteristic
    if defn.table is not None:
        return from_table(p, defn.table.basis, defn.table.generators)
    if defn.dual_generators is not None:
        gens = [parse_polynomial(s, defn.variables, p) for s in defn.dual_generators]
        return from_inverse_system(p, gens)
    return from_ideal(p, defn.variables, defn.ideal, defn.truncation_bound)


def serialize_algebra(R: ArtinianLocalAlgebra) -> RingDefinition:
    """Multiplication-table form, loadable by every command."""
    return RingDefinition(
        characteristic=R.field.p,
        table=TableDefinition(
            basis=R.length,
            generators=[G.tolist() for G in R.generator_matrices],
        ),
    )


# -- report fragments -----------------------------------------------------------


class RingSummary(StrictModel):
    characteristic: int
    length: int
    hilbert_function: list[int]
    loewy_length: int
    edim: int
    socle_dimension: int
    generator_names: list[str]
    basis_labels: list[str]

    @classmethod
    def of(cls, R: ArtinianLocalAlgebra) -> "RingSummary":
        return cls(
            characteristic=R.field.p,
            length=R.length,
            hilbert_function=list(R.hilbert_function),
            loewy_length=R.loewy_length,
            edim=R.edim,
            socle_dimension=R.socle_dimension,
            generator_names=list(R.generator_names),
            basis_labels=list(R.basis_labels),
        )


class ClassificationReport(StrictModel):
    is_gorenstein: bool
    socle_type: int
    mu_m_squared: int
    is_stretched: bool
    is_almost_stretched: bool
    is_compressed: bool
    epsilon_profile: list[int]
    codepth_leq_3_applicable: bool
    is_complete_intersection: Optional[bool]

    @classmethod
    def of(cls, c) -> "ClassificationReport":
        return cls(
            is_gorenstein=c.is_gorenstein,
            socle_type=c.socle_type,
            mu_m_squared=c.mu_m_squared,
            is_stretched=c.is_stretched,
            is_almost_stretched=c.is_almost_stretched,
            is_compressed=c.is_compressed,
            epsilon_profile=list(c.epsilon_profile),
            codepth_leq_3_applicable=c.codepth_leq_3_applicable,
            is_complete_intersection=c.is_complete_intersection,
        )


class KoszulReport(StrictModel):
    homology_dims: list[int]
    mu_defining_ideal: int
    h1_square_is_zero: bool
    poincare_duality: Optional[bool]  # None unless Gorenstein


def koszul_report(R: ArtinianLocalAlgebra):
    K = build_koszul(R)
    profile = homology_profile(K)
    duality = poincare_duality_check(K, profile) if R.is_gorenstein else None
    report = KoszulReport(
        homology_dims=list(profile.dims),
        mu_defining_ideal=mu_defining_ideal(profile),
        h1_square_is_zero=h1_square_is_zero(K, profile),
        poincare_duality=duality,
    )
    return K, profile, report


# -- analyze ----------------------------------------------------------------------


class AnalyzeRequest(StrictModel):
    ring: RingDefinition
    seed: int = 0


class AnalyzeReport(StrictModel):
    tool_version: str
    characteristic: int
    seed: int
    ring: RingSummary
    classification: ClassificationReport
    koszul: KoszulReport


def analyze(request: AnalyzeRequest) -> AnalyzeReport:
    R = build_algebra(request.ring)
    _, profile, kreport = koszul_report(R)
    cls = R.classify(profile)
    return AnalyzeReport(
        tool_version=__version__,
        characteristic=R.field.p,
        seed=request.seed,
        ring=RingSummary.of(R),
        classification=ClassificationReport.of(cls),
        koszul=kreport,
    )


# -- verify ------------------------------------------------------------------------


class PredictionOutcome(StrictModel):
    label: str
    series: SeriesJSON
    module_denominator: list[int]
    expansion: list[int]
    verdict: str  # match-to-degree-D | mismatch-at-degree-j
    mismatch_degree: Optional[int]


class DenominatorCheck(StrictModel):
    label: str
    denominator: list[int]
    window: int
    degree_found: Optional[int]
    verdict: str  # polynomial-to-degree-g | not-found-within-window


class ModuleReport(StrictModel):
    quotient_by: list[str]
    dimension: int
    betti: list[int]
    truncated: bool
    denominator_checks: list[DenominatorCheck]


class VerifyRequest(StrictModel):
    ring: RingDefinition
    max_degree: int = 6
    module: Optional[ModuleSpec] = None
    expected_series: Optional[SeriesJSON] = None
    seed: int = 0


class VerifyReport(StrictModel):
    tool_version: str
    characteristic: int
    seed: int
    max_degree: int
    ring: RingSummary
    classification: ClassificationReport
    koszul: KoszulReport
    betti_of_k: list[int]
    predictions: list[PredictionOutcome]
    module: Optional[ModuleReport]
    overall: str  # match | mismatch | no-predictions


def _compare(label, series, module_denominator, computed, D) -> PredictionOutcome:
    expansion = list(series.expand(D).coefficients)
    mismatch = None
    for i in range(min(len(computed), D + 1)):
        if computed[i] != expansion[i]:
            mismatch = i
            break
    verdict = (
        f"match-to-degree-{D}" if mismatch is None else f"mismatch-at-degree-{mismatch}"
    )
    return PredictionOutcome(
        label=label,
        series=SeriesJSON.of(series),
        module_denominator=list(module_denominator),
        expansion=expansion,
        verdict=verdict,
        mismatch_degree=mismatch,
    )


def verify(request: VerifyRequest) -> VerifyReport:
    D = request.max_degree
    if D < 2:
        raise InputError(f"max degree must be at least 2, got {D}")
    R = build_algebra(request.ring)
    _, profile, kreport = koszul_report(R)
    cls = R.classify(profile)
    predictions = predict(R, cls, profile)
    table = betti_of_k(R, D)
    computed = list(table.betti)
    outcomes = [
        _compare(p.label, p.series, p.module_denominator, computed, D)
        for p in predictions
    ]
    if request.expected_series is not None:
        outcomes.append(
            _compare(
                "expected-series",
                request.expected_series.to_series(),
                request.expected_series.denominator,
                computed,
                D,
            )
        )
    module_report = None
    if request.module is not None:
        elements = [R.evaluate(s) for s in request.module.quotient_by]
        M = module_from_quotient(R, elements)
        mtable = minimal_free_resolution(M, D)
        p_hat = series_from_betti(mtable.betti)
        checks = []
        for p in predictions:
            window = default_divisibility_window(
                p.module_denominator, R.loewy_length, R.edim
            )
            g = denominator_divisibility_check(p.module_denominator, p_hat, window)
            checks.append(
                DenominatorCheck(
                    label=p.label,
                    denominator=list(p.module_denominator),
                    window=window,
                    degree_found=g,
                    verdict=(
                        f"polynomial-to-degree-{g}"
                        if g is not None
                        else "not-found-within-window"
                    ),
                )
            )
        module_report = ModuleReport(
            quotient_by=list(request.module.quotient_by),
            dimension=M.dimension,
            betti=list(mtable.betti),
            truncated=mtable.truncated,
            denominator_checks=checks,
        )
    any_mismatch = any(o.mismatch_degree is not None for o in outcomes)
    if module_report is not None and any(
        c.degree_found is None for c in module_report.denominator_checks
    ):
        any_mismatch = True
    overall = (
        "mismatch"
        if any_mismatch
        else ("match" if outcomes or module_report else "no-predictions")
    )
    return VerifyReport(
        tool_version=__version__,
        characteristic=R.field.p,
        seed=request.seed,
        max_degree=D,
        ring=RingSummary.of(R),
        classification=ClassificationReport.of(cls),
        koszul=kreport,
        betti_of_k=computed,
        predictions=outcomes,
        module=module_report,
        overall=overall,
    )


# -- decompose -----------------------------------------------------------------------


class DecomposeRequest(StrictModel):
    ring: RingDefinition
    seed: int = 0


class DecompositionDetail(StrictModel):
    split_index: int
    adjusted_generators: list[list[int]]  # one inner list per generator, coordinates
    socle_generator: list[int]
    claim_head_generates_m2: bool
    claim_cross_products_vanish: bool
    claim_tail_square_is_socle: bool
    s_factor: RingSummary
    t_factor: RingSummary
    length_identity: str
    recomposed_hilbert: list[int]
    hilbert_matches: bool


class DecomposeReport(StrictModel):
    tool_version: str
    characteristic: int
    seed: int
    ring: RingSummary
    decomposition: Optional[DecompositionDetail]
    reason: Optional[str]


def decompose(request: DecomposeRequest) -> DecomposeReport:
    R = build_algebra(request.ring)
    outcome = decompose_connected_sum(R, seed=request.seed)
    if isinstance(outcome, NotDecomposable):
        return DecomposeReport(
            tool_version=__version__,
            characteristic=R.field.p,
            seed=request.seed,
            ring=RingSummary.of(R),
            decomposition=None,
            reason=outcome.reason,
        )
    w = outcome.witness
    recomposed = connected_sum(outcome.s_factor, outcome.t_factor).algebra
    detail = DecompositionDetail(
        split_index=w.split_index,
        adjusted_generators=[list(map(int, col)) for col in w.adjusted_generators.T],
        socle_generator=list(map(int, w.socle_generator)),
        claim_head_generates_m2=w.claim_head_generates_m2,
        claim_cross_products_vanish=w.claim_cross_products_vanish,
        claim_tail_square_is_socle=w.claim_tail_square_is_socle,
        s_factor=RingSummary.of(outcome.s_factor),
        t_factor=RingSummary.of(outcome.t_factor),
        length_identity=(
            f"{R.length} = {outcome.s_factor.length} + {outcome.t_factor.length} - 2"
        ),
        recomposed_hilbert=list(recomposed.hilbert_function),
        hilbert_matches=recomposed.hilbert_function == R.hilbert_function,
    )
    return DecomposeReport(
        tool_version=__version__,
        characteristic=R.field.p,
        seed=request.seed,
        ring=RingSummary.of(R),
        decomposition=detail,
        reason=None,
    )


# -- combine --------------------------------------------------------------------------


class CombineRequest(StrictModel):
    op: Literal["fibre", "connected-sum"]
    first: RingDefinition
    second: RingDefinition


def combine(request: CombineRequest) -> RingDefinition:
    A = build_algebra(request.first)
    B = build_algebra(request.second)
    if request.op == "fibre":
        out = fibre_product(A, B)
    else:
        out = connected_sum(A, B).algebra
    return serialize_algebra(out)


# -- golod ----------------------------------------------------------------------------


class GolodRequest(StrictModel):
    ring: RingDefinition
    max_degree: int = 6


class GolodReport(StrictModel):
    tool_version: str
    characteristic: int
    max_degree: int
    ring: RingSummary
    homology_dims: list[int]
    golod_series: SeriesJSON
    golod_expansion: list[int]
    computed_betti: list[int]
    verdict: str  # golod-evidence-to-degree-D | not-golod
    witness_degree: Optional[int]
    note: str


def golod(request: GolodRequest) -> GolodReport:
    D = request.max_degree
    if D < 2:
        raise InputError(f"max degree must be at least 2, got {D}")
    R = build_algebra(request.ring)
    _, profile, _ = koszul_report(R)
    bound = golod_series(R.edim, profile)
    expansion = list(bound.expand(D).coefficients)
    computed = list(betti_of_k(R, D).betti)
    witness = None
    for i in range(D + 1):
        if computed[i] > expansion[i]:
            raise VerificationFailure(
                f"computed Betti number exceeds the Golod bound at degree {i}"
            )
        if computed[i] < expansion[i]:
            witness = i
            break
    if witness is None:
        verdict = f"golod-evidence-to-degree-{D}"
        note = (
            "equality with the Golod bound is evidence only; Golodness is not proved"
        )
    else:
        verdict = "not-golod"
        note = (
            "strict inequality below the Golod bound refutes Golodness (a theorem, "
            "not evidence)"
        )
    return GolodReport(
        tool_version=__version__,
        characteristic=R.field.p,
        max_degree=D,
        ring=RingSummary.of(R),
        homology_dims=list(profile.dims),
        golod_series=SeriesJSON.of(bound),
        golod_expansion=expansion,
        computed_betti=computed,
        verdict=verdict,
        witness_degree=witness,
        note=note,
    )
