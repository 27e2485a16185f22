import pytest
from fastapi.testclient import TestClient
from pydantic import ValidationError

from artinlab import service
from artinlab.api import app
from artinlab.errors import InputError

CRIT1 = {
    "characteristic": 101,
    "variables": ["Y1", "Y2", "Y3"],
    "dual_generators": ["Y1^2*Y2 + Y3^2"],
}
SALLY = {"characteristic": 101, "variables": ["x", "y"], "ideal": ["x^3", "x*y", "y^2"]}


def ring(payload) -> service.RingDefinition:
    return service.RingDefinition.model_validate(payload)


class TestRingDefinition:
    def test_exactly_one_source(self):
        with pytest.raises(ValidationError):
            ring({"characteristic": 101, "variables": ["Y1"]})
        with pytest.raises(ValidationError):
            ring(
                {
                    "characteristic": 101,
                    "variables": ["Y1"],
                    "dual_generators": ["Y1"],
                    "ideal": ["Y1^2"],
                }
            )

    def test_variables_required_for_polynomials(self):
        with pytest.raises(ValidationError):
            ring({"characteristic": 101, "dual_generators": ["Y1"]})

    def test_default_characteristic(self):
        r = ring({"variables": ["Y1"], "dual_generators": ["Y1^2"]})
        assert r.characteristic == 101

    def test_table_roundtrip(self):
        R = service.build_algebra(ring(CRIT1))
        out = service.serialize_algebra(R)
        R2 = service.build_algebra(out)
        assert R2.hilbert_function == R.hilbert_function
        assert R2.socle_dimension == R.socle_dimension


class TestAnalyze:
    def test_crit1(self):
        report = service.analyze(service.AnalyzeRequest(ring=ring(CRIT1)))
        assert report.ring.length == 7
        assert report.ring.hilbert_function == [1, 3, 2, 1]
        assert report.classification.is_gorenstein
        assert report.classification.is_almost_stretched
        assert report.koszul.homology_dims == [1, 5, 5, 1]
        assert report.koszul.poincare_duality is True
        assert report.characteristic == 101
        assert report.tool_version

    def test_non_gorenstein_koszul(self):
        report = service.analyze(service.AnalyzeRequest(ring=ring(SALLY)))
        assert report.ring.socle_dimension == 2
        assert report.koszul.poincare_duality is None


class TestVerify:
    def test_crit1_matches(self):
        report = service.verify(service.VerifyRequest(ring=ring(CRIT1), max_degree=6))
        assert report.overall == "match"
        assert report.betti_of_k == [1, 3, 8, 21, 55, 144, 377]
        labels = {p.label for p in report.predictions}
        assert "theorem-II(2)" in labels
        for p in report.predictions:
            assert p.verdict == "match-to-degree-6"

    def test_corrupted_expectation_mismatches(self):
        expected = service.SeriesJSON(numerator=[1], denominator=[1, -2])
        report = service.verify(
            service.VerifyRequest(ring=ring(CRIT1), max_degree=4, expected_series=expected)
        )
        assert report.overall == "mismatch"
        bad = [p for p in report.predictions if p.label == "expected-series"]
        assert bad[0].verdict == "mismatch-at-degree-1"

    def test_module_divisibility(self):
        report = service.verify(
            service.VerifyRequest(
                ring=ring(CRIT1),
                max_degree=6,
                module=service.ModuleSpec(quotient_by=["Y1"]),
            )
        )
        assert report.module is not None
        assert report.module.dimension == 3
        assert report.module.betti[:3] == [1, 1, 2]
        for check in report.module.denominator_checks:
            assert check.degree_found is not None

    def test_low_degree_rejected(self):
        with pytest.raises(InputError):
            service.verify(service.VerifyRequest(ring=ring(CRIT1), max_degree=1))

    def test_no_predictions(self):
        fat = {"characteristic": 101, "variables": ["x", "y"], "ideal": ["x^2", "x*y", "y^2"]}
        report = service.verify(service.VerifyRequest(ring=ring(fat), max_degree=3))
        assert report.overall == "no-predictions"
        assert report.predictions == []


class TestDecompose:
    def test_crit1(self):
        report = service.decompose(service.DecomposeRequest(ring=ring(CRIT1)))
        d = report.decomposition
        assert d is not None
        assert d.split_index == 2
        assert d.s_factor.hilbert_function == [1, 2, 2, 1]
        assert d.t_factor.hilbert_function == [1, 1, 1]
        assert d.hilbert_matches
        assert d.claim_cross_products_vanish

    def test_chain_null(self):
        chain = {"characteristic": 101, "variables": ["x"], "ideal": ["x^4"]}
        report = service.decompose(service.DecomposeRequest(ring=ring(chain)))
        assert report.decomposition is None
        assert "mu(m^2)" in report.reason

    def test_non_gorenstein_raises(self):
        fat = {"characteristic": 101, "variables": ["x", "y"], "ideal": ["x^2", "x*y", "y^2"]}
        with pytest.raises(InputError):
            service.decompose(service.DecomposeRequest(ring=ring(fat)))


class TestCombine:
    def test_connected_sum_matches_dual_sum(self):
        a = {"characteristic": 101, "variables": ["Y1"], "dual_generators": ["Y1^3"]}
        b = {"characteristic": 101, "variables": ["Y2"], "dual_generators": ["Y2^2"]}
        out = service.combine(
            service.CombineRequest(op="connected-sum", first=ring(a), second=ring(b))
        )
        combined = service.analyze(service.AnalyzeRequest(ring=out))
        direct = service.analyze(
            service.AnalyzeRequest(
                ring=ring(
                    {
                        "characteristic": 101,
                        "variables": ["Y1", "Y2"],
                        "dual_generators": ["Y1^3 + Y2^2"],
                    }
                )
            )
        )
        for field in ("length", "hilbert_function", "loewy_length", "edim", "socle_dimension"):
            assert getattr(combined.ring, field) == getattr(direct.ring, field)
        assert combined.classification == direct.classification
        assert combined.koszul == direct.koszul

    def test_fibre_self(self):
        a = {"characteristic": 101, "variables": ["x"], "ideal": ["x^2"]}
        out = service.combine(service.CombineRequest(op="fibre", first=ring(a), second=ring(a)))
        report = service.analyze(service.AnalyzeRequest(ring=out))
        assert report.ring.hilbert_function == [1, 2]

    def test_non_gorenstein_factor_rejected(self):
        fat = {"characteristic": 101, "variables": ["x", "y"], "ideal": ["x^2", "x*y", "y^2"]}
        chain = {"characteristic": 101, "variables": ["x"], "ideal": ["x^3"]}
        with pytest.raises(InputError):
            service.combine(
                service.CombineRequest(op="connected-sum", first=ring(fat), second=ring(chain))
            )


class TestGolod:
    def test_sally_is_golod_evidenced(self):
        report = service.golod(service.GolodRequest(ring=ring(SALLY), max_degree=8))
        assert report.verdict == "golod-evidence-to-degree-8"
        assert report.computed_betti == report.golod_expansion
        assert "evidence" in report.note

    def test_gorenstein_never_golod(self):
        quadrics = {
            "characteristic": 101,
            "variables": ["Y1", "Y2", "Y3"],
            "dual_generators": ["Y1^2 + Y2^2 + Y3^2"],
        }
        report = service.golod(service.GolodRequest(ring=ring(quadrics), max_degree=6))
        assert report.verdict == "not-golod"
        assert report.witness_degree is not None
        assert "theorem" in report.note

    def test_degree_guard(self):
        with pytest.raises(InputError):
            service.golod(service.GolodRequest(ring=ring(SALLY), max_degree=0))


class TestHTTP:
    @pytest.fixture(scope="class")
    def client(self):
        return TestClient(app)

    def test_health(self, client):
        r = client.get("/health")
        assert r.status_code == 200
        assert r.json()["status"] == "ok"

    def test_analyze(self, client):
        r = client.post("/analyze", json={"ring": CRIT1})
        assert r.status_code == 200
        body = r.json()
        assert body["ring"]["length"] == 7
        assert body["classification"]["is_almost_stretched"] is True

    def test_bad_characteristic_400(self, client):
        r = client.post(
            "/analyze",
            json={"ring": {"characteristic": 4, "variables": ["Y1"], "dual_generators": ["Y1^2"]}},
        )
        assert r.status_code == 400
        assert "not prime" in r.json()["detail"]

    def test_not_artinian_400(self, client):
        r = client.post(
            "/analyze",
            json={
                "ring": {
                    "characteristic": 101,
                    "variables": ["x", "y"],
                    "ideal": ["x^2"],
                    "truncation_bound": 6,
                }
            },
        )
        assert r.status_code == 400
        assert "Artinian" in r.json()["detail"]

    def test_schema_violation_422(self, client):
        r = client.post("/analyze", json={"ring": {"characteristic": 101}})
        assert r.status_code == 422

    def test_verify_roundtrip(self, client):
        r = client.post("/verify", json={"ring": CRIT1, "max_degree": 4})
        assert r.status_code == 200
        assert r.json()["overall"] == "match"

    def test_combine_then_analyze(self, client):
        a = {"characteristic": 101, "variables": ["x"], "ideal": ["x^3"]}
        r = client.post("/combine", json={"op": "fibre", "first": a, "second": a})
        assert r.status_code == 200
        table = r.json()
        r2 = client.post("/analyze", json={"ring": table})
        assert r2.status_code == 200
        # k[x]/(x^3) x_k k[y]/(y^3): m = (x, y), m^2 = (x^2, y^2), xy = 0
        assert r2.json()["ring"]["hilbert_function"] == [1, 2, 2]

    def test_decompose_endpoint(self, client):
        r = client.post("/decompose", json={"ring": CRIT1})
        assert r.status_code == 200
        assert r.json()["decomposition"]["split_index"] == 2

    def test_golod_endpoint(self, client):
        r = client.post("/golod", json={"ring": SALLY, "max_degree": 6})
        assert r.status_code == 200
        assert r.json()["verdict"] == "golod-evidence-to-degree-6"
