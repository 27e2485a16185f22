"""FastAPI surface over the service handlers.

Domain errors (bad characteristic, malformed polynomials, violated
preconditions) map to HTTP 400; schema violations are FastAPI's usual 422.
Verification mismatches are successful computations and return 200 with the
verdict inside the report.
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException

from . import __version__, service
from .errors import InputError

app = FastAPI(
    title="artinlab",
    version=__version__,
    description=(
        "Artinian local algebras over prime fields: invariants, connected-sum "
        "decomposition, and Poincare-series verification."
    ),
)


@app.exception_handler(InputError)
async def _input_error_handler(_, exc: InputError):
    raise HTTPException(status_code=400, detail=str(exc))


@app.get("/health")
def health():
    return {"status": "ok", "version": __version__}


@app.post("/analyze", response_model=service.AnalyzeReport)
def analyze(request: service.AnalyzeRequest):
    return _run(service.analyze, request)


@app.post("/verify", response_model=service.VerifyReport)
def verify(request: service.VerifyRequest):
    return _run(service.verify, request)


@app.post("/decompose", response_model=service.DecomposeReport)
def decompose(request: service.DecomposeRequest):
    return _run(service.decompose, request)


@app.post("/combine", response_model=service.RingDefinition)
def combine(request: service.CombineRequest):
    return _run(service.combine, request)


@app.post("/golod", response_model=service.GolodReport)
def golod(request: service.GolodRequest):
    return _run(service.golod, request)


def _run(handler, request):
    try:
        return handler(request)
    except InputError as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc
