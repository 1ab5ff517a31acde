"""Read-only HTTP facade over a fitted model: kernel-expansion suggestions,
free-context-width concordances, and model summary. The model directory is
loaded once at startup; every response is a pure function of (model, query).
"""

from __future__ import annotations

from pathlib import Path

from fastapi import FastAPI, HTTPException, Query, Response

from . import analytics
from ._artifacts import Artifacts, load_artifacts


def create_app(model_dir: str | Path | None = None,
               artifacts: Artifacts | None = None) -> FastAPI:
    app = FastAPI(title="phrasemine", docs_url=None, redoc_url=None)

    from fastapi.middleware.cors import CORSMiddleware
    app.add_middleware(CORSMiddleware, allow_origins=["*"],
                       allow_methods=["GET"], allow_headers=["*"])

    state: dict[str, Artifacts | None] = {"art": artifacts}
    if artifacts is None and model_dir is not None:
        try:
            state["art"] = load_artifacts(model_dir)
        except (FileNotFoundError, ValueError):
            state["art"] = None

    def art() -> Artifacts:
        a = state["art"]
        if a is None:
            raise HTTPException(status_code=503, detail="model not loaded")
        return a

    @app.get("/api/expand")
    def expand(q: str = Query(default=""), limit: int = Query(default=20)):
        a = art()
        if q == "":
            raise HTTPException(status_code=400, detail="empty query")
        if limit <= 0:
            raise HTTPException(status_code=400, detail="limit must be >= 1")
        res = analytics.kernel_expansion(a.fz, a.phrase_ids, a.fw_texts,
                                         q, limit=limit)
        return {"query": q,
                "results": [{"text": e.text, "occ": e.occ} for e in res]}

    @app.get("/api/concordance")
    def concordance(response: Response,
                    q: str = Query(default=""),
                    left: int = Query(default=20),
                    right: int = Query(default=20),
                    limit: int = Query(default=50),
                    offset: int = Query(default=0)):
        a = art()
        if q == "":
            raise HTTPException(status_code=400, detail="empty query")
        if left < 0 or right < 0:
            raise HTTPException(status_code=400,
                                detail="context widths must be >= 0")
        if limit <= 0:
            raise HTTPException(status_code=400, detail="limit must be >= 1")
        if offset < 0:
            raise HTTPException(status_code=400, detail="offset must be >= 0")
        rows, total = a.fz.occurrences(q, limit=limit, offset=offset)
        hits = []
        for u, i, j in rows:
            unit = a.fz.units[u]
            li = max(0, i - left)
            rj = min(len(unit), j + right)
            hits.append({
                "unit": u,
                "start": i,
                "end": j,
                "left": unit[li:i],
                "match": unit[i:j],
                "right": unit[j:rj],
                "left_truncated": li == 0 and i - left < 0,
                "right_truncated": rj == len(unit) and j + right > len(unit),
            })
        response.headers["X-Total-Count"] = str(total)
        return {"query": q, "total": total, "offset": offset, "hits": hits}

    @app.get("/api/stats")
    def stats():
        a = art()
        return {
            "units": a.fz.n_units,
            "symbols": a.fz.total_symbols,
            "fw_count": len(a.fw_ids),
            "phrase_count": len(a.phrase_ids),
            "iterations": a.model.iterations,
            "rho_trace": [float(r) for r in a.model.rho_trace],
        }

    return app
