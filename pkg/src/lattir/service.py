"""HTTP JSON interface over a loaded index.

All endpoints live under /api and serve a shared immutable artifact;
searches run on request-scoped overlay copies, and reindexing swaps the
active artifact atomically so in-flight requests finish against the one
they started with. When a built frontend is available its static files
are mounted at the web root.
"""

from pathlib import Path
from typing import List, Literal, Optional

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from .artifact import IndexArtifact, load_index, reduced_labels
from .context import load_context
from .corpus import StopList, build_context, fill_terms, parse_corpus
from .errors import (
    ArtifactFormatError,
    InvalidQueryError,
    LattirError,
    NoKnownTermsError,
)
from .ontology import load_ontology, ontology_to_dict, parse_ontology
from .query import QUERY_OBJECT_ID, Query, search

_ERROR_CODES = (
    (NoKnownTermsError, "no_known_terms", 422),
    (InvalidQueryError, "invalid_query", 422),
    (ArtifactFormatError, "bad_index", 400),
    (LattirError, "bad_request", 400),
)


class SearchRequest(BaseModel):
    terms: List[str]
    mode: Literal["none", "generalize", "specialize"] = "none"


class IndexRequest(BaseModel):
    corpus_path: Optional[str] = None
    corpus_xml: Optional[str] = None
    context_path: Optional[str] = None
    ontology_path: Optional[str] = None
    ontology_yaml: Optional[str] = None
    stoplist_path: Optional[str] = None


def build_artifact_from_request(req: IndexRequest) -> IndexArtifact:
    stops = StopList.from_file(req.stoplist_path) if req.stoplist_path else StopList.default()
    ontology = None
    if req.ontology_path:
        ontology = load_ontology(req.ontology_path)
    elif req.ontology_yaml:
        ontology = parse_ontology(req.ontology_yaml)

    if req.context_path:
        ctx = load_context(req.context_path)
        return IndexArtifact.build(ctx, ontology=ontology, stops=StopList(()))
    source = req.corpus_xml if req.corpus_xml is not None else req.corpus_path
    if source is None:
        raise InvalidQueryError("provide corpus_path, corpus_xml, or context_path")
    docs = fill_terms(parse_corpus(source), stops)
    ctx = build_context(docs)
    return IndexArtifact.build(ctx, documents=docs, ontology=ontology, stops=stops)


def _concept_payload(artifact: IndexArtifact, index: int) -> dict:
    lat = artifact.lattice
    upper, lower = lat.neighbors(index)
    return {
        "id": index,
        "extent": sorted(lat.extent_ids(index)),
        "intent": sorted(lat.intent_ids(index)),
        "parents": sorted(upper),
        "children": sorted(lower),
    }


def create_app(artifact: Optional[IndexArtifact] = None,
               frontend_dir: Optional[Path] = None) -> FastAPI:
    app = FastAPI(title="lattir", docs_url=None, redoc_url=None)
    app.state.artifact = artifact

    @app.exception_handler(LattirError)
    async def lattir_error(request: Request, exc: LattirError):
        for klass, code, status in _ERROR_CODES:
            if isinstance(exc, klass):
                details = {}
                if isinstance(exc, NoKnownTermsError):
                    details["dropped_terms"] = list(exc.dropped)
                return JSONResponse(
                    status_code=status,
                    content={"error": {"code": code, "message": str(exc), "details": details}},
                )
        raise exc

    def current() -> IndexArtifact:
        artifact = app.state.artifact
        if artifact is None:
            raise InvalidQueryError("no index loaded; POST /api/index first")
        return artifact

    @app.get("/api/info")
    def info():
        return current().summary()

    @app.post("/api/index")
    def reindex(req: IndexRequest):
        new_artifact = build_artifact_from_request(req)
        app.state.artifact = new_artifact  # atomic swap
        return new_artifact.summary()

    @app.get("/api/lattice")
    def lattice():
        artifact = current()
        lat = artifact.lattice
        attr_labels, obj_labels = reduced_labels(artifact)
        return {
            "concepts": [
                {
                    **_concept_payload(artifact, i),
                    "label_attributes": attr_labels.get(i, []),
                    "label_objects": obj_labels.get(i, []),
                }
                for i in range(len(lat))
            ],
            "covers": sorted([c, p] for c, p in lat.covers()),
            "top": lat.top,
            "bottom": lat.bottom,
        }

    @app.get("/api/concepts/{concept_id}")
    def concept(concept_id: int):
        artifact = current()
        if not 0 <= concept_id < len(artifact.lattice):
            return JSONResponse(
                status_code=404,
                content={"error": {"code": "not_found",
                                   "message": f"no concept {concept_id}", "details": {}}},
            )
        return _concept_payload(artifact, concept_id)

    @app.get("/api/documents/{doc_id}")
    def document(doc_id: str):
        artifact = current()
        meta = artifact.documents.get(doc_id)
        if meta is None:
            if doc_id in artifact.context.objects:
                meta = {"title": "", "authors": []}
            else:
                return JSONResponse(
                    status_code=404,
                    content={"error": {"code": "not_found",
                                       "message": f"no document {doc_id!r}", "details": {}}},
                )
        return {
            "id": doc_id,
            "title": meta["title"],
            "authors": list(meta["authors"]),
            "terms": sorted(artifact.context.row(doc_id)),
        }

    @app.get("/api/ontology")
    def ontology():
        artifact = current()
        return {"ontology": ontology_to_dict(artifact.ontology.root) if artifact.ontology else None}

    @app.post("/api/search")
    def run_search(req: SearchRequest):
        artifact = current()
        query = Query.from_raw(req.terms, req.mode, stops=artifact.stoplist())
        report = search(artifact.context, artifact.lattice, query, artifact.ontology)
        overlay = report.overlay
        base = artifact.lattice
        base_n = report.base_concept_count

        base_covers = base.covers()
        overlay_covers = overlay.covers()
        trail_ids = {i for _, members in report.trail for i in members}
        return {
            **report.result.to_dict(),
            "pseudo_object": QUERY_OBJECT_ID,
            "query_concept": {
                "id": report.query_concept_index,
                "extent": sorted(report.query_concept.extent),
                "intent": sorted(report.query_concept.intent),
                "new": report.query_concept_index >= base_n,
            },
            "trail": [
                {"rank": rank, "concepts": list(members)}
                for rank, members in report.trail
            ],
            "trail_concepts": {
                str(i): {
                    "extent": sorted(overlay.extent_ids(i)),
                    "intent": sorted(overlay.intent_ids(i)),
                    "parents": sorted(overlay.neighbors(i)[0]),
                    "children": sorted(overlay.neighbors(i)[1]),
                }
                for i in sorted(trail_ids)
            },
            "overlay": {
                "new_concepts": [
                    {
                        "id": i,
                        "extent": sorted(overlay.extent_ids(i)),
                        "intent": sorted(overlay.intent_ids(i)),
                    }
                    for i in range(base_n, len(overlay))
                ],
                "grown_concepts": [
                    i for i in range(base_n)
                    if overlay._extents[i] != base._extents[i]
                ],
                "added_covers": sorted([c, p] for c, p in overlay_covers - base_covers),
                "removed_covers": sorted([c, p] for c, p in base_covers - overlay_covers),
            },
        }

    if frontend_dir is not None and Path(frontend_dir).is_dir():
        app.mount("/", StaticFiles(directory=str(frontend_dir), html=True), name="ui")

    return app


def app_from_index(index_path, frontend_dir: Optional[Path] = None) -> FastAPI:
    return create_app(load_index(index_path), frontend_dir=frontend_dir)
