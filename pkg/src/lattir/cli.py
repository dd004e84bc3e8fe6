"""Command-line driver: index, query, verify, export, serve."""

import argparse
import json
import os
import sys
from pathlib import Path

import yaml

from .artifact import IndexArtifact, export_dot, load_index, save_index
from .context import load_context
from .corpus import StopList, build_context, fill_terms, parse_corpus
from .errors import LattirError
from .lattice import covers_from_extents, enumerate_concepts
from .ontology import load_ontology
from .query import Query, search

ENV_PREFIX = "LATTIR_"


def _fail(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return 2


def _require_paths(*paths) -> None:
    for p in paths:
        if p is not None and not Path(p).exists():
            raise LattirError(f"no such file: {p}")


def _load_input(path):
    """Read either a corpus XML file or a context JSON file.

    Returns (context, documents, stoplist): documents and a real stop list
    only when the input was a corpus.
    """
    head = Path(path).read_bytes()[:256].lstrip()
    if head.startswith(b"<"):
        stops = StopList.default()
        docs = fill_terms(parse_corpus(path), stops)
        return build_context(docs), docs, stops
    return load_context(path), None, StopList(())


def cmd_index(args) -> int:
    _require_paths(args.corpus, args.ontology, args.stoplist)
    stops = StopList.from_file(args.stoplist) if args.stoplist else StopList.default()
    ontology = load_ontology(args.ontology) if args.ontology else None

    head = Path(args.corpus).read_bytes()[:256].lstrip()
    if head.startswith(b"<"):
        docs = fill_terms(parse_corpus(args.corpus), stops)
        artifact = IndexArtifact.build(build_context(docs), documents=docs,
                                       ontology=ontology, stops=stops)
    else:
        artifact = IndexArtifact.build(load_context(args.corpus),
                                       ontology=ontology, stops=StopList(()))
    save_index(artifact, args.out)
    info = artifact.summary()
    if args.format == "json":
        print(json.dumps({**info, "index": str(args.out)}, sort_keys=True))
    else:
        print(f"objects: {info['objects']}")
        print(f"attributes: {info['attributes']}")
        print(f"concepts: {info['concepts']}")
        print(f"covers: {info['covers']}")
        print(f"wrote {args.out}")
    return 0


def cmd_query(args) -> int:
    _require_paths(args.index)
    artifact = load_index(args.index)
    query = Query.from_raw(args.terms, args.mode, stops=artifact.stoplist())
    report = search(artifact.context, artifact.lattice, query, artifact.ontology)
    result = report.result

    if args.format == "json":
        payload = result.to_dict()
        payload["query_concept"] = {
            "extent": sorted(report.query_concept.extent),
            "intent": sorted(report.query_concept.intent),
        }
        print(json.dumps(payload, sort_keys=True))
        return 0

    if result.dropped_terms:
        print("dropped terms: " + ", ".join(result.dropped_terms), file=sys.stderr)
    for rank, doc in result.entries:
        title = artifact.documents.get(doc, {}).get("title", "")
        line = f"{rank} - {doc}"
        if title:
            line += f" - {title}"
        print(line)
    return 0


def cmd_verify(args) -> int:
    _require_paths(args.input)
    head = Path(args.input).read_bytes()[:4096].lstrip()
    if head.startswith(b"{") and b"format_version" in head:
        artifact = load_index(args.input)
        ctx, lattice = artifact.context, artifact.lattice
    else:
        ctx, _, _ = _load_input(args.input)
        artifact = IndexArtifact.build(ctx)
        lattice = artifact.lattice

    failures = []

    def check(name, ok, detail=""):
        status = "PASS" if ok else "FAIL"
        suffix = f" ({detail})" if detail else ""
        print(f"{status} {name}{suffix}")
        if not ok:
            failures.append(name)

    batch = enumerate_concepts(ctx)
    incremental = frozenset(lattice)
    detail = f"{len(incremental)} = {len(batch)} concepts"
    if incremental != batch:
        diff = sorted(
            incremental ^ batch, key=lambda c: (len(c.intent), sorted(c.intent))
        )[0]
        detail = (
            f"first difference: extent {sorted(diff.extent)}, intent {sorted(diff.intent)}"
        )
    check("concepts-match-batch-enumeration", incremental == batch, detail)

    expected_edges = covers_from_extents(lattice._extents)
    actual_edges = lattice.covers()
    detail = f"{len(actual_edges)} edges"
    if actual_edges != expected_edges:
        bad = sorted(actual_edges ^ expected_edges)[0]
        kind = "spurious" if bad in actual_edges else "missing"
        detail = f"{kind} edge {bad[0]} -> {bad[1]}"
    check("cover-relation", actual_edges == expected_edges, detail)

    closed = all(
        ctx.intent_mask(lattice._extents[i]) == lattice._intents[i]
        and ctx.extent_mask(lattice._intents[i]) == lattice._extents[i]
        for i in range(len(lattice))
    )
    check("concept-closure", closed)
    check("unique-intents", len(set(lattice._intents)) == len(lattice))
    check(
        "top-bottom",
        lattice._extents[lattice.top] == ctx.all_objects_mask
        and lattice._intents[lattice.bottom] == ctx.all_attributes_mask,
    )
    return 1 if failures else 0


def cmd_export(args) -> int:
    _require_paths(args.index)
    artifact = load_index(args.index)
    text = export_dot(artifact, full_labels=args.full_labels)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        print(f"wrote {args.out}")
    else:
        print(text, end="")
    return 0


def _serve_settings(args) -> dict:
    """Merge config file, environment overrides, and CLI flags (weakest first)."""
    settings = {
        "listen": "127.0.0.1:8000",
        "index": None,
        "corpus": None,
        "ontology": None,
        "stoplist": None,
    }
    if args.config:
        _require_paths(args.config)
        with open(args.config, "r", encoding="utf-8") as fh:
            loaded = yaml.safe_load(fh) or {}
        if not isinstance(loaded, dict):
            raise LattirError(f"config file {args.config} must be a mapping")
        for key in settings:
            if key in loaded and loaded[key] is not None:
                settings[key] = loaded[key]
    for key in settings:
        env = os.environ.get(ENV_PREFIX + key.upper())
        if env:
            settings[key] = env
    if args.index:
        settings["index"] = args.index
    if args.listen:
        settings["listen"] = args.listen
    return settings


def cmd_serve(args) -> int:
    import uvicorn

    from .service import build_artifact_from_request, create_app, IndexRequest

    settings = _serve_settings(args)
    frontend = Path(__file__).resolve().parents[2] / "frontend" / "dist"
    if settings["index"]:
        _require_paths(settings["index"])
        artifact = load_index(settings["index"])
    elif settings["corpus"]:
        _require_paths(settings["corpus"], settings["ontology"], settings["stoplist"])
        artifact = build_artifact_from_request(IndexRequest(
            corpus_path=settings["corpus"],
            ontology_path=settings["ontology"],
            stoplist_path=settings["stoplist"],
        ))
    else:
        raise LattirError("nothing to serve: give an index argument or configure a corpus")

    host, _, port = str(settings["listen"]).rpartition(":")
    host = host or "127.0.0.1"
    app = create_app(artifact, frontend_dir=frontend if frontend.is_dir() else None)
    try:
        uvicorn.run(app, host=host, port=int(port), log_level="warning")
    except OSError as exc:
        raise LattirError(f"cannot listen on {settings['listen']}: {exc}") from exc
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lattir",
        description="Concept-lattice document retrieval engine",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("index", help="build and save an index from a corpus or context file")
    p.add_argument("corpus", help="corpus XML or context JSON file")
    p.add_argument("-o", "--out", required=True, help="output index path")
    p.add_argument("--ontology", help="ontology YAML to embed")
    p.add_argument("--stoplist", help="replacement stop-word file")
    p.add_argument("--format", choices=("plain", "json"), default="plain")
    p.set_defaults(func=cmd_index)

    p = sub.add_parser("query", help="rank documents for a query")
    p.add_argument("index", help="index file")
    p.add_argument("terms", nargs="+", help="query terms; quote multi-word attributes")
    p.add_argument("--mode", choices=("none", "generalize", "specialize"), default="none")
    p.add_argument("--format", choices=("plain", "json"), default="plain")
    p.set_defaults(func=cmd_query)

    p = sub.add_parser("verify", help="cross-check a lattice against batch enumeration")
    p.add_argument("input", help="index file, corpus XML, or context JSON")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("export", help="write the lattice as a DOT line diagram")
    p.add_argument("index", help="index file")
    p.add_argument("-o", "--out", help="output path (default: stdout)")
    p.add_argument("--full-labels", action="store_true", help="full extents/intents instead of reduced labels")
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("serve", help="serve the HTTP API (and UI, if built)")
    p.add_argument("index", nargs="?", help="index file")
    p.add_argument("--listen", help="host:port (default 127.0.0.1:8000)")
    p.add_argument("--config", help="YAML config file; env vars LATTIR_* override it")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (LattirError, OSError) as exc:
        return _fail(str(exc))


if __name__ == "__main__":
    sys.exit(main())
