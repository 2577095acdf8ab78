"""Command-line entry points: index, query, sim, serve, generate.

Exit codes: 0 success, 2 I/O problems, 3 invalid ontology, 4 unknown concept,
5 bad arguments.
"""

from __future__ import annotations

import datetime
import hashlib
import json
import pickle
import random
import struct
import sys

import click

from . import __version__
from .corpus import Document, load_annotations
from .errors import (
    BadQueryError,
    BundleFormatError,
    CycleError,
    DanglingReferenceError,
    DuplicateDocIdError,
    DuplicateIdError,
    EmptyInputError,
    OntoRankError,
    ParseError,
    UnknownConceptError,
)
from .ontology import Concept, OntologyGraph, build_closure, parse_ontology
from .relevance import MeasureKind, MeasureSpec, Query
from .server import Snapshot, build_query_response, serve
from .similarity import (
    d_isa,
    as_similarity,
    concept_similarity,
    ho_distance,
    ic_extensional,
    rada_distance,
    sim_jd,
    sim_lin,
    sim_resnik,
)

_MAGIC = b"ORNK"
_BUNDLE_VERSION = 1


def _sha256(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def save_bundle(path: str, graph: OntologyGraph, documents: list[Document], digests: dict[str, str]) -> None:
    payload = {
        "concepts": [
            (c.id, c.label, list(c.synonyms))
            for c in sorted(graph.concepts.values(), key=lambda c: c.id)
        ],
        "edges": sorted(graph.edges),
        "docs": [(d.id, d.title, sorted(d.annotation)) for d in sorted(documents, key=lambda d: d.id)],
        "digests": digests,
        "built_at": datetime.datetime.now(datetime.timezone.utc).isoformat(),
        "tool_version": __version__,
    }
    with open(path, "wb") as fh:
        fh.write(_MAGIC)
        fh.write(struct.pack("<H", _BUNDLE_VERSION))
        pickle.dump(payload, fh, protocol=5)


def load_bundle(path: str) -> Snapshot:
    with open(path, "rb") as fh:
        magic = fh.read(4)
        if magic != _MAGIC:
            raise BundleFormatError(f"{path} is not an index bundle")
        (version,) = struct.unpack("<H", fh.read(2))
        if version != _BUNDLE_VERSION:
            raise BundleFormatError(f"unsupported bundle version {version}")
        payload = pickle.load(fh)
    graph = OntologyGraph(
        [Concept(cid, label, tuple(syn)) for cid, label, syn in payload["concepts"]],
        payload["edges"],
    )
    documents = [Document(did, title, frozenset(ann)) for did, title, ann in payload["docs"]]
    return Snapshot.assemble(graph, documents, payload.get("digests"))


def generate_instance(
    concept_count: int, doc_count: int, seed: int
) -> tuple[str, str]:
    """Deterministic synthetic ontology + annotation texts for one seed.

    Concept 1 is the root; every later concept picks 1-3 parents uniformly
    among earlier concepts, and every document gets 3-10 uniformly sampled
    concepts (clipped to the vocabulary size).
    """
    if concept_count < 1 or doc_count < 1:
        raise BadQueryError("concept-count and doc-count must be positive")
    rng = random.Random(seed)
    width = len(str(concept_count))
    ids = [f"C{i:0{width}d}" for i in range(1, concept_count + 1)]
    stanzas: list[str] = []
    for i, cid in enumerate(ids):
        lines = [f"[Term]", f"id: {cid}", f"name: Concept {i + 1}"]
        if i > 0:
            for p in sorted(rng.sample(range(i), min(i, rng.randint(1, 3)))):
                lines.append(f"is_a: {ids[p]}")
        stanzas.append("\n".join(lines))
    ontology_text = "\n\n".join(stanzas) + "\n"

    doc_width = len(str(doc_count))
    rows: list[str] = []
    for j in range(1, doc_count + 1):
        doc_id = f"D{j:0{doc_width}d}"
        size = min(concept_count, rng.randint(3, 10))
        chosen = rng.sample(ids, size)
        rows.append(f"{doc_id}\t{chosen[0]}\tDocument {j}")
        rows.extend(f"{doc_id}\t{cid}" for cid in chosen[1:])
    annotations_text = "\n".join(rows) + "\n"
    return ontology_text, annotations_text


def _read_text(path: str) -> str:
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


@click.group()
@click.version_option(__version__, prog_name="ontorank")
def cli() -> None:
    """Ontology-driven document ranking toolkit."""


@cli.command("index")
@click.option("--ontology", required=True, help="Ontology term file to read.")
@click.option("--annotations", required=True, help="Tab-separated annotation rows.")
@click.option("--out", required=True, help="Where to write the index bundle.")
@click.option("--mode", type=click.Choice(["strict", "lenient"]), default="strict")
def cmd_index(ontology: str, annotations: str, out: str, mode: str) -> None:
    """Parse inputs, validate them, and write a binary index bundle."""
    ontology_text = _read_text(ontology)
    annotations_text = _read_text(annotations)
    graph = parse_ontology(ontology_text)
    closure = build_closure(graph)
    documents, report = load_annotations(annotations_text, closure, mode)  # type: ignore[arg-type]
    digests = {
        "ontology": _sha256(ontology_text.encode("utf-8")),
        "annotations": _sha256(annotations_text.encode("utf-8")),
    }
    save_bundle(out, graph, documents, digests)
    click.echo(f"concepts: {len(graph.concepts)}")
    click.echo(f"edges: {len(graph.edges)}")
    click.echo(f"documents: {len(documents)}")
    click.echo(f"dropped rows: {report.dropped_rows}")
    if report.dropped_docs:
        click.echo(f"dropped documents: {', '.join(report.dropped_docs)}")
    click.echo(f"wrote {out}")


def _split_concepts(raw: str) -> tuple[str, ...]:
    concepts = tuple(part.strip() for part in raw.split(",") if part.strip())
    if not concepts:
        raise BadQueryError("--concepts needs at least one concept id")
    return concepts


@cli.command("query")
@click.option("--index", "index_path", required=True, help="Index bundle to query.")
@click.option("--concepts", required=True, help="Comma-separated concept ids.")
@click.option("--q", type=float, default=1.0, show_default=True)
@click.option("--threshold", type=float, default=0.1, show_default=True)
@click.option("--limit", type=int, default=50, show_default=True)
@click.option(
    "--measure",
    type=click.Choice([kind.value for kind in MeasureKind]),
    default="jd",
    show_default=True,
)
@click.option("--K", "K", type=float, default=2.0, show_default=True)
@click.option("--format", "fmt", type=click.Choice(["json", "table"]), default="json")
def cmd_query(
    index_path: str,
    concepts: str,
    q: float,
    threshold: float,
    limit: int,
    measure: str,
    K: float,
    fmt: str,
) -> None:
    """Rank documents for a set of query concepts."""
    snapshot = load_bundle(index_path)
    query = Query(
        concepts=_split_concepts(concepts),
        q=q,
        threshold=threshold,
        limit=limit,
        measure=MeasureSpec(MeasureKind(measure), K=K),
    )
    response = build_query_response(snapshot, query)
    if fmt == "json":
        click.echo(json.dumps(response))
        return
    header = ["rank", "docId", "rsv"] + list(query.concepts)
    click.echo("\t".join(header))
    for row in response["results"]:
        cells = [str(row["rank"]), row["docId"], f"{row['rsv']:.4f}"]
        cells += [f"{e['score']:.4f}({e['kind']})" for e in row["elementary"]]
        click.echo("\t".join(cells))


@cli.command("sim")
@click.option("--index", "index_path", required=True, help="Index bundle to read.")
@click.option(
    "--measure",
    type=click.Choice([kind.value for kind in MeasureKind]),
    default="jd",
    show_default=True,
)
@click.option("--K", "K", type=float, default=2.0, show_default=True)
@click.argument("c1")
@click.argument("c2")
def cmd_sim(index_path: str, measure: str, K: float, c1: str, c2: str) -> None:
    """Print one raw measure value and its [0, 1] similarity mapping."""
    snapshot = load_bundle(index_path)
    closure = snapshot.closure
    kind = MeasureKind(measure)
    spec = MeasureSpec(kind, K=K)
    ic = None
    if kind in (MeasureKind.RESNIK, MeasureKind.LIN):
        ic = ic_extensional(closure, snapshot.corpus)
    if kind is MeasureKind.JD:
        raw: float = sim_jd(closure, c1, c2)
    elif kind is MeasureKind.RADA:
        raw = rada_distance(snapshot.graph, c1, c2)
    elif kind is MeasureKind.HIRST_ST_ONGE:
        raw = ho_distance(snapshot.graph, c1, c2, K)
    elif kind is MeasureKind.D_ISA:
        raw = d_isa(closure, c1, c2)
    elif kind is MeasureKind.RESNIK:
        raw = sim_resnik(closure, ic, c1, c2)
    else:
        raw = sim_lin(closure, ic, c1, c2)
    mapped = concept_similarity(closure, spec, c1, c2, ic=ic)
    raw_text = str(raw) if isinstance(raw, int) else f"{raw:.6f}"
    click.echo(f"raw {raw_text}")
    click.echo(f"sim {mapped:.6f}")


@cli.command("serve")
@click.option("--index", "index_path", required=True, help="Index bundle to serve.")
@click.option("--bind", default="127.0.0.1:8034", show_default=True)
def cmd_serve(index_path: str, bind: str) -> None:
    """Serve the query API over HTTP."""
    snapshot = load_bundle(index_path)
    snapshot.warm()
    serve(snapshot, bind)


@cli.command("generate")
@click.option("--concept-count", type=int, required=True)
@click.option("--doc-count", type=int, required=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--ontology", required=True, help="Output path for the ontology file.")
@click.option("--annotations", required=True, help="Output path for the annotation rows.")
def cmd_generate(
    concept_count: int, doc_count: int, seed: int, ontology: str, annotations: str
) -> None:
    """Write a seed-deterministic synthetic ontology and corpus."""
    ontology_text, annotations_text = generate_instance(concept_count, doc_count, seed)
    with open(ontology, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(ontology_text)
    with open(annotations, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(annotations_text)
    click.echo(f"wrote {ontology} ({concept_count} concepts)")
    click.echo(f"wrote {annotations} ({doc_count} documents)")


def main(argv: list[str] | None = None) -> int:
    """Run the CLI, mapping every failure class to its documented exit code."""
    try:
        cli.main(args=argv, prog_name="ontorank", standalone_mode=False)
        return 0
    except click.exceptions.Exit as exc:
        return int(exc.exit_code)
    except click.UsageError as exc:
        click.echo(f"error: {exc.format_message()}", err=True)
        return 5
    except click.Abort:
        return 1
    except UnknownConceptError as exc:
        click.echo(f"error: {exc}", err=True)
        return 4
    except (CycleError, DanglingReferenceError, DuplicateIdError, ParseError) as exc:
        click.echo(f"error: {exc}", err=True)
        return 3
    except (BadQueryError, DuplicateDocIdError, EmptyInputError, ValueError) as exc:
        click.echo(f"error: {exc}", err=True)
        return 5
    except BundleFormatError as exc:
        click.echo(f"error: {exc}", err=True)
        return 2
    except OSError as exc:
        name = getattr(exc, "filename", None)
        click.echo(f"error: {exc}" + (f" ({name})" if name and str(name) not in str(exc) else ""), err=True)
        return 2
    except OntoRankError as exc:
        click.echo(f"error: {exc}", err=True)
        return 5


if __name__ == "__main__":
    sys.exit(main())
