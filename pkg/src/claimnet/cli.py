"""Command-line entry points for every pipeline stage.

Exit codes: 0 success, 1 data error, 2 usage error. Artifacts go to the
directory given with --out, or to stdout when no directory is set.
Dataset paths come from --records/--codebook/--mapping or the
CLAIMNET_RECORDS/CLAIMNET_CODEBOOK/CLAIMNET_MAPPING environment
variables.
"""

from __future__ import annotations

import json
import os
import sys
from datetime import date
from pathlib import Path
from typing import Optional

import click

from .aggregate import TimeWindow, aggregate_window, unstack_all
from .analysis import (
    centrality,
    communities,
    compare_networks,
    monthly_network_stats,
)
from .graphio import to_dot, to_graphml
from .ingest import (
    Dataset,
    IngestError,
    corpus_counts,
    load_actor_mapping,
    load_codebook,
    load_records,
)
from .keywords import monthly_keyword_table
from .network import (
    DegreeConvention,
    NodeNotFound,
    ProjectionMode,
    Side,
    build_affiliation,
    ego_network,
    project,
)


class DateParam(click.ParamType):
    name = "date"

    def convert(self, value, param, ctx):
        if isinstance(value, date):
            return value
        try:
            return date.fromisoformat(value)
        except ValueError:
            self.fail(f"{value!r} is not a YYYY-MM-DD date", param, ctx)


DATE = DateParam()
SIDES = click.Choice([s.value for s in Side])
MODES = click.Choice([m.value for m in ProjectionMode])
CONVENTIONS = click.Choice([c.value for c in DegreeConvention])


def load_dataset(records_path, codebook_path, mapping_path,
                 strict: bool = True, identity_fallback: bool = True,
                 corpus_range: Optional[tuple[date, date]] = None) -> Dataset:
    codebook = load_codebook(codebook_path)
    registry = load_actor_mapping(mapping_path,
                                  identity_fallback=identity_fallback)
    return load_records(records_path, codebook, registry, strict=strict,
                        corpus_range=corpus_range)


def load_dataset_from_env() -> Dataset:
    try:
        records = os.environ["CLAIMNET_RECORDS"]
        codebook = os.environ["CLAIMNET_CODEBOOK"]
        mapping = os.environ["CLAIMNET_MAPPING"]
    except KeyError as exc:
        raise IngestError(f"environment variable {exc.args[0]} is not set")
    return load_dataset(records, codebook, mapping)


def _emit(out_dir: Optional[str], filename: str, text: str) -> None:
    if out_dir:
        path = Path(out_dir)
        path.mkdir(parents=True, exist_ok=True)
        (path / filename).write_text(text, encoding="utf-8")
        click.echo(str(path / filename), err=True)
    else:
        click.echo(text, nl=not text.endswith("\n"))


def _tsv(rows: list[list], header: list[str]) -> str:
    lines = ["\t".join(header)]
    lines.extend("\t".join(str(cell) for cell in row) for row in rows)
    return "\n".join(lines) + "\n"


@click.group()
@click.option("--records", envvar="CLAIMNET_RECORDS", type=click.Path(),
              help="Claim records file (JSON lines).")
@click.option("--codebook", envvar="CLAIMNET_CODEBOOK", type=click.Path(),
              help="Codebook file (delimited text).")
@click.option("--mapping", envvar="CLAIMNET_MAPPING", type=click.Path(),
              help="Actor mapping file (delimited text).")
@click.option("--lenient", is_flag=True,
              help="Skip invalid records instead of aborting.")
@click.option("--no-identity-fallback", is_flag=True,
              help="Reject surface forms missing from the mapping table.")
@click.option("--corpus-start", type=DATE, default=None)
@click.option("--corpus-end", type=DATE, default=None)
@click.option("-o", "--out", type=click.Path(file_okay=False), default=None,
              help="Write artifacts into this directory instead of stdout.")
@click.pass_context
def main(ctx, records, codebook, mapping, lenient, no_identity_fallback,
         corpus_start, corpus_end, out):
    """Discourse-network toolkit: ingest, slice, project, measure, serve."""
    ctx.ensure_object(dict)
    ctx.obj.update(records=records, codebook=codebook, mapping=mapping,
                   strict=not lenient,
                   identity_fallback=not no_identity_fallback,
                   corpus_range=((corpus_start, corpus_end)
                                 if corpus_start and corpus_end else None),
                   out=out)


def _dataset(ctx) -> Dataset:
    obj = ctx.obj
    for key in ("records", "codebook", "mapping"):
        if not obj.get(key):
            raise click.UsageError(f"--{key} (or CLAIMNET_{key.upper()}) is required")
    try:
        return load_dataset(obj["records"], obj["codebook"], obj["mapping"],
                            strict=obj["strict"],
                            identity_fallback=obj["identity_fallback"],
                            corpus_range=obj["corpus_range"])
    except IngestError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)


def _window(ctx, start: Optional[date], end: Optional[date],
            dataset: Dataset) -> TimeWindow:
    first, last = dataset.corpus_range
    start = start or first
    end = end or last
    if start > end:
        raise click.UsageError(f"--from {start} is after --to {end}")
    return TimeWindow(start, end)


def _affiliation(dataset: Dataset, window: TimeWindow, m: int):
    observations = unstack_all(dataset.records)
    return build_affiliation(aggregate_window(observations, window, m),
                             window=window, m=m)


def _check_m(m: int) -> None:
    if m < 1:
        raise click.UsageError(f"--m must be >= 1, got {m}")


@main.command()
@click.pass_context
def validate(ctx):
    """Load the dataset and print the ingest report."""
    dataset = _dataset(ctx)
    report = dataset.report
    click.echo(str(report))
    for reason in report.reasons:
        click.echo(f"  {reason}", err=True)
    if report.rejected:
        sys.exit(1)


@main.command()
@click.option("--table", type=click.Choice(
    ["overview", "classes", "actors", "categories", "monthly", "claims"]),
    default="overview")
@click.option("--m", type=int, default=1, show_default=True,
              help="Slice threshold for the monthly table's networks.")
@click.option("--convention", type=CONVENTIONS, default="simple",
              show_default=True)
@click.option("--top", type=int, default=10, show_default=True)
@click.option("--actor", default=None, help="Claims table: filter by actor.")
@click.option("--from", "start", type=DATE, default=None,
              help="Claims table: window start.")
@click.option("--to", "end", type=DATE, default=None,
              help="Claims table: window end.")
@click.pass_context
def stats(ctx, table, m, convention, top, actor, start, end):
    """Descriptive statistics tables."""
    _check_m(m)
    dataset = _dataset(ctx)
    counts = corpus_counts(dataset)
    if table == "overview":
        first, last = dataset.corpus_range
        text = _tsv([
            ["records", counts.records],
            ["actor_rows", counts.actor_rows],
            ["observations", counts.observations],
            ["corpus_from", first.isoformat()],
            ["corpus_to", last.isoformat()],
        ], ["measure", "value"])
    elif table == "claims":
        window = _window(ctx, start, end, dataset)
        rows = [
            [o.record_id, o.doc_id, o.claim_date.isoformat(), o.actor,
             o.category, dataset.codebook.label(o.category),
             o.polarity.value]
            for o in unstack_all(dataset.records)
            if o.claim_date in window and (actor is None or o.actor == actor)
        ]
        rows.sort(key=lambda r: (r[2], r[0], r[3], r[4]))
        text = _tsv(rows, ["record_id", "doc_id", "date", "actor",
                           "category", "label", "polarity"])
    elif table == "classes":
        text = _tsv(
            [[c, n, counts.class_percentages[c]]
             for c, n in counts.class_counts.items()],
            ["major", "frequency", "percentage"])
    elif table == "actors":
        text = _tsv([[name, n] for name, n in counts.top_actors(top)],
                    ["name", "freq"])
    elif table == "categories":
        rows = sorted(counts.category_counts.items(),
                      key=lambda kv: (-(kv[1][0] + kv[1][1]), kv[0]))
        text = _tsv(
            [[code, dataset.codebook.label(code), pos, neg, pos + neg]
             for code, (pos, neg) in rows[:top]],
            ["code", "label", "positive", "negative", "total"])
    else:
        conv = DegreeConvention(convention)
        text = _tsv(
            [[r.label, r.claims, r.unique_categories, r.unique_actors,
              f"{r.average_degree(conv):.2f}"]
             for r in monthly_network_stats(dataset, m=m)],
            ["month", "claims", "unique_categories", "unique_actors",
             "average_degree"])
    _emit(ctx.obj["out"], f"stats_{table}.tsv", text)


def _render_network(net, dataset, fmt: str):
    if fmt == "dot":
        return to_dot(net, dataset.codebook, dataset.registry)
    if fmt == "graphml":
        return to_graphml(net, dataset.codebook, dataset.registry)
    from .api import _network_payload
    return json.dumps(_network_payload(net), indent=2, sort_keys=True) + "\n"


@main.command()
@click.option("--from", "start", type=DATE, default=None)
@click.option("--to", "end", type=DATE, default=None)
@click.option("--m", type=int, default=2, show_default=True)
@click.option("--format", "fmt", type=click.Choice(["dot", "graphml", "json"]),
              default="dot", show_default=True)
@click.option("--ego", default=None, help="Restrict to one node's ego network.")
@click.pass_context
def network(ctx, start, end, m, fmt, ego):
    """Build and export the windowed m-slice affiliation network."""
    _check_m(m)
    dataset = _dataset(ctx)
    net = _affiliation(dataset, _window(ctx, start, end, dataset), m)
    if ego is not None:
        try:
            net = ego_network(net, ego)
        except NodeNotFound as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(1)
    _emit(ctx.obj["out"], f"network.{fmt}", _render_network(net, dataset, fmt))


@main.command("project")
@click.option("--side", type=SIDES, default="actor", show_default=True)
@click.option("--mode", type=MODES, default="combined", show_default=True)
@click.option("--from", "start", type=DATE, default=None)
@click.option("--to", "end", type=DATE, default=None)
@click.option("--m", type=int, default=2, show_default=True)
@click.option("--format", "fmt", type=click.Choice(["dot", "graphml", "tsv"]),
              default="tsv", show_default=True)
@click.pass_context
def project_cmd(ctx, side, mode, start, end, m, fmt):
    """One-mode projection of the windowed network."""
    _check_m(m)
    dataset = _dataset(ctx)
    net = _affiliation(dataset, _window(ctx, start, end, dataset), m)
    proj = project(net, Side(side), ProjectionMode(mode))
    if fmt == "tsv":
        text = _tsv([[e.u, e.v, e.weight] for e in proj.edges],
                    ["source", "target", "weight"])
    elif fmt == "dot":
        text = to_dot(proj, dataset.codebook, dataset.registry)
    else:
        text = to_graphml(proj, dataset.codebook, dataset.registry)
    _emit(ctx.obj["out"], f"projection_{side}_{mode}.{fmt}", text)


@main.command("communities")
@click.option("--side", type=SIDES, default="actor", show_default=True)
@click.option("--mode", type=MODES, default="combined", show_default=True)
@click.option("--from", "start", type=DATE, default=None)
@click.option("--to", "end", type=DATE, default=None)
@click.option("--m", type=int, default=2, show_default=True)
@click.pass_context
def communities_cmd(ctx, side, mode, start, end, m):
    """Greedy modularity communities of a projection."""
    _check_m(m)
    dataset = _dataset(ctx)
    net = _affiliation(dataset, _window(ctx, start, end, dataset), m)
    proj = project(net, Side(side), ProjectionMode(mode))
    if proj.node_count == 0:
        _emit(ctx.obj["out"], "communities.tsv",
              _tsv([], ["node", "community"]))
        return
    partition = communities(proj)
    rows = [[node, cid] for node, cid in sorted(partition.assignment.items())]
    text = _tsv(rows, ["node", "community"])
    text += f"# modularity\t{partition.modularity:.6f}\n"
    _emit(ctx.obj["out"], "communities.tsv", text)


@main.command("centrality")
@click.option("--target", type=click.Choice(["affiliation", "projection"]),
              default="affiliation", show_default=True)
@click.option("--side", type=SIDES, default="actor", show_default=True)
@click.option("--mode", type=MODES, default="combined", show_default=True)
@click.option("--convention", type=CONVENTIONS, default="multiplicity",
              show_default=True)
@click.option("--from", "start", type=DATE, default=None)
@click.option("--to", "end", type=DATE, default=None)
@click.option("--m", type=int, default=2, show_default=True)
@click.pass_context
def centrality_cmd(ctx, target, side, mode, convention, start, end, m):
    """Degree and betweenness centrality for the windowed network."""
    _check_m(m)
    dataset = _dataset(ctx)
    net = _affiliation(dataset, _window(ctx, start, end, dataset), m)
    graph = net if target == "affiliation" \
        else project(net, Side(side), ProjectionMode(mode))
    if graph.node_count == 0:
        click.echo("error: empty network", err=True)
        sys.exit(1)
    report = centrality(graph, DegreeConvention(convention))
    normalized = report.betweenness_normalized
    rows = [[v, report.degree[v], float(report.betweenness_exact[v]),
             f"{normalized[v]:.6f}"] for v in report.nodes]
    text = _tsv(rows, ["node", "degree", "betweenness",
                       "betweenness_normalized"])
    text += f"# average_degree\t{report.average_degree:.6f}\n"
    _emit(ctx.obj["out"], "centrality.tsv", text)


@main.command("keywords")
@click.option("--month", default=None, help="Restrict to one YYYY-MM month.")
@click.option("--k", type=int, default=2, show_default=True,
              help="Keywords extracted per passage.")
@click.option("--min-freq", type=int, default=1, show_default=True)
@click.option("--stopwords", "stopwords_path", type=click.Path(exists=True),
              default=None, help="Replace the bundled stopword list.")
@click.pass_context
def keywords_cmd(ctx, month, k, min_freq, stopwords_path):
    """Monthly keyword frequency rankings."""
    if k < 1 or min_freq < 1:
        raise click.UsageError("--k and --min-freq must be >= 1")
    dataset = _dataset(ctx)
    stopwords = None
    if stopwords_path is not None:
        from .keywords import load_stopwords

        stopwords = load_stopwords(
            Path(stopwords_path).read_text(encoding="utf-8").splitlines())
    rankings = monthly_keyword_table(dataset, k_per_passage=k,
                                     min_freq=min_freq, stopwords=stopwords)
    if month is not None:
        rankings = [r for r in rankings if r.month == month]
    rows = [[r.month, kw, freq] for r in rankings for kw, freq in r.entries]
    _emit(ctx.obj["out"], "keywords.tsv",
          _tsv(rows, ["month", "keyword", "freq"]))


@main.command("compare")
@click.option("--records-b", type=click.Path(), default=None,
              help="Second records file; omit to compare two windows.")
@click.option("--from-a", type=DATE, default=None)
@click.option("--to-a", type=DATE, default=None)
@click.option("--from-b", type=DATE, default=None)
@click.option("--to-b", type=DATE, default=None)
@click.option("--m", type=int, default=2, show_default=True)
@click.pass_context
def compare_cmd(ctx, records_b, from_a, to_a, from_b, to_b, m):
    """Compare two networks: same window on two record files, or two
    windows of one dataset."""
    _check_m(m)
    dataset = _dataset(ctx)
    window_a = _window(ctx, from_a, to_a, dataset)
    net_a = _affiliation(dataset, window_a, m)
    if records_b is not None:
        obj = ctx.obj
        try:
            dataset_b = load_dataset(records_b, obj["codebook"], obj["mapping"],
                                     strict=obj["strict"],
                                     identity_fallback=obj["identity_fallback"],
                                     corpus_range=obj["corpus_range"])
        except IngestError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(1)
        net_b = _affiliation(dataset_b, _window(ctx, from_a, to_a, dataset_b), m)
    else:
        net_b = _affiliation(dataset, _window(ctx, from_b, to_b, dataset), m)
    report = compare_networks(net_a, net_b)
    text = _tsv([
        ["shared_nodes", len(report.shared_nodes)],
        ["exclusive_nodes_a", len(report.exclusive_nodes_a)],
        ["exclusive_nodes_b", len(report.exclusive_nodes_b)],
        ["shared_edges", len(report.shared_edges)],
        ["exclusive_edges_a", len(report.exclusive_edges_a)],
        ["exclusive_edges_b", len(report.exclusive_edges_b)],
        ["category_coverage", f"{report.category_coverage:.4f}"],
        ["components_a", report.components_a],
        ["components_b", report.components_b],
    ], ["measure", "value"])
    _emit(ctx.obj["out"], "compare.tsv", text)


@main.command("serve")
@click.option("--host", default=None, help="Bind host (default from "
              "CLAIMNET_BIND or 127.0.0.1).")
@click.option("--port", type=int, default=None)
@click.option("--cache-size", type=int, default=0, show_default=True,
              help="Window-cache entry cap; 0 means unbounded.")
@click.pass_context
def serve(ctx, host, port, cache_size):
    """Start the read-only HTTP query API."""
    import uvicorn

    from .api import create_app

    dataset = _dataset(ctx)
    bind = os.environ.get("CLAIMNET_BIND", "127.0.0.1:8000")
    default_host, _, default_port = bind.partition(":")
    app = create_app(dataset, cache_size=cache_size)
    uvicorn.run(app, host=host or default_host,
                port=port if port is not None else int(default_port or 8000))


if __name__ == "__main__":
    main()
