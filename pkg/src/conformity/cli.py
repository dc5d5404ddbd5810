"""Command-line entry point: ``conformity {compute,baseline,generate,summarize}``.

Exit status: 0 success (warnings allowed), 1 usage error, 2 data error,
3 generation failure.  Errors are printed as one ``error[<kind>]: ...``
line on stderr.
"""

from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import asdict, dataclass, field
from pathlib import Path

from . import __version__
from .baselines import newman_assortativity
from .engine import all_conformity, compose_labels
from .errors import ConformityError, ParameterError
from .generators import QUINTET_R_TOL, MAX_TRIES, GeneratorSpec
from .graph import load_attributes, load_graph, write_attributes, write_edge_list
from .report import DEFAULT_BINS, read_scores, render_assortativity, render_scores, render_summary, summarize

log = logging.getLogger("conformity")


class UsageError(ParameterError):
    kind = "usage"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass
class RunConfig:
    """Normalized run parameters, echoed into every output file.

    Output path and worker count are left out: neither changes the values.
    """

    command: str
    graph: str | None = None
    attrs: str | None = None
    attributes: list[str] = field(default_factory=list)
    alphas: list[float] = field(default_factory=list)
    format: str = "csv"
    bins: int | None = None
    seed: int | None = None
    kind: str | None = None
    variant: str | None = None
    group_by: str | None = None
    scores: str | None = None

    @classmethod
    def from_args(cls, args) -> "RunConfig":
        names = {f for f in cls.__dataclass_fields__}
        values = {k: v for k, v in vars(args).items() if k in names}
        return cls(**values)

    def echo(self) -> dict:
        d = asdict(self)
        d["version"] = __version__
        return {k: v for k, v in d.items() if v not in (None, [])}


def _csv_list(text: str) -> list[str]:
    items = [t.strip() for t in text.split(",") if t.strip()]
    if not items:
        raise argparse.ArgumentTypeError("expected a non-empty comma-separated list")
    return items


def _alpha_list(text: str) -> list[float]:
    try:
        vals = [float(t) for t in _csv_list(text)]
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid alpha list {text!r}") from None
    if any(not (a >= 0) for a in vals):
        raise argparse.ArgumentTypeError("alphas must be non-negative")
    return vals


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in _csv_list(text)]
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid integer list {text!r}") from None


def _positive(text: str) -> int:
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return n


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="conformity", description="Path-aware node homophily for attributed graphs.")
    p.add_argument("--version", action="version", version=__version__)
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def graph_inputs(sp):
        sp.add_argument("--graph", required=True, help="edge-list file")
        sp.add_argument("--attrs", required=True, help="attribute table (header row, one id column)")
        sp.add_argument("--attributes", type=_csv_list, required=True,
                        help="comma list; several names form a joint label in this order")
        sp.add_argument("--id-column", default="id")
        sp.add_argument("--delimiter", default="auto", choices=["auto", "comma", "tab", "whitespace"])
        sp.add_argument("--header", action="store_true", help="edge list has a header row")
        sp.add_argument("--out", help="output file (stdout if omitted)")
        sp.add_argument("--format", choices=["csv", "json"], default="csv")

    c = sub.add_parser("compute", help="per-node Conformity scores")
    graph_inputs(c)
    c.add_argument("--alpha", dest="alphas", type=_alpha_list, default=[2.5], help="comma list (default 2.5)")
    c.add_argument("--bins", type=_positive, default=DEFAULT_BINS)
    c.add_argument("--workers", type=_positive, default=1)

    b = sub.add_parser("baseline", help="Newman attribute assortativity")
    graph_inputs(b)

    g = sub.add_parser("generate", help="write a synthetic graph")
    g.add_argument("--kind", required=True, choices=["quintet", "complete-distinct", "concentric-rings", "karate"])
    g.add_argument("--variant", choices=list("abcde"), default="a")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--n", type=int, default=5, help="complete-distinct node count")
    g.add_argument("--core-size", type=int, default=5)
    g.add_argument("--rings", type=_int_list, default=[3, 6], help="ring sizes, comma list")
    g.add_argument("--core-label", default="core")
    g.add_argument("--outer-label", default="outer")
    g.add_argument("--r-tol", type=float, default=QUINTET_R_TOL)
    g.add_argument("--max-tries", type=int, default=MAX_TRIES)
    g.add_argument("--out", required=True, help="prefix; writes <out>.edges.csv and <out>.attrs.csv")

    s = sub.add_parser("summarize", help="grouped statistics of a score file")
    s.add_argument("--scores", required=True, help="file written by `compute`")
    s.add_argument("--group-by", default="label",
                   help="attribute from --attrs, or 'label' for the scored label (default)")
    s.add_argument("--attrs", help="attribute table holding the grouping column")
    s.add_argument("--id-column", default="id")
    s.add_argument("--out")
    s.add_argument("--format", choices=["csv", "json"], default="csv")
    return p


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _graph(args):
    return load_graph(
        args.graph, args.attrs, args.attributes,
        id_column=args.id_column, delimiter=args.delimiter, header=args.header,
    )


def cmd_compute(args) -> int:
    config = RunConfig.from_args(args)
    g = _graph(args)
    view = compose_labels(g, args.attributes)
    results = all_conformity(g, view, args.alphas, workers=args.workers)
    for r in results:
        if r.undefined_nodes:
            log.warning("alpha=%g: %d isolated node(s) have no score", r.alpha, len(r.undefined_nodes))
    _emit(render_scores(g, view, results, config.echo(), args.format, args.bins), args.out)
    return 0


def cmd_baseline(args) -> int:
    config = RunConfig.from_args(args)
    g = _graph(args)
    view = compose_labels(g, args.attributes)
    report = newman_assortativity(g, view)
    if report.degenerate:
        log.warning("a single category holds every edge endpoint; r_global is undefined")
    _emit(render_assortativity(report, view, config.echo(), args.format), args.out)
    return 0


def cmd_generate(args) -> int:
    params = {
        "quintet": {"r_tol": args.r_tol, "max_tries": args.max_tries},
        "complete-distinct": {"n": args.n},
        "concentric-rings": {
            "core_size": args.core_size, "ring_sizes": args.rings,
            "core_label": args.core_label, "outer_label": args.outer_label,
        },
        "karate": {},
    }[args.kind]
    spec = GeneratorSpec(args.kind, variant=args.variant, seed=args.seed, params=params)
    g = spec.build()
    edge_path, attr_path = Path(f"{args.out}.edges.csv"), Path(f"{args.out}.attrs.csv")
    edge_path.parent.mkdir(parents=True, exist_ok=True)
    write_edge_list(g, edge_path)
    write_attributes(g, attr_path)
    line = f"nodes={g.n_nodes} edges={g.n_edges}"
    if args.kind == "quintet":
        r = newman_assortativity(g, compose_labels(g, ["color"])).r
        line += f" r={r:.6f}"
    print(line)
    print(f"wrote {edge_path} {attr_path}")
    return 0


def cmd_summarize(args) -> int:
    config = RunConfig.from_args(args)
    path = Path(args.scores)
    if not path.exists():
        raise ConformityError(f"score file not found: {path}")
    data = read_scores(path.read_text())
    if args.group_by == "label" and not args.attrs:
        group_of = None
    else:
        if not args.attrs:
            raise UsageError("--attrs is required to group by an attribute")
        table = load_attributes(args.attrs, id_column=args.id_column, attribute_names=[args.group_by])
        group_of = {node: rec[args.group_by] for node, rec in table.items()}
    rows = summarize(data["scores"], group_of)
    _emit(render_summary(rows, config.echo(), args.format), args.out)
    return 0


COMMANDS = {
    "compute": cmd_compute,
    "baseline": cmd_baseline,
    "generate": cmd_generate,
    "summarize": cmd_summarize,
}


def main(argv=None) -> int:
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("%(levelname)s: %(message)s"))
    root = logging.getLogger("conformity")
    root.handlers[:] = [handler]
    root.setLevel(logging.WARNING)
    root.propagate = False
    try:
        args = build_parser().parse_args(argv)
        if args.verbose:
            root.setLevel(logging.INFO)
        return COMMANDS[args.command](args)
    except ConformityError as exc:
        msg = str(exc).replace("\n", " ")
        print(f"error[{exc.kind}]: {msg}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
