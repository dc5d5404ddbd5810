"""Score files, histograms and grouped summaries.

Score files come in two formats carrying the same values:

* csv: ``# config {...}`` line, a ``node_id,alpha,label,psi`` table, then one
  ``# summary {...}`` JSON line per alpha.
* json: ``{"config": ..., "scores": [...], "summary": [...]}``.

Undefined scores are the token ``undefined`` in csv and ``null`` in json.
Numbers are written with 12 significant digits.
"""

from __future__ import annotations

import csv
import io
import json
import math
from collections import defaultdict
from typing import Iterable, Mapping, Sequence

import numpy as np

from .baselines import AssortativityReport
from .engine import ConformityResult, LabelView
from .errors import DataError, ParseError
from .graph import AttributedGraph

UNDEFINED = "undefined"
SCORE_HEADER = ["node_id", "alpha", "label", "psi"]
SUMMARY_HEADER = ["alpha", "group", "count", "mean", "median", "q1", "q3", "min", "max"]
DEFAULT_BINS = 20
MODE_PROMINENCE_SHARE = 0.1


def fmt(x: float | None) -> str:
    if x is None:
        return UNDEFINED
    return format(float(x), ".12g")


def rounded(x: float | None) -> float | None:
    return None if x is None else float(fmt(x))


def histogram(values: Sequence[float], bins: int = DEFAULT_BINS) -> tuple[list[float], list[int]]:
    """Equal-width bins over [-1, 1]; the last bin is closed on the right."""
    if bins < 1:
        raise ValueError("bins must be >= 1")
    counts, edges = np.histogram(np.asarray(values, dtype=float), bins=bins, range=(-1.0, 1.0))
    return [float(e) for e in edges], [int(c) for c in counts]


def count_modes(counts: Sequence[int], min_prominence: float | None = None) -> int:
    """Number of local maxima in a histogram.

    A peak is a run of equal bins higher than both neighbors (bins outside
    the range count as empty).  It is a mode only if it rises at least
    ``min_prominence`` above the higher of the two valleys separating it
    from a taller peak, or from the range ends.  Between equal heights the
    leftmost peak is taken as the taller.  The default threshold is 10% of
    the total count, so single-sample bumps do not register.
    """
    v = [0.0, *(float(c) for c in counts), 0.0]
    if min_prominence is None:
        min_prominence = max(1.0, math.ceil(MODE_PROMINENCE_SHARE * sum(v)))
    modes = 0
    i = 1
    while i < len(v) - 1:
        j = i
        while j + 1 < len(v) - 1 and v[j + 1] == v[i]:
            j += 1
        h = v[i]
        if h > v[i - 1] and h > v[j + 1]:
            left = h
            for k in range(i - 1, -1, -1):
                if v[k] >= h:
                    break
                left = min(left, v[k])
            right = h
            for k in range(j + 1, len(v)):
                if v[k] > h:
                    break
                right = min(right, v[k])
            if h - max(left, right) >= min_prominence:
                modes += 1
        i = j + 1
    return modes


def summary_block(result: ConformityResult, bins: int = DEFAULT_BINS) -> dict:
    edges, counts = histogram(result.defined(), bins)
    return {
        "alpha": rounded(result.alpha),
        "network_psi": rounded(result.network_psi),
        "undefined": len(result.undefined_nodes),
        "modes": count_modes(counts),
        "histogram": {"edges": [rounded(e) for e in edges], "counts": counts},
    }


def score_rows(g: AttributedGraph, view: LabelView, results: Iterable[ConformityResult]) -> list[dict]:
    rows = []
    for res in results:
        for u, p in enumerate(res.psi):
            rows.append({"node_id": g.ids[u], "alpha": rounded(res.alpha), "label": view.display(u), "psi": rounded(p)})
    return rows


def _dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def render_scores(
    g: AttributedGraph,
    view: LabelView,
    results: Sequence[ConformityResult],
    config: Mapping,
    fmt_name: str = "csv",
    bins: int = DEFAULT_BINS,
) -> str:
    rows = score_rows(g, view, results)
    summary = [summary_block(r, bins) for r in results]
    if fmt_name == "json":
        return json.dumps({"config": config, "scores": rows, "summary": summary}, sort_keys=True, indent=1) + "\n"
    buf = io.StringIO()
    buf.write(f"# config {_dumps(config)}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(SCORE_HEADER)
    for r in rows:
        w.writerow([r["node_id"], fmt(r["alpha"]), r["label"], fmt(r["psi"])])
    for s in summary:
        buf.write(f"# summary {_dumps(s)}\n")
    return buf.getvalue()


def read_scores(text: str) -> dict:
    """Parse a score file (either format) into the json-shaped dict."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"score file: {exc}") from None
        for key in ("config", "scores", "summary"):
            if key not in data:
                raise ParseError(f"score file: missing {key!r}")
        return data

    config, summary, body = None, [], []
    for line in text.splitlines():
        if line.startswith("# config "):
            config = json.loads(line[len("# config "):])
        elif line.startswith("# summary "):
            summary.append(json.loads(line[len("# summary "):]))
        elif line.strip() and not line.startswith("#"):
            body.append(line)
    reader = csv.reader(body)
    header = next(reader, None)
    if header != SCORE_HEADER:
        raise ParseError(f"score file: expected header {SCORE_HEADER}, got {header}")
    scores = []
    for i, row in enumerate(reader, start=2):
        if len(row) != 4:
            raise ParseError(f"score file: row {i} has {len(row)} columns")
        node, alpha, label, psi = row
        scores.append({
            "node_id": node,
            "alpha": float(alpha),
            "label": label,
            "psi": None if psi == UNDEFINED else float(psi),
        })
    return {"config": config, "scores": scores, "summary": summary}


def summarize(scores: Sequence[Mapping], group_of: Mapping[str, str] | None = None) -> list[dict]:
    """Per (alpha, group) box-plot statistics of the defined scores.

    ``group_of`` maps node ids to groups; without it rows are grouped by
    their ``label`` column.  Groups whose scores are all undefined get a
    zero count and null statistics.
    """
    buckets: dict[tuple[float, str], list[float]] = defaultdict(list)
    for row in scores:
        if group_of is None:
            group = row["label"]
        else:
            try:
                group = group_of[row["node_id"]]
            except KeyError:
                raise DataError(f"node {row['node_id']!r} has no group value") from None
        vals = buckets[(row["alpha"], group)]
        if row["psi"] is not None:
            vals.append(row["psi"])
    out = []
    for alpha, group in sorted(buckets):
        vals = np.asarray(buckets[(alpha, group)], dtype=float)
        if len(vals):
            q1, med, q3 = np.percentile(vals, [25, 50, 75])
            stats = [float(vals.mean()), float(med), float(q1), float(q3), float(vals.min()), float(vals.max())]
        else:
            stats = [None] * 6
        rec = {"alpha": alpha, "group": group, "count": int(len(vals))}
        rec.update(zip(SUMMARY_HEADER[3:], (rounded(s) for s in stats)))
        out.append(rec)
    return out


def render_summary(rows: Sequence[Mapping], config: Mapping, fmt_name: str = "csv") -> str:
    if fmt_name == "json":
        return json.dumps({"config": config, "summary": list(rows)}, sort_keys=True, indent=1) + "\n"
    buf = io.StringIO()
    buf.write(f"# config {_dumps(config)}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(SUMMARY_HEADER)
    for r in rows:
        w.writerow([fmt(r["alpha"]), r["group"], r["count"], *(fmt(r[k]) for k in SUMMARY_HEADER[3:])])
    return buf.getvalue()


def render_assortativity(report: AssortativityReport, view: LabelView, config: Mapping, fmt_name: str = "csv") -> str:
    def name(c):
        return "|".join(c) if isinstance(c, tuple) else str(c)

    if fmt_name == "json":
        data = {
            "config": config,
            "attributes": list(view.attribute_names),
            "edges": report.n_edges,
            "e": {name(c): rounded(v) for c, v in report.e.items()},
            "a": {name(c): rounded(v) for c, v in report.a.items()},
            "r_global": rounded(report.r),
            "status": UNDEFINED if report.degenerate else "ok",
        }
        return json.dumps(data, sort_keys=True, indent=1) + "\n"
    buf = io.StringIO()
    buf.write(f"# config {_dumps(config)}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["term", "category", "value"])
    for c, v in report.e.items():
        w.writerow(["e_gg", name(c), fmt(v)])
    for c, v in report.a.items():
        w.writerow(["a_g", name(c), fmt(v)])
    w.writerow(["r_global", "", fmt(report.r)])
    return buf.getvalue()
