"""Newman's attribute assortativity coefficient."""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass

from .engine import Label, LabelView
from .errors import DataError
from .graph import AttributedGraph


@dataclass(frozen=True)
class AssortativityReport:
    """Mixing terms and the coefficient.

    ``e[g]`` is the fraction of edges with both endpoints in category ``g``,
    ``a[g]`` the share of total degree held by category ``g``.  ``r`` is
    ``None`` when one category holds all the degree mass.
    """

    e: dict[Label, float]
    a: dict[Label, float]
    r: float | None
    n_edges: int

    @property
    def degenerate(self) -> bool:
        return self.r is None


def newman_assortativity(g: AttributedGraph, view: LabelView) -> AssortativityReport:
    m = g.n_edges
    if m == 0:
        raise DataError("assortativity is undefined on a graph without edges")
    labels = view.labels
    within: dict[Label, int] = defaultdict(int)
    degree_sum: dict[Label, int] = defaultdict(int)
    for u, v in g.edges():
        if labels[u] == labels[v]:
            within[labels[u]] += 1
    for u in range(g.n_nodes):
        if g.adjacency[u]:
            degree_sum[labels[u]] += len(g.adjacency[u])

    cats = sorted(degree_sum, key=repr)
    e = {c: within[c] / m for c in cats}
    a = {c: degree_sum[c] / (2 * m) for c in cats}
    trace = math.fsum(e.values())
    a_sq = math.fsum(x * x for x in a.values())
    if len(cats) == 1:
        r = None
    else:
        r = (trace - a_sq) / (1.0 - a_sq)
    return AssortativityReport(e=e, a=a, r=r, n_edges=m)
