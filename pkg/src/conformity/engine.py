"""Node-level Conformity scores and their network aggregate.

For a node ``u`` with distance shells ``N(u, d)`` the score is::

    psi(u, alpha) = sum_d  d**-alpha * mean_{v in N(u,d)} I(u,v) * f(v)
                    ----------------------------------------------------
                                   sum_d  d**-alpha

where ``I`` is +1 on equal labels and -1 otherwise, and ``f(v)`` is the
share of ``v``'s neighbors carrying ``v``'s label (1 when no neighbor does).
Both sums run over the distances realized from ``u``; isolated nodes have
no score.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Hashable, Sequence

from .errors import DataError, ParameterError
from .graph import AttributedGraph, DistanceShells, distance_shells

Label = Hashable


@dataclass(frozen=True)
class LabelView:
    """Effective label per node for an ordered attribute combination.

    With one attribute the labels are the raw string values; with several
    they are tuples, so equality is component-wise.
    """

    attribute_names: tuple[str, ...]
    labels: tuple[Label, ...]

    def display(self, u: int) -> str:
        lab = self.labels[u]
        return "|".join(lab) if isinstance(lab, tuple) else str(lab)

    @property
    def descriptor(self) -> str:
        return ",".join(self.attribute_names)


def compose_labels(g: AttributedGraph, attribute_names: Sequence[str]) -> LabelView:
    if isinstance(attribute_names, str):
        attribute_names = [attribute_names]
    names = tuple(attribute_names)
    if not names:
        raise ParameterError("at least one attribute name is required")
    unknown = [a for a in names if a not in g.attribute_names]
    if unknown:
        raise DataError(f"unknown attribute(s) {unknown}; declared: {list(g.attribute_names)}")
    if len(names) == 1:
        labels = tuple(rec[names[0]] for rec in g.attributes)
    else:
        labels = tuple(tuple(rec[a] for a in names) for rec in g.attributes)
    return LabelView(names, labels)


def indicator(label_u: Label, label_v: Label) -> int:
    return 1 if label_u == label_v else -1


def neighbor_label_fraction(g: AttributedGraph, view: LabelView, v: int) -> float:
    """Share of ``v``'s neighbors with ``v``'s label, forced to 1 when zero."""
    nbrs = g.adjacency[v]
    if not nbrs:
        raise DataError(f"node {g.ids[v]!r} has no neighbors")
    lab = view.labels[v]
    same = sum(1 for w in nbrs if view.labels[w] == lab)
    if same == 0:
        return 1.0
    return same / len(nbrs)


def _fractions(g: AttributedGraph, view: LabelView) -> list[float]:
    return [neighbor_label_fraction(g, view, v) if g.adjacency[v] else 0.0 for v in range(g.n_nodes)]


def _check_alpha(alpha: float) -> float:
    alpha = float(alpha)
    if not alpha >= 0 or math.isinf(alpha):
        raise ParameterError(f"alpha must be a finite non-negative number, got {alpha}")
    return alpha


def _shell_means(view: LabelView, fractions: list[float], shells: DistanceShells) -> list[tuple[int, float]]:
    lab_u = view.labels[shells.source]
    out = []
    for d, members in shells.shells:
        total = 0.0
        for v in members:
            f = fractions[v]
            total += f if view.labels[v] == lab_u else -f
        out.append((d, total / len(members)))
    return out


def _combine(means: list[tuple[int, float]], alpha: float) -> float | None:
    if not means:
        return None
    num = 0.0
    den = 0.0
    for d, m in means:
        w = d ** -alpha
        num += m * w
        den += w
    return num / den


def node_conformity(g: AttributedGraph, view: LabelView, u: int, alpha: float) -> float | None:
    """Conformity of node ``u``; ``None`` when ``u`` is isolated."""
    alpha = _check_alpha(alpha)
    shells = distance_shells(g, u)
    if not shells.shells:
        return None
    fractions = {}
    for _, members in shells.shells:
        for v in members:
            fractions[v] = neighbor_label_fraction(g, view, v)
    return _combine(_shell_means(view, fractions, shells), alpha)


@dataclass(frozen=True)
class ConformityResult:
    alpha: float
    attributes: tuple[str, ...]
    psi: tuple[float | None, ...]
    network_psi: float | None
    undefined_nodes: frozenset[int]

    def defined(self) -> list[float]:
        return [p for p in self.psi if p is not None]


def network_conformity(psi: Sequence[float | None]) -> float | None:
    """Mean of the defined node scores."""
    vals = [p for p in psi if p is not None]
    if not vals:
        return None
    return math.fsum(vals) / len(vals)


def _score_range(args) -> list[list[float | None]]:
    g, view, fractions, alphas, lo, hi = args
    rows = []
    for u in range(lo, hi):
        means = _shell_means(view, fractions, distance_shells(g, u))
        rows.append([_combine(means, a) for a in alphas])
    return rows


def all_conformity(
    g: AttributedGraph,
    view: LabelView,
    alphas: Sequence[float],
    workers: int = 1,
) -> list[ConformityResult]:
    """Score every node for every alpha.

    Each node's shells and shell means are computed once and reused for all
    alphas.  With ``workers > 1`` node ranges are scored in separate
    processes; the output does not depend on the worker count.
    """
    alphas = [_check_alpha(a) for a in alphas]
    if not alphas:
        raise ParameterError("at least one alpha is required")
    if workers < 1:
        raise ParameterError(f"workers must be >= 1, got {workers}")
    fractions = _fractions(g, view)
    n = g.n_nodes
    if workers == 1 or n < 2:
        rows = _score_range((g, view, fractions, alphas, 0, n))
    else:
        step = math.ceil(n / workers)
        chunks = [(g, view, fractions, alphas, lo, min(lo + step, n)) for lo in range(0, n, step)]
        rows = []
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for part in pool.map(_score_range, chunks):
                rows.extend(part)

    results = []
    for k, a in enumerate(alphas):
        psi = tuple(r[k] for r in rows)
        results.append(
            ConformityResult(
                alpha=a,
                attributes=view.attribute_names,
                psi=psi,
                network_psi=network_conformity(psi),
                undefined_nodes=frozenset(u for u, p in enumerate(psi) if p is None),
            )
        )
    return results
