"""Seeded constructors for diagnostic attributed graphs."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from importlib import resources
from itertools import combinations

from .baselines import newman_assortativity
from .engine import compose_labels
from .errors import GenerationError, ParameterError
from .graph import AttributedGraph, EdgeList, build_graph, distance_shells, parse_edge_rows

QUINTET_NODES_PER_COLOR = 20
QUINTET_EDGES = 160
QUINTET_R_TOL = 0.05
MAX_TRIES = 10_000

# Share of the edge budget placed by the planted subgroup structure.
QUINTET_PLANTED = {"a": 0.0, "b": 0.25, "c": 0.5, "d": 0.75, "e": 1.0}


@dataclass(frozen=True)
class GeneratorSpec:
    kind: str
    variant: str | None = None
    seed: int = 0
    params: dict = field(default_factory=dict)

    def build(self) -> AttributedGraph:
        if self.kind == "quintet":
            return generate_quintet(self.variant or "a", self.seed, **self.params)
        if self.kind == "complete-distinct":
            return generate_complete_distinct(**self.params)
        if self.kind == "concentric-rings":
            return generate_concentric_rings(**self.params)
        if self.kind == "karate":
            return karate_fixture()
        raise ParameterError(f"unknown generator kind {self.kind!r}")


def is_connected(g: AttributedGraph) -> bool:
    if g.n_nodes == 0:
        return True
    return distance_shells(g, 0).reachable() == g.n_nodes - 1


def _quintet_nodes():
    nodes = {}
    for color, prefix in (("red", "r"), ("green", "g")):
        for i in range(QUINTET_NODES_PER_COLOR):
            sub = "homo" if i < QUINTET_NODES_PER_COLOR // 2 else "hetero"
            nodes[f"{prefix}{i:02d}"] = {"color": color, "subgroup": sub}
    return nodes


def _quintet_edges(rng: random.Random, nodes: dict, planted: float) -> set[tuple[str, str]]:
    def members(color, sub):
        return [x for x, r in nodes.items() if r["color"] == color and r["subgroup"] == sub]

    edges: set[tuple[str, str]] = set()

    def add(a, b):
        edges.add((a, b) if a < b else (b, a))

    n_across = round(QUINTET_EDGES / 2 * planted)
    n_within = round(QUINTET_EDGES / 4 * planted)  # per color
    if n_within:
        for color in ("red", "green"):
            homo, hetero = members(color, "homo"), members(color, "hetero")
            # one bridge ties the homophilous block to the rest of the graph
            add(rng.choice(homo), rng.choice(hetero))
            for a, b in rng.sample(list(combinations(homo, 2)), n_within - 1):
                add(a, b)
    if n_across:
        pairs = [(a, b) for a in members("red", "hetero") for b in members("green", "hetero")]
        for a, b in rng.sample(pairs, n_across):
            add(a, b)

    free = [p for p in combinations(sorted(nodes), 2) if p not in edges]
    for a, b in rng.sample(free, QUINTET_EDGES - len(edges)):
        add(a, b)
    return edges


def generate_quintet(
    variant: str,
    seed: int = 0,
    r_tol: float = QUINTET_R_TOL,
    max_tries: int = MAX_TRIES,
) -> AttributedGraph:
    """Two-color graph with 40 nodes, 160 edges and near-zero assortativity.

    Each color is split into a homophilous and a heterophilous subgroup of
    10 nodes.  A variant-dependent share of the edges is planted: within
    the homophilous subgroups and across the heterophilous ones, in equal
    amounts, so the global mixing stays neutral.  The rest is wired
    uniformly at random.  Variant ``a`` is fully random, ``e`` fully
    planted.  Draws are repeated until the graph is connected and
    ``|r| <= r_tol``.
    """
    if variant not in QUINTET_PLANTED:
        raise ParameterError(f"quintet variant must be one of {sorted(QUINTET_PLANTED)}, got {variant!r}")
    if max_tries < 1:
        raise ParameterError("max_tries must be >= 1")
    rng = random.Random(f"quintet-{variant}-{seed}")
    nodes = _quintet_nodes()
    best = None
    for _ in range(max_tries):
        edges = _quintet_edges(rng, nodes, QUINTET_PLANTED[variant])
        g = build_graph(EdgeList(tuple(sorted(edges))), nodes, ("color", "subgroup"))
        if not is_connected(g):
            continue
        r = newman_assortativity(g, compose_labels(g, ["color"])).r
        if best is None or abs(r) < abs(best):
            best = r
        if abs(r) <= r_tol:
            return g
    achieved = "n/a (no connected draw)" if best is None else f"{abs(best):.4f}"
    raise GenerationError(
        f"quintet variant {variant!r} seed {seed}: no draw with |r| <= {r_tol} "
        f"after {max_tries} tries; best |r| = {achieved}",
        achieved_r=best,
    )


def generate_complete_distinct(n: int) -> AttributedGraph:
    """Complete graph on ``n`` nodes, every node in its own category."""
    if not isinstance(n, int) or n < 2:
        raise ParameterError(f"complete-distinct needs n >= 2, got {n!r}")
    width = len(str(n - 1))
    ids = [f"n{i:0{width}d}" for i in range(n)]
    attrs = {x: {"label": f"c{i:0{width}d}"} for i, x in enumerate(ids)}
    return build_graph(EdgeList(tuple(combinations(ids, 2))), attrs, ("label",))


def generate_concentric_rings(
    core_size: int,
    ring_sizes,
    core_label: str = "core",
    outer_label: str = "outer",
) -> AttributedGraph:
    """Clique core surrounded by tree-like rings.

    Node ``j`` of ring ``k`` hangs off one node of the previous layer,
    assigned from the end of that layer backwards, so the first core nodes
    (starting with ``c000``) keep an all-core neighborhood when the first
    ring is smaller than the core.  Rings alternate labels: odd rings carry
    ``outer_label``, even rings ``core_label``, so every tree edge joins
    differently labeled nodes unless the two labels coincide.
    """
    ring_sizes = list(ring_sizes)
    if not ring_sizes:
        raise ParameterError("at least one ring is required")
    if core_size < 1 or any(s < 1 for s in ring_sizes):
        raise ParameterError("core and ring sizes must be >= 1")
    core = [f"c{i:03d}" for i in range(core_size)]
    attrs = {x: {"label": core_label, "layer": "0"} for x in core}
    edges = list(combinations(core, 2))
    prev = core
    for k, size in enumerate(ring_sizes, start=1):
        ring = [f"r{k}_{j:03d}" for j in range(size)]
        for j, x in enumerate(ring):
            parent = prev[len(prev) - 1 - (j % len(prev))]
            edges.append((parent, x))
            attrs[x] = {"label": outer_label if k % 2 else core_label, "layer": str(k)}
        prev = ring
    edges = [(a, b) if a < b else (b, a) for a, b in edges]
    return build_graph(EdgeList(tuple(sorted(edges))), attrs, ("label", "layer"))


def karate_fixture() -> AttributedGraph:
    """Zachary's karate club with the ``faction`` attribute.

    Nodes are numbered 0-33; the faction is the club each member was
    recorded with (``"Mr. Hi"`` or ``"Officer"``).
    """
    data = resources.files("conformity") / "data"
    rows = (data / "karate_edges.csv").read_text().splitlines()
    edges = parse_edge_rows(rows, delimiter=",")
    attrs = {}
    for line in (data / "karate_attrs.csv").read_text().splitlines()[1:]:
        node, faction = line.split(",", 1)
        attrs[node] = {"faction": faction}
    return build_graph(edges, attrs, ("faction",))
