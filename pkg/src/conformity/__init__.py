"""Path-aware node homophily (Conformity) for attributed graphs."""

from .baselines import AssortativityReport, newman_assortativity
from .engine import (
    ConformityResult,
    LabelView,
    all_conformity,
    compose_labels,
    indicator,
    neighbor_label_fraction,
    network_conformity,
    node_conformity,
)
from .errors import ConformityError, DataError, GenerationError, ParameterError, ParseError
from .generators import (
    GeneratorSpec,
    generate_complete_distinct,
    generate_concentric_rings,
    generate_quintet,
    karate_fixture,
)
from .graph import (
    AttributedGraph,
    DistanceShells,
    EdgeList,
    build_graph,
    distance_shells,
    load_attributes,
    load_edge_list,
    load_graph,
)

__version__ = "0.1.0"
