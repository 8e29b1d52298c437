import json
from dataclasses import dataclass, field
from typing import Dict, List, Set, Tuple

import networkx as nx
import numpy as np

from config import config

logger = config.get_logger(__name__)


@dataclass(frozen=True)
class Cluster:
    """Even vertices coming from one double coset D of the acting group"""
    index: int
    size: int  # number of vertices, |H| / p
    dimension: int  # per vertex, p = |D| / |H|
    coset_size: int

    def labels(self) -> List[str]:
        return [f"e{self.index:03d}.{j}" for j in range(self.size)]


@dataclass
class BipartiteGraph:
    """
    Principal or dual principal graph. Odd vertices are double cosets
    labelled o<n>, even vertices come in clusters labelled e<cluster>.<j>;
    cluster 0 is the trivial double coset and its first vertex is the
    distinguished one.
    """
    kind: str
    odd: List[str] = field(default_factory=list)
    clusters: List[Cluster] = field(default_factory=list)
    edges: Dict[Tuple[str, str], int] = field(default_factory=dict)
    dashed: Set[str] = field(default_factory=set)
    truncated: bool = False

    @property
    def distinguished(self) -> str:
        return self.clusters[0].labels()[0] if self.clusters else ""

    @property
    def even(self) -> List[str]:
        return [label for cluster in self.clusters for label in cluster.labels()]

    @property
    def dimensions(self) -> Dict[str, int]:
        return {label: cluster.dimension for cluster in self.clusters for label in cluster.labels()}

    def add_edge(self, odd: str, even: str, multiplicity: int = 1):
        key = (odd, even)
        self.edges[key] = self.edges.get(key, 0) + multiplicity

    def neighbours(self, vertex: str) -> Dict[str, int]:
        result = {}
        for (odd, even), multiplicity in self.edges.items():
            if odd == vertex:
                result[even] = multiplicity
            elif even == vertex:
                result[odd] = multiplicity
        return result

    def degree_sum(self, odd: str) -> int:
        """Sum of multiplicity times dimension over the even neighbours"""
        dims = self.dimensions
        return sum(m * dims[even] for (o, even), m in self.edges.items() if o == odd)

    def adjacency(self) -> Tuple[np.ndarray, List[str], List[str]]:
        """Even by odd multiplicity matrix with its row and column labels"""
        even, odd = self.even, self.odd
        row = {label: i for i, label in enumerate(even)}
        col = {label: j for j, label in enumerate(odd)}
        matrix = np.zeros((len(even), len(odd)), dtype=np.int64)
        for (o, e), multiplicity in self.edges.items():
            matrix[row[e], col[o]] += multiplicity
        return matrix, even, odd

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        for label in self.odd:
            graph.add_node(label, parity="odd", dimension=1, color="odd")
        for label, dim in self.dimensions.items():
            graph.add_node(label, parity="even", dimension=dim, color=f"even:{dim}")
        if self.clusters:
            graph.nodes[self.distinguished]["color"] += ":*"
        for (odd, even), multiplicity in self.edges.items():
            graph.add_edge(odd, even, multiplicity=str(multiplicity))
        return graph

    def is_connected(self) -> bool:
        return nx.is_connected(self.to_networkx())

    def to_json(self) -> str:
        """Vertices with dimensions, edge list with multiplicities; keys sorted"""
        dims = self.dimensions
        document = {
            "kind": self.kind,
            "truncated": self.truncated,
            "distinguished": self.distinguished,
            "odd": [{"label": label, "dashed": label in self.dashed} for label in sorted(self.odd)],
            "even": [{"label": label, "dimension": dims[label], "dashed": label in self.dashed}
                     for label in sorted(dims)],
            "edges": [{"odd": o, "even": e, "multiplicity": m} for (o, e), m in sorted(self.edges.items())],
        }
        return json.dumps(document, sort_keys=True)

    def __str__(self) -> str:
        return (f"{self.kind} graph: {len(self.odd)} odd, {len(self.even)} even vertices "
                f"in {len(self.clusters)} clusters")


def predicted_commutant_dims(graph: BipartiteGraph, level: int) -> int:
    """
        Loops at the distinguished vertex: length 2 for level 0, length 4 for
        level 1
    """
    if level not in (0, 1):
        raise ValueError(f"Loop counting is available for levels 0 and 1, got {level}")
    matrix, even, _ = graph.adjacency()
    star = even.index(graph.distinguished)
    if level == 0:
        return int((matrix[star] ** 2).sum())
    paths = matrix @ matrix[star]
    return int((paths ** 2).sum())


def emit_dot(graph: BipartiteGraph) -> str:
    """
        Deterministic DOT text: odd vertices filled, even vertices open with
        their dimension, parallel edges for multiplicities, the distinguished
        vertex starred and truncation boundaries dashed
    """
    dims = graph.dimensions
    lines = [f"digraph {graph.kind} {{", "  rankdir=LR;"]
    for label in sorted(graph.odd + graph.even):
        if label in dims:
            attributes = [f'label="{label}{"*" if label == graph.distinguished else ""}"',
                          "shape=circle", f"dim={dims[label]}"]
            if label in graph.dashed:
                attributes.append("style=dashed")
        else:
            style = "filled,dashed" if label in graph.dashed else "filled"
            attributes = [f'label="{label}"', "shape=circle", f'style="{style}"']
        lines.append(f'  "{label}" [{", ".join(attributes)}];')
    for (odd, even), multiplicity in sorted(graph.edges.items()):
        lines.extend([f'  "{odd}" -> "{even}";'] * multiplicity)
    lines.append("}")
    return "\n".join(lines) + "\n"


def graph_hash(graph: BipartiteGraph) -> str:
    """Label independent hash; dimensions and multiplicities are colours"""
    return nx.weisfeiler_lehman_graph_hash(graph.to_networkx(), node_attr="color", edge_attr="multiplicity")


def graphs_isomorphic(first: BipartiteGraph, second: BipartiteGraph) -> bool:
    if len(first.odd) != len(second.odd) or len(first.even) != len(second.even):
        return False
    if graph_hash(first) != graph_hash(second):
        return False
    return nx.is_isomorphic(first.to_networkx(), second.to_networkx(),
                            node_match=lambda a, b: a["color"] == b["color"],
                            edge_match=lambda a, b: a["multiplicity"] == b["multiplicity"])
