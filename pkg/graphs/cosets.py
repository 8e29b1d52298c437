from typing import Dict, Hashable, List, Sequence, Tuple

import numpy as np

from config import config
from config.exceptions import InternalInconsistency, NonIntegerCluster, NotLocallyFreeError
from phases import PhaseArray
from quotients.quotient_group import QuotientGroup
from .bipartite import BipartiteGraph, Cluster

logger = config.get_logger(__name__)


def local_freeness(G: QuotientGroup) -> bool:
    """
        True iff h g k = g forces h = k = 1, checked over all triples
    """
    G._require_finite()
    table = G.table
    everything = np.arange(G.order)
    for h in G.H.elements:
        left = table[G.h_element(h)]
        for k in G.K.elements:
            if h == 0 and k == 0:
                continue
            if (table[left, G.k_element(k)] == everything).any():
                logger.debug(f"{G.describe()} is not locally free at h={h}, k={k}")
                return False
    return True


def _double_coset(G: QuotientGroup, g: Hashable, side: Sequence[Hashable]) -> frozenset:
    if G.finite:
        index = np.asarray(side, dtype=np.int64)
        table = G.table
        return frozenset(int(x) for x in np.unique(table[table[index, g][:, None], index[None, :]]))
    return frozenset(G.mul(G.mul(a, g), b) for a in side for b in side)


class _GraphBuilder:
    """
    Shared recipe: every odd vertex n and every x of the other group give
    the double coset D = A(nx)A of the acting group A. D is a cluster of
    |A|/p even vertices of dimension p = |D|/|A|, and the odd vertex gets
    one edge to each of them.
    """

    def __init__(self, G: QuotientGroup, kind: str, acting: List[Hashable], other: List[Hashable]):
        self.G = G
        self.acting = acting
        self.other = other
        self.graph = BipartiteGraph(kind)
        self.cosets: Dict[frozenset, Cluster] = {}
        self.logger = config.get_logger(type(self).__name__)
        self._cluster(_double_coset(G, G.identity, acting))

    def _cluster(self, coset: frozenset) -> Cluster:
        cluster = self.cosets.get(coset)
        if cluster is not None:
            return cluster
        width = len(self.acting)
        if len(coset) % width or width % (len(coset) // width):
            raise NonIntegerCluster(f"Double coset of size {len(coset)} does not split into clusters "
                                    f"over a group of order {width}")
        p = len(coset) // width
        cluster = Cluster(len(self.cosets), width // p, p, len(coset))
        self.cosets[coset] = cluster
        self.graph.clusters.append(cluster)
        return cluster

    def add_odd(self, label: str, n: Hashable) -> List[frozenset]:
        self.graph.odd.append(label)
        reached = []
        for x in self.other:
            coset = _double_coset(self.G, self.G.mul(n, x), self.acting)
            if coset in reached:
                raise InternalInconsistency(f"Double cosets of {label} coincide for distinct elements")
            reached.append(coset)
            for vertex in self._cluster(coset).labels():
                self.graph.add_edge(label, vertex)
        return reached

    def check(self, complete: bool):
        expected = len(self.acting) * len(self.other)
        for label in self.graph.odd:
            if self.graph.degree_sum(label) != expected:
                raise InternalInconsistency(f"Degree sum at {label} is {self.graph.degree_sum(label)}, "
                                            f"expected {expected}")
        if complete:
            covered = sum(cluster.coset_size for cluster in self.graph.clusters)
            if covered != self.G.order:
                raise InternalInconsistency(f"Double cosets cover {covered} of {self.G.order} elements")
            if not self.graph.is_connected():
                self.logger.warning(f"{self.graph.kind} graph of {self.G.describe()} is disconnected")
        self.logger.info(str(self.graph))


def _finite_graph(G: QuotientGroup, kind: str) -> BipartiteGraph:
    G._require_finite()
    if not local_freeness(G):
        raise NotLocallyFreeError(f"{G.describe()} is not locally free")
    h_elements = [G.h_element(h) for h in G.H.elements]
    k_elements = [G.k_element(k) for k in G.K.elements]
    if kind == "principal":
        builder = _GraphBuilder(G, kind, h_elements, k_elements)
    else:
        builder = _GraphBuilder(G, kind, k_elements, h_elements)
    for n in range(G.layer.order):
        builder.add_odd(f"o{n:03d}", G.n_element(n))
    builder.check(complete=True)
    return builder.graph


def principal_graph(G: QuotientGroup) -> BipartiteGraph:
    """
        Principal graph from H-K and H-H double cosets
        Args:
            G: finite, locally free quotient group
        Returns:
            BipartiteGraph: odd vertices HnK, one cluster per double coset HgH
    """
    return _finite_graph(G, "principal")


def dual_graph(G: QuotientGroup) -> BipartiteGraph:
    """
        Dual principal graph: the recipe of principal_graph with H and K
        exchanged
    """
    return _finite_graph(G, "dual")


def _ball(G: QuotientGroup, radius: int) -> Dict[PhaseArray, int]:
    generators = set(G.data.n_generators.values())
    generators |= {g.conj() for g in generators}
    generators = sorted(generators, key=lambda a: str(a.to_strings()))
    identity = PhaseArray.ones(G.H.order, G.K.order)
    ball = {identity: 0}
    frontier = [identity]
    for distance in range(1, radius + 1):
        nxt = []
        for x in frontier:
            for g in generators:
                y = (x * g).standard_form()
                if y not in ball:
                    ball[y] = distance
                    nxt.append(y)
        frontier = nxt
    return ball


def truncated_graph(G: QuotientGroup, radius: int = None) -> BipartiteGraph:
    """
        Principal graph of an infinite depth example restricted to the odd
        vertices whose N part lies within word length radius of the identity
        Args:
            G: quotient group with infinite N
            radius: ball radius, defaults to the configured one
        Returns:
            BipartiteGraph: boundary vertices are dashed
    """
    if radius is None:
        radius = config.get_graph_config()["default_radius"]
    if G.finite:
        logger.info(f"{G.describe()} is finite, building the full principal graph")
        return principal_graph(G)
    ball = _ball(G, radius)
    h_elements = [G.h_element(h) for h in G.H.elements]
    k_elements = [G.k_element(k) for k in G.K.elements]
    builder = _GraphBuilder(G, "principal", h_elements, k_elements)
    graph = builder.graph
    graph.truncated = True
    for index, (n, distance) in enumerate(ball.items()):
        label = f"o{index:03d}"
        reached = builder.add_odd(label, G.n_element(n))
        if distance == radius:
            graph.dashed.add(label)
        for coset in reached:
            if any(G.odd_class(x) not in ball for x in coset):
                graph.dashed.update(builder.cosets[coset].labels())
    builder.check(complete=False)
    return graph


def graph_pair(G: QuotientGroup) -> Tuple[BipartiteGraph, BipartiteGraph]:
    return principal_graph(G), dual_graph(G)
