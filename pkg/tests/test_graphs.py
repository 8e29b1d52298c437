import json
import random
from collections import Counter

import pytest

import config
from config.exceptions import BoundExceeded, NotLocallyFreeError
from groups import AbelianGroup
from graphs import (
    dual_graph,
    emit_dot,
    graph_hash,
    graphs_isomorphic,
    local_freeness,
    predicted_commutant_dims,
    principal_graph,
    truncated_graph,
)
from quotients import build_G
from tests import update_config
from tests.conftest import make_twist


@pytest.fixture
def graph_16_7(twist_16_7):
    return principal_graph(build_G(twist_16_7))


def test_16_7_principal_graph(graph_16_7):
    assert len(graph_16_7.odd) == 16
    assert len(graph_16_7.even) == 76
    dimensions = Counter(graph_16_7.dimensions.values())
    assert dimensions == {1: 64, 4: 12}
    assert all(graph_16_7.degree_sum(label) == 16 for label in graph_16_7.odd)
    assert graph_16_7.is_connected()
    assert not graph_16_7.truncated


def test_16_7_clusters_attach_to_one_odd_vertex(graph_16_7):
    # a cluster of dimension 1 vertices comes from a single H n K
    for cluster in graph_16_7.clusters:
        if cluster.dimension != 1:
            continue
        owners = {odd for (odd, even) in graph_16_7.edges if even in cluster.labels()}
        assert len(owners) == 1


def test_16_7_predicted_commutants(graph_16_7):
    assert predicted_commutant_dims(graph_16_7, 0) == 1
    assert predicted_commutant_dims(graph_16_7, 1) == 7
    with pytest.raises(ValueError):
        predicted_commutant_dims(graph_16_7, 2)


def test_noncommutative_principal_graph(s3_twist):
    graph = principal_graph(build_G(s3_twist))
    assert len(graph.odd) == 16
    assert len(graph.even) == 72
    assert Counter(graph.dimensions.values()) == {1: 32, 2: 40}
    assert all(len(graph.neighbours(label)) == 7 for label in graph.odd)
    assert all(graph.degree_sum(label) == 12 for label in graph.odd)


@pytest.mark.parametrize("delta, l", [("1/8", 2), ("1/3", 3), ("1/24", 6)])
def test_index4_graphs(delta, l, index4):
    G = build_G(index4(delta))
    principal, dual = principal_graph(G), dual_graph(G)
    for graph in (principal, dual):
        assert len(graph.odd) == l
        assert all(graph.degree_sum(label) == 4 for label in graph.odd)
        assert predicted_commutant_dims(graph, 1) == 3


@pytest.mark.parametrize("n", [2, 3, 5])
def test_fourier_graph(n):
    G = build_G(make_twist(AbelianGroup([n]), AbelianGroup([1]), ["0"] * n))
    graph = principal_graph(G)
    assert len(graph.odd) == 1
    assert len(graph.even) == n
    assert predicted_commutant_dims(graph, 0) == 1
    assert predicted_commutant_dims(graph, 1) == n


def test_fourier6_dual_graph(fourier6):
    graph = dual_graph(build_G(fourier6("0", "1/3")))
    assert len(graph.odd) == 3
    assert graph.clusters[0].size == 3


def test_dot_is_deterministic(twist_16_7, graph_16_7):
    text = emit_dot(graph_16_7)
    again = emit_dot(principal_graph(build_G(twist_16_7)))
    assert text == again
    nodes = [line for line in text.splitlines() if "shape=circle" in line]
    assert len(nodes) == 92
    assert text.startswith("digraph principal {")


def test_graph_json(graph_16_7):
    document = json.loads(graph_16_7.to_json())
    assert document["kind"] == "principal"
    assert len(document["odd"]) == 16
    assert len(document["even"]) == 76
    assert document["distinguished"] == graph_16_7.distinguished


def test_hash_and_isomorphism(index4):
    first = principal_graph(build_G(index4("1/8")))
    second = principal_graph(build_G(index4("3/8")))
    other = principal_graph(build_G(index4("1/12")))
    assert graph_hash(first) == graph_hash(second)
    assert graphs_isomorphic(first, second)
    assert not graphs_isomorphic(first, other)


def test_truncated_graph(index4):
    G = build_G(index4("t1"))
    graph = truncated_graph(G, radius=3)
    assert graph.truncated
    assert graph.dashed
    assert len(graph.odd) == 7
    assert all(graph.degree_sum(label) == 4 for label in graph.odd)
    assert "dashed" in emit_dot(graph)


def test_truncated_graph_of_finite_group_is_complete(index4):
    graph = truncated_graph(build_G(index4("1/8")), radius=1)
    assert not graph.truncated
    assert len(graph.odd) == 2


def test_local_freeness():
    G = build_G(make_twist(AbelianGroup([2]), AbelianGroup([2]), ["0"] * 4))
    assert local_freeness(G)
    G = build_G(make_twist(AbelianGroup([2]), AbelianGroup([2]), ["0", "0", "0", "1/2"]))
    assert G.order == 4
    assert local_freeness(G)


def _random_phase(rng: random.Random) -> str:
    if rng.random() < 0.5:
        return "0"
    denominator = rng.choice([2, 3, 4, 6])
    return f"{rng.randrange(denominator)}/{denominator}"


def test_degree_sum_rule_on_random_twists():
    rng = random.Random(11)
    groups = [AbelianGroup([2]), AbelianGroup([3]), AbelianGroup([4]), AbelianGroup([2, 2])]
    original = config.get_group_config()
    update_config({"GROUP_CONFIGURATION": {"max_group_order": 2000}})
    checked = 0
    try:
        for _ in range(2000):
            if checked == 50:
                break
            H, K = rng.choice(groups), rng.choice(groups)
            phases = [_random_phase(rng) for _ in range(H.order * K.order)]
            try:
                G = build_G(make_twist(H, K, phases))
                if G.order > 2000:
                    continue
                graph = principal_graph(G)
            except (BoundExceeded, NotLocallyFreeError):
                continue
            assert all(graph.degree_sum(label) == H.order * K.order for label in graph.odd)
            checked += 1
    finally:
        update_config({"GROUP_CONFIGURATION": original})
    assert checked == 50
