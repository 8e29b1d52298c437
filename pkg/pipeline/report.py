import json
import os
from typing import Any, Dict, List, Optional, Union

from pydantic import BaseModel

from config import config
from graphs import BipartiteGraph, emit_dot, graph_hash, predicted_commutant_dims

logger = config.get_logger(__name__)

Order = Union[int, str]


class GraphSummary(BaseModel):
    kind: str
    odd: int
    even: int
    truncated: bool = False
    connected: bool = True
    hash: str
    degree_sums: List[int] = []
    predicted_level0: Optional[int] = None
    predicted_level1: Optional[int] = None
    dot_path: Optional[str] = None


class NumericsSummary(BaseModel):
    level: int
    dimension: int
    abelian: Optional[bool] = None
    predicted: Optional[int] = None
    matches_prediction: Optional[bool] = None
    orientation: str


class VerdictSummary(BaseModel):
    kind: str
    reasons: List[str] = []
    evidence: Dict[str, str] = {}


class Report(BaseModel):
    """
    Result of one pipeline command. Serialization through to_json is
    deterministic: keys are sorted and phases are canonical strings.
    """
    command: str
    spec: Optional[Dict[str, Any]] = None
    specs: List[Dict[str, Any]] = []
    hadamard: Optional[Dict[str, Any]] = None
    twist: Optional[List[str]] = None
    N: Optional[str] = None
    Ntilde: Optional[str] = None
    S: Optional[str] = None
    free_rank: Optional[int] = None
    order_N: Optional[Order] = None
    order_G: Optional[Order] = None
    order_Gtilde: Optional[Order] = None
    order_S: Optional[int] = None
    finite: Optional[bool] = None
    group: Optional[str] = None
    lambda_table: Dict[str, str] = {}
    cocycle: Optional[str] = None
    assumptions: Dict[str, bool] = {}
    graphs: Dict[str, GraphSummary] = {}
    numerics: Optional[NumericsSummary] = None
    verdict: Optional[VerdictSummary] = None
    classification: Dict[str, Any] = {}
    annotations: List[str] = []
    warnings: List[str] = []

    def warn(self, message: str):
        logger.warning(message)
        self.warnings.append(message)

    def to_json(self) -> str:
        return json.dumps(self.model_dump(mode="json"), sort_keys=True, indent=2)


def summarize_graph(graph: BipartiteGraph, dot_dir: Optional[str] = None, stem: str = "graph") -> GraphSummary:
    """
        Counts, hash and predicted commutant dimensions of a graph; writes
        the DOT file when a directory is given
    """
    summary = GraphSummary(
        kind=graph.kind,
        odd=len(graph.odd),
        even=len(graph.even),
        truncated=graph.truncated,
        connected=graph.is_connected(),
        hash=graph_hash(graph),
        degree_sums=sorted({graph.degree_sum(v) for v in graph.odd}),
    )
    if not graph.truncated:
        summary.predicted_level0 = predicted_commutant_dims(graph, 0)
        summary.predicted_level1 = predicted_commutant_dims(graph, 1)
    if dot_dir:
        os.makedirs(dot_dir, exist_ok=True)
        path = os.path.join(dot_dir, f"{stem}.{graph.kind}.dot")
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(emit_dot(graph))
        summary.dot_path = path
        logger.info(f"Wrote {path}")
    return summary
