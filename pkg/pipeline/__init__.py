from .spec import (
    AnalysisOptions,
    AnalysisSpec,
    ResolvedSpec,
    preset_spec,
    load_spec,
    resolve,
    echo
)
from .report import GraphSummary, NumericsSummary, VerdictSummary, Report, summarize_graph
from .runner import (
    analyze,
    classify4,
    compare,
    commutant,
    fourier,
    equivalence,
    load_matrix,
    run_batch
)

__all__ = [
    "AnalysisOptions",
    "AnalysisSpec",
    "ResolvedSpec",
    "preset_spec",
    "load_spec",
    "resolve",
    "echo",
    "GraphSummary",
    "NumericsSummary",
    "VerdictSummary",
    "Report",
    "summarize_graph",
    "analyze",
    "classify4",
    "compare",
    "commutant",
    "fourier",
    "equivalence",
    "load_matrix",
    "run_batch"
]
