import asyncio
import re
from collections import Counter
from typing import List, Optional, Union

from config import config
from config.exceptions import NotLocallyFreeError, SpecError
from graphs import dual_graph, predicted_commutant_dims, principal_graph, truncated_graph
from groups import parse_group
from hadamard import (
    HadamardMatrix,
    Twist,
    fourier_conjugate,
    fourier_matrix,
    hadamard_equivalent,
    is_hadamard,
    load_hadamard_file,
)
from numerics import basis_is_abelian, commutant_basis, validated_orientation
from phases import INFINITE, Phase, parse_phase
from quotients import (
    build_G,
    build_Gtilde,
    char_invariant,
    cyclic_cocycle_test,
    identify_group,
    subfactor_verdict,
    verdict_assumptions,
)
from words import CommGroupData, commutator_group
from .report import NumericsSummary, Report, VerdictSummary, summarize_graph
from .spec import AnalysisSpec, echo, load_spec, resolve

logger = config.get_logger(__name__)

SpecSource = Union[AnalysisSpec, str, dict]
MatrixSource = Union[HadamardMatrix, AnalysisSpec, str, dict]


def _as_spec(source: SpecSource) -> AnalysisSpec:
    return source if isinstance(source, AnalysisSpec) else load_spec(source)


def _stem(spec: AnalysisSpec) -> str:
    return re.sub(r"[^A-Za-z0-9_.-]+", "_", spec.name or spec.preset or "analysis")


def _hadamard_summary(matrix: HadamardMatrix) -> dict:
    return {"name": matrix.name, "n": matrix.n, "rational": matrix.is_rational, "is_hadamard": is_hadamard(matrix)}


def _fully_irrational(twist: Twist) -> bool:
    """Every nontrivial standard-form entry carries a symbol no other entry uses"""
    array = twist.array.standard_form()
    entries = [array[h, k] for h in range(1, twist.H.order) for k in range(1, twist.K.order)]
    usage = Counter(s for entry in entries for s in entry.symbols)
    return bool(entries) and all(any(usage[s] == 1 for s in entry.symbols) for entry in entries)


def _flag_structure(report: Report, twist: Twist, data: CommGroupData):
    """Annotations and discrepancy flags derived from the commutator data"""
    H, K = twist.H, twist.K
    orders = sorted((H.order, K.order))
    if _fully_irrational(twist):
        expected = (H.order - 1) * (K.order - 1)
        report.annotations.append(f"fully irrational twist: expected free rank {expected}")
        if data.n_structure.free_rank != expected:
            report.warn(f"N has free rank {data.n_structure.free_rank}, expected {expected} "
                        f"for a fully irrational twist")
    if orders == [2, 3] and not data.finite:
        report.annotations.append("G_{2,3,6}")
        if data.n_structure.free_rank == 2:
            report.warn("N has free rank 2; a description of N as Z2^2 for this twist means free rank 2")
    if orders == [3, 3] and data.finite and data.n_structure.order == 3:
        report.warn("|G| = 27 and |Gtilde| = 81 by |G| = |H||K||N|; "
                    "the values 81 and 243 sometimes given for this twist disagree")


def _numerics(matrix: HadamardMatrix, level: int, predicted: Optional[int]) -> NumericsSummary:
    basis = commutant_basis(matrix, level)
    summary = NumericsSummary(level=level, dimension=len(basis), orientation=validated_orientation())
    if level >= 1:
        summary.abelian = basis_is_abelian(basis)
    if predicted is not None:
        summary.predicted = predicted
        summary.matches_prediction = predicted == len(basis)
    return summary


def analyze(source: SpecSource, emit_dot: Optional[str] = None, radius: Optional[int] = None,
            level: Optional[int] = None) -> Report:
    """
        Run the whole pipeline on one twist: matrix checks, commutator group,
        G and Gtilde, characteristic data, graphs and optional numerics
        Args:
            source: spec, spec file, JSON document or preset name
            emit_dot: directory receiving one DOT file per graph
            radius: truncation radius, overrides the spec option
            level: numerics level, overrides the spec option
        Returns:
            Report: deterministic summary of every stage
    """
    spec = _as_spec(source)
    resolved = resolve(spec)
    twist = resolved.twist
    radius = radius if radius is not None else spec.options.radius
    level = level if level is not None else spec.options.level

    report = Report(command="analyze", spec=echo(spec), twist=twist.to_flat(),
                    annotations=list(resolved.annotations))
    if resolved.matrix is not None:
        report.hadamard = _hadamard_summary(resolved.matrix)

    data = commutator_group(twist)
    report.N = str(data.n_structure)
    report.Ntilde = str(data.ntilde_structure)
    report.S = str(data.s_structure) if data.s_structure is not None else None
    report.free_rank = data.n_structure.free_rank
    report.order_N = data.n_structure.order
    report.assumptions = verdict_assumptions(twist, data)
    _flag_structure(report, twist, data)

    G = build_G(twist, data)
    report.order_G = G.order
    report.finite = G.finite
    stem = _stem(spec)
    if not G.finite:
        report.annotations.append("infinite depth")
        report.graphs["principal"] = summarize_graph(truncated_graph(G, radius), emit_dot, stem)
        return report

    descriptor = identify_group(G)
    report.group = str(descriptor)
    if data.ntilde_finite:
        extended = build_Gtilde(twist, data)
        report.order_Gtilde = extended.order
        report.order_S = extended.s_order
        report.lambda_table = char_invariant(extended).to_strings()
        report.cocycle = str(cyclic_cocycle_test(extended, G))
    else:
        report.annotations.append("inner part is infinite, Gtilde not tabulated")
    if data.n_structure.order == 1:
        twisted = "twisted " if (report.order_S or 1) > 1 else ""
        report.annotations.append(f"depth two: {twisted}crossed product by {descriptor}")

    try:
        for build in (principal_graph, dual_graph):
            graph = build(G)
            report.graphs[graph.kind] = summarize_graph(graph, emit_dot, stem)
    except NotLocallyFreeError as e:
        report.warn(str(e))

    if level is not None:
        if resolved.matrix is None:
            report.warn("numerics skipped: no single Hadamard matrix for this spec")
        else:
            principal = report.graphs.get("principal")
            predicted = getattr(principal, f"predicted_level{level}", None) if principal else None
            report.numerics = _numerics(resolved.matrix, level, predicted)
            if report.numerics.matches_prediction is False:
                report.warn(f"level {level} commutant has dimension {report.numerics.dimension}, "
                            f"the principal graph predicts {predicted}")
    return report


def _delta_power_sign(delta: Phase, exponent: int) -> int:
    return 1 if (delta ** exponent).is_identity else -1


def classify4(delta: Union[str, Phase], emit_dot: Optional[str] = None, radius: Optional[int] = None) -> Report:
    """
        Index-4 family (alpha, beta, gamma, delta) normalized to (1, 1, 1, delta)
        Args:
            delta: phase literal
        Returns:
            Report: the analysis of the index4 preset plus the classification
            (l, dihedral group, cocycle branch, graph type, crossed product)
    """
    phase = parse_phase(delta)
    literal = str(phase) if not isinstance(delta, str) else delta.strip()
    report = analyze(f"index4:delta={literal}", emit_dot=emit_dot, radius=radius)
    report.command = "classify4"
    l = (phase ** 4).order()
    classification = {"delta": str(phase), "l": l}
    if l == INFINITE:
        classification.update(group="D_inf", graph="D_∞", depth="infinite")
    else:
        sign = _delta_power_sign(phase, 2 * l)
        classification.update(
            group=f"Dihedral({2 * l})",
            order=4 * l,
            delta_power_2l=sign,
            cocycle="nontrivial" if sign == -1 else "trivial",
            graph=f"D^{{(1)}}_{{{2 * l + 1}}}",
        )
        if l == 1:
            classification["crossed_product"] = "R ⊂ R⋊Z4" if sign == -1 else "R ⊂ R⋊Z2^2"
        witnessed = report.cocycle is not None and report.cocycle.startswith("NontrivialWitness")
        if witnessed != (sign == -1):
            report.warn(f"cocycle test gave {report.cocycle} while delta^{2 * l} = {sign}")
        if report.order_N != l:
            report.warn(f"N = {report.N}, expected a cyclic group of order {l}")
    report.classification = classification
    logger.info(f"Index 4 delta = {phase}: {classification}")
    return report


def compare(first: SpecSource, second: SpecSource, bound: Optional[int] = None) -> Report:
    """
        Verdict on whether two twists give isomorphic subfactors
    """
    specs = [_as_spec(first), _as_spec(second)]
    twists = [resolve(s).twist for s in specs]
    bound = bound or specs[0].options.automorphism_bound
    verdict = subfactor_verdict(twists[0], twists[1], bound)
    report = Report(command="compare", specs=[echo(s) for s in specs])
    report.verdict = VerdictSummary(kind=verdict.kind.value, reasons=verdict.reasons, evidence=verdict.evidence)
    return report


def load_matrix(source: MatrixSource) -> HadamardMatrix:
    """
        A Hadamard matrix from a matrix file (.txt), a spec or a preset
    """
    if isinstance(source, HadamardMatrix):
        return source
    if isinstance(source, str) and source.endswith(".txt"):
        return load_hadamard_file(source)
    matrix = resolve(_as_spec(source)).matrix
    if matrix is None:
        raise SpecError("Spec with a non-abelian factor has no single Hadamard matrix")
    return matrix


def commutant(source: MatrixSource, level: int = 1) -> Report:
    """
        Relative commutant dimension at a level; for twist specs the
        principal graph prediction is cross-checked
    """
    matrix = load_matrix(source)
    report = Report(command="commutant", hadamard=_hadamard_summary(matrix))
    predicted = None
    if not isinstance(source, HadamardMatrix) and not (isinstance(source, str) and source.endswith(".txt")):
        spec = _as_spec(source)
        report.spec = echo(spec)
        G = build_G(resolve(spec).twist)
        if G.finite and level in (0, 1):
            try:
                predicted = predicted_commutant_dims(principal_graph(G), level)
            except NotLocallyFreeError as e:
                report.warn(str(e))
    report.numerics = _numerics(matrix, level, predicted)
    if report.numerics.matches_prediction is False:
        report.warn(f"level {level} commutant has dimension {report.numerics.dimension}, "
                    f"the principal graph predicts {predicted}")
    return report


def fourier(group: str, conjugate: bool = False) -> Report:
    """Fourier matrix of an abelian group, or its conjugate transpose"""
    G = parse_group(group)
    matrix = fourier_conjugate(G) if conjugate else fourier_matrix(G)
    report = Report(command="fourier", hadamard=_hadamard_summary(matrix))
    report.hadamard["entries"] = matrix.to_strings()
    return report


def equivalence(first: MatrixSource, second: MatrixSource, bound: Optional[int] = None) -> Report:
    """Hadamard equivalence of two matrices under permutations and phases"""
    matrices = [load_matrix(first), load_matrix(second)]
    report = Report(command="equiv", hadamard=_hadamard_summary(matrices[0]))
    report.classification = {
        "first": matrices[0].name,
        "second": matrices[1].name,
        "equivalent": hadamard_equivalent(matrices[0], matrices[1], bound),
    }
    return report


async def run_batch(sources: List[SpecSource], emit_dot: Optional[str] = None,
                    radius: Optional[int] = None, level: Optional[int] = None) -> List[Report]:
    """
        Analyze several specs concurrently, at most batch_concurrency at a
        time; reports come back in input order
    """
    semaphore = asyncio.Semaphore(config.get_config()["batch_concurrency"])

    async def run(source: SpecSource) -> Report:
        async with semaphore:
            return await asyncio.to_thread(analyze, source, emit_dot, radius, level)

    return list(await asyncio.gather(*(run(s) for s in sources)))

