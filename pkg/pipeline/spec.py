import json
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Union

from pydantic import BaseModel, field_validator, model_validator

from config import config
from config.exceptions import SpecError
from groups import AbelianGroup, FinGroup, parse_group
from hadamard import HadamardMatrix, Twist, fourier_conjugate, fourier_matrix, twisted_tensor
from phases import parse_phase

logger = config.get_logger(__name__)

GroupLiteral = Union[str, List[List[int]]]
# The 16-7 preset and its alias
PRESETS_16_7 = ("paper-16-7", "hadamard-16-7")


class AnalysisOptions(BaseModel):
    right_action: Optional[bool] = None  # orientation of the H letters
    radius: Optional[int] = None  # truncation radius for infinite N
    level: Optional[int] = None  # numerics level, skipped when None
    automorphism_bound: Optional[int] = None


class AnalysisSpec(BaseModel):
    """
    Input of the pipeline: group literals and a twist listed row-major over
    H then K (entry i * |K| + j is the phase at (h_i, k_j)), or a preset.
    """
    name: str = ""
    H: Optional[GroupLiteral] = None
    K: Optional[GroupLiteral] = None
    twist: Optional[List[str]] = None
    preset: Optional[str] = None
    options: AnalysisOptions = AnalysisOptions()

    @field_validator("twist", mode="before")
    @classmethod
    def stringify_twist(cls, value):
        if value is None:
            return value
        return [str(v) for v in value]

    @model_validator(mode="after")
    def check_source(self):
        if self.preset is None and (self.H is None or self.K is None or self.twist is None):
            raise ValueError("A spec needs either a preset or all of H, K and twist")
        return self


@dataclass
class ResolvedSpec:
    twist: Twist
    matrix: Optional[HadamardMatrix]
    annotations: List[str] = field(default_factory=list)


def _preset_arguments(text: str) -> Dict[str, str]:
    arguments = {}
    for part in filter(None, (p.strip() for p in text.split(","))):
        key, sep, value = part.partition("=")
        if not sep:
            raise SpecError(f"Preset argument {part!r} must be key=value")
        arguments[key.strip()] = value.strip()
    return arguments


def _required(arguments: Dict[str, str], key: str, preset: str) -> str:
    if key not in arguments:
        raise SpecError(f"Preset {preset!r} needs the argument {key}")
    return arguments[key]


def preset_spec(preset: str) -> AnalysisSpec:
    """
        Expand a named preset into an explicit spec
        Args:
            preset: paper-16-7 (alias hadamard-16-7), index4:delta=<phase>, fourier6:chi=<phase>,xi=<phase>,
                z3z3:xi=<phase>, s3:phase=<phase> or fourier:<group>
        Returns:
            AnalysisSpec: the groups and twist of the preset
    """
    head, _, tail = preset.partition(":")
    arguments = _preset_arguments(tail) if head != "fourier" else {}
    if head in PRESETS_16_7:
        return AnalysisSpec(name=preset, H="Z2xZ2", K="Z2xZ2", twist=["0"] * 15 + ["1/2"])
    if head == "index4":
        delta = _required(arguments, "delta", preset)
        return AnalysisSpec(name=preset, H="Z2", K="Z2", twist=["0", "0", "0", delta])
    if head == "fourier6":
        chi, xi = _required(arguments, "chi", preset), _required(arguments, "xi", preset)
        return AnalysisSpec(name=preset, H="Z2", K="Z3", twist=["0"] * 4 + [chi, xi])
    if head == "z3z3":
        return AnalysisSpec(name=preset, H="Z3", K="Z3", twist=["0"] * 8 + [_required(arguments, "xi", preset)])
    if head == "s3":
        return AnalysisSpec(name=preset, H="Z2", K="S3", twist=["0"] * 11 + [_required(arguments, "phase", preset)])
    if head == "fourier":
        group = parse_group(tail.strip())
        return AnalysisSpec(name=preset, H=tail.strip(), K="Z1", twist=["0"] * group.order)
    raise SpecError(f"Unknown preset {preset!r}")


def load_spec(source: Union[str, Dict]) -> AnalysisSpec:
    """
        Read a spec from a JSON file path, a JSON document or a dict; a bare
        preset name is accepted too
    """
    if isinstance(source, str) and (":" in source or source.strip() in PRESETS_16_7) and not source.lstrip().startswith("{"):
        return AnalysisSpec(preset=source.strip())
    try:
        if isinstance(source, dict):
            data = source
        elif source.lstrip().startswith("{"):
            data = json.loads(source)
        else:
            with open(source, "r", encoding="utf-8") as handle:
                data = json.load(handle)
    except (OSError, json.JSONDecodeError) as e:
        raise SpecError(f"Cannot read analysis spec {source!r}: {e}") from e
    try:
        return AnalysisSpec.model_validate(data)
    except ValueError as e:
        raise SpecError(f"Invalid analysis spec: {e}") from e


def resolve(spec: AnalysisSpec) -> ResolvedSpec:
    """
        Parse groups and phases; the matrix is the twisted tensor product of
        the conjugate Fourier matrix of H with the Fourier matrix of K
    """
    explicit = preset_spec(spec.preset) if spec.preset else spec
    H: FinGroup = parse_group(explicit.H)
    K: FinGroup = parse_group(explicit.K)
    phases = [parse_phase(p) for p in explicit.twist]
    twist = Twist.from_phases(H, K, phases, right_action=spec.options.right_action)
    annotations = []
    matrix = None
    if isinstance(H, AbelianGroup) and isinstance(K, AbelianGroup):
        matrix = twisted_tensor(fourier_conjugate(H), fourier_matrix(K), twist)
    else:
        annotations.append("non-abelian factor: the composite square is not a single Hadamard matrix")
    logger.debug(f"Resolved spec {spec.name or spec.preset}: {twist}")
    return ResolvedSpec(twist, matrix, annotations)


def echo(spec: AnalysisSpec) -> Dict:
    """Serializable copy of the spec that re-parses to an equal spec"""
    return spec.model_dump(mode="json")

