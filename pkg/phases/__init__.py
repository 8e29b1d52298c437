from .phase import (
    INFINITE,
    Phase,
    PhaseArray,
    phase_mul,
    phase_order,
    parse_phase,
    bind_symbols,
    is_product_form,
    is_column_function
)

__all__ = [
    "INFINITE",
    "Phase",
    "PhaseArray",
    "phase_mul",
    "phase_order",
    "parse_phase",
    "bind_symbols",
    "is_product_form",
    "is_column_function"
]
