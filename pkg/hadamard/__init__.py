from .matrix import (
    HadamardMatrix,
    Twist,
    twist_standard_form,
    fourier_matrix,
    fourier_conjugate,
    tensor_product,
    twisted_tensor,
    is_hadamard,
    roots_of_unity_sum_vanishes,
    parse_real_hadamard,
    parse_complex_hadamard,
    load_hadamard_file,
    load_catalog
)
from .equivalence import dephase, hadamard_equivalent

__all__ = [
    "HadamardMatrix",
    "Twist",
    "twist_standard_form",
    "fourier_matrix",
    "fourier_conjugate",
    "tensor_product",
    "twisted_tensor",
    "is_hadamard",
    "roots_of_unity_sum_vanishes",
    "parse_real_hadamard",
    "parse_complex_hadamard",
    "load_hadamard_file",
    "load_catalog",
    "dephase",
    "hadamard_equivalent"
]
