"""Discrete coherent states and Wigner functions for n qubits over GF(2^n)."""
from .gf import (Basis, FieldElement, GaloisField, character, coordinates,
                 dual_basis, enumerate_elements, from_coordinates, make_field,
                 normal_basis, polynomial_basis, self_dual_basis, trace)
from .hilbert import (XI_MINUS, XI_PLUS, BlochPoint, DenseOperator, StateVector,
                      basis_change_permutation, bloch_to_xi, coherent_minus,
                      coherent_plus, dicke_state, hamming_h, product_state,
                      su2_coherent, tensor_factor_check)
from .pauli import (PhaseConvention, PhasePoint, default_convention, displacement,
                    fourier_op, phase_phi, squeeze_op, x_op, z_op)
from .wigner import (WignerGrid, fast_product_path, kernel, marginals,
                     wigner_coherent_closed_form, wigner_of)

__version__ = "0.1.0"

__all__ = [
    "Basis", "FieldElement", "GaloisField", "character", "coordinates", "dual_basis",
    "enumerate_elements", "from_coordinates", "make_field", "normal_basis",
    "polynomial_basis", "self_dual_basis", "trace",
    "XI_MINUS", "XI_PLUS", "BlochPoint", "DenseOperator", "StateVector",
    "basis_change_permutation", "bloch_to_xi", "coherent_minus", "coherent_plus",
    "dicke_state", "hamming_h", "product_state", "su2_coherent", "tensor_factor_check",
    "PhaseConvention", "PhasePoint", "default_convention", "displacement", "fourier_op",
    "phase_phi", "squeeze_op", "x_op", "z_op",
    "WignerGrid", "fast_product_path", "kernel", "marginals",
    "wigner_coherent_closed_form", "wigner_of",
]
