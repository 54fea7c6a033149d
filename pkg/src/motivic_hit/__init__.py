"""Hit problem computations for Λ(x_1..x_n) ⊗ F_2[y_1..y_n] over the motivic Steenrod algebra mod 2."""

from .arithmetic import BitNat, alpha_of, beta_of
from .f2linalg import BitVector, EchelonBuilder, Subspace, echelonize
from .monomial import Monomial, enumerate_degree, weight_profile
from .steenrod import hit_subspace, is_hit, pa, q0
from .toplayer import build_context, epsilon, theta, verify_parity_theorem

__all__ = [
    "BitNat", "alpha_of", "beta_of",
    "BitVector", "EchelonBuilder", "Subspace", "echelonize",
    "Monomial", "enumerate_degree", "weight_profile",
    "hit_subspace", "is_hit", "pa", "q0",
    "build_context", "epsilon", "theta", "verify_parity_theorem",
]
