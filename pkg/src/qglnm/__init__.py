"""Oscillator realizations of the quantum superalgebra U_q[gl(n/m)].

Builds the Dyson and Holstein-Primakoff homomorphisms into the graded
Weyl algebra of n-1 bosonic and m fermionic modes, verifies the complete
defining presentation (exactly for Dyson, numerically for
Holstein-Primakoff), and analyzes the resulting Fock-space modules.
"""

from .coeff import CoeffExact, LaurentPoly, bracket_affine, bracket_int, bracket_value
from .fock import BasisIndex, Signature, dim_F0, enumerate_up_to, mode_parity, split_F0_F1
from .presentation import GenSymbol, Relation, build_relations, generator_parity
from .realize import dyson, hp, hp_deformed, realization, tilde_ops
from .verify import VerificationReport, substitute, verify_all
from .weyl import Engine, OperatorExpr, super_commutator

__all__ = [
    "BasisIndex",
    "CoeffExact",
    "Engine",
    "GenSymbol",
    "LaurentPoly",
    "OperatorExpr",
    "Relation",
    "Signature",
    "VerificationReport",
    "bracket_affine",
    "bracket_int",
    "bracket_value",
    "build_relations",
    "dim_F0",
    "dyson",
    "enumerate_up_to",
    "generator_parity",
    "hp",
    "hp_deformed",
    "mode_parity",
    "realization",
    "split_F0_F1",
    "substitute",
    "super_commutator",
    "tilde_ops",
    "verify_all",
]

__version__ = "0.1.0"
