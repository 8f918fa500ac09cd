"""Exact symbolic engine for twisted Hamiltonian extended affine Lie algebras."""

from __future__ import annotations

from .config import AlgebraConfig, load_config
from .lattice import GradingLattice, bar, dot, sympl
from .parser import ParseError, parse_element
from .scalars import CyclotomicField, CycScalar, zeta_power
from .simple_lie import AutomorphismSet, SimpleLieAlgebra, lie_torus_condition3
from .tau import TauAlgebra, TauElement

__all__ = [
    "AlgebraConfig",
    "AutomorphismSet",
    "CycScalar",
    "CyclotomicField",
    "GradingLattice",
    "ParseError",
    "SimpleLieAlgebra",
    "TauAlgebra",
    "TauElement",
    "bar",
    "dot",
    "lie_torus_condition3",
    "load_config",
    "parse_element",
    "sympl",
    "zeta_power",
]

__version__ = "0.1.0"
