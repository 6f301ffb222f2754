"""Finite-dimensional quantum groups with their full modular and duality
structure, every defining identity checked as a numerical residual."""

from .builders import (FiniteQuantumGroup, GroupTable, cyclic_group,
                       dihedral_group_4, function_algebra, group_algebra,
                       kac_paljutkin, quaternion_group, solve_haar,
                       symmetric_group_3, trivial_group)
from .numlin import AntilinearOp, Tolerance
from .pipeline import Pipeline, PipelineConfig, build_pipeline, run_full
from .report import VerificationReport
from .star_algebra import StarAlgebra

__version__ = "0.1.0"

__all__ = [
    "AntilinearOp", "FiniteQuantumGroup", "GroupTable", "Pipeline",
    "PipelineConfig", "StarAlgebra", "Tolerance", "VerificationReport",
    "build_pipeline", "cyclic_group", "dihedral_group_4", "function_algebra",
    "group_algebra", "kac_paljutkin", "quaternion_group", "run_full",
    "solve_haar", "symmetric_group_3", "trivial_group",
]
