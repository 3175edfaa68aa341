"""Quaternion matrix algebra and coupled one-sided Sylvester-type equations.

Quick tour::

    >>> from quatsylv import generate, check, solve
    >>> sys, planted = generate("sys01", 2, seed=0)
    >>> check(sys).verdict
    True
    >>> solve(sys).max_relative_residual < 1e-8
    True
"""
from .blocks import (
    check_four_term,
    check_pair,
    rank_identity_check,
    solve_four_term,
    solve_pair,
    solve_single,
)
from .certificate import ProjectorCondition, RankCertificate, RankCondition
from .coupled import (
    AuxiliaryOperators,
    SolutionBundle,
    Solver,
    auxiliary_operators,
    check,
    pad_special,
    shape_query,
    solve,
    solve_special,
)
from .errors import (
    AdjointStructureError,
    CapExceeded,
    Inconsistent,
    ParseError,
    QuatError,
    ShapeError,
    ToleranceError,
)
from .generate import generate, perturb
from .qio import format_qmat, format_qsys, parse_qmat, parse_qsys, read_qmat, read_qsys, write_qmat, write_qsys
from .quaternion import (
    DEFAULT_TOL,
    ComplexAdjoint,
    QuatMatrix,
    Quaternion,
    Tolerances,
    complex_rank,
    conj_transpose,
    from_adjoint,
    pinv,
    proj_L,
    proj_R,
    qmul,
    rank,
    to_adjoint,
)
from .systems import (
    COUPLED_KINDS,
    PAIR_KINDS,
    SPECIAL_KINDS,
    CoupledSystem,
    FourTermEquation,
    FreeParameters,
    PairSystem,
    Solution,
)
from .verification import (
    FIXTURE_IDS,
    Fixture,
    OracleVerdict,
    ResidualReport,
    oracle_check,
    paper_fixture,
    residual,
)

__all__ = [
    "check_four_term",
    "check_pair",
    "rank_identity_check",
    "solve_four_term",
    "solve_pair",
    "solve_single",
    "ProjectorCondition",
    "RankCertificate",
    "RankCondition",
    "AuxiliaryOperators",
    "SolutionBundle",
    "Solver",
    "auxiliary_operators",
    "check",
    "pad_special",
    "shape_query",
    "solve",
    "solve_special",
    "AdjointStructureError",
    "CapExceeded",
    "Inconsistent",
    "ParseError",
    "QuatError",
    "ShapeError",
    "ToleranceError",
    "generate",
    "perturb",
    "format_qmat",
    "format_qsys",
    "parse_qmat",
    "parse_qsys",
    "read_qmat",
    "read_qsys",
    "write_qmat",
    "write_qsys",
    "DEFAULT_TOL",
    "ComplexAdjoint",
    "QuatMatrix",
    "Quaternion",
    "Tolerances",
    "complex_rank",
    "conj_transpose",
    "from_adjoint",
    "pinv",
    "proj_L",
    "proj_R",
    "qmul",
    "rank",
    "to_adjoint",
    "COUPLED_KINDS",
    "PAIR_KINDS",
    "SPECIAL_KINDS",
    "CoupledSystem",
    "FourTermEquation",
    "FreeParameters",
    "PairSystem",
    "Solution",
    "FIXTURE_IDS",
    "Fixture",
    "OracleVerdict",
    "ResidualReport",
    "oracle_check",
    "paper_fixture",
    "residual",
]

__version__ = "0.1.0"
