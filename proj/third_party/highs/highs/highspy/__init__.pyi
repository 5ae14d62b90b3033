from __future__ import annotations
from highspy._core import (
    BasisValidity,
    HessianFormat,
    HighsBasis,
    HighsBasisStatus,
    HighsHessian,
    HighsInfo,
    HighsInfoType,
    HighsLinearObjective,
    HighsLogType,
    HighsLp,
    HighsModel,
    HighsModelStatus,
    HighsObjectiveSolution,
    HighsOptionType,
    HighsOptions,
    HighsPresolveStatus,
    HighsRanging,
    HighsRangingRecord,
    HighsSolution,
    HighsSparseMatrix,
    HighsStatus,
    HighsVarType,
    MatrixFormat,
    ObjSense,
    SolutionStatus,
    cb,
    simplex_constants,
)
from . import _core
from .highs import Highs, HighsCallbackEvent, HighsCallback, HighspyArray, highs_var, highs_cons, highs_linear_expression

__all__: list[str] = [
    "__doc__",
    "ObjSense",
    "MatrixFormat",
    "HessianFormat",
    "SolutionStatus",
    "BasisValidity",
    "HighsModelStatus",
    "HighsPresolveStatus",
    "HighsBasisStatus",
    "HighsVarType",
    "HighsOptionType",
    "HighsInfoType",
    "HighsStatus",
    "HighsLogType",
    "HighsSparseMatrix",
    "HighsLp",
    "HighsHessian",
    "HighsModel",
    "HighsInfo",
    "HighsOptions",
    "Highs",
    "HighsSolution",
    "HighsObjectiveSolution",
    "HighsBasis",
    "HighsRangingRecord",
    "HighsRanging",
    "kHighsInf",
    "kHighsIInf",
    "HighsLinearObjective",
    "HIGHS_VERSION_MAJOR",
    "HIGHS_VERSION_MINOR",
    "HIGHS_VERSION_PATCH",
    "simplex_constants",
    "cb",
    "kSolutionStatusNone",
    "kSolutionStatusInfeasible",
    "kSolutionStatusFeasible",
    "kBasisValidityInvalid",
    "kBasisValidityValid",
    "HighsCallbackEvent",
    "HighsCallback",
    "HighspyArray",
    "highs_var",
    "highs_cons",
    "highs_linear_expression"
]

HIGHS_VERSION_MAJOR: int
HIGHS_VERSION_MINOR: int
HIGHS_VERSION_PATCH: int
kBasisValidityInvalid: _core.BasisValidity
kBasisValidityValid: _core.BasisValidity
kHighsIInf: int
kHighsInf: float
kSolutionStatusFeasible: _core.SolutionStatus
kSolutionStatusInfeasible: _core.SolutionStatus
kSolutionStatusNone: _core.SolutionStatus
