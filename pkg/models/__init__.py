from .bessel_character import BesselCharacter
from .bessel_setup import BesselCase, BesselSetup
from .rep_type import EigenvalueData, FixedVectorDims, RepType
from .residue_matrix import (
    CosetEntry,
    IntegrationProbe,
    PartitionReport,
    ResidueMatrix,
    SplitTransfer,
    SubgroupSpec,
    SubgroupTag,
)
from .run_config import Command, RunConfig
from .scalar import Scalar, Symbol
from .series import TruncatedSeries
from .tower import (
    DistinguishedValue,
    EigenSystem,
    KernelReport,
    LinearRow,
    RowOperator,
    TowerIndex,
    TowerTable,
    TowerTag,
    Window,
)
from .verification import (
    CheckRecord,
    CheckResult,
    CheckStatus,
    VerificationReport,
    VerificationRun,
)
from .zeta import LFactor, SplitCharCorrespondence

__all__ = [
    "BesselCase",
    "BesselCharacter",
    "BesselSetup",
    "CheckRecord",
    "CheckResult",
    "CheckStatus",
    "Command",
    "CosetEntry",
    "DistinguishedValue",
    "EigenSystem",
    "EigenvalueData",
    "FixedVectorDims",
    "IntegrationProbe",
    "KernelReport",
    "LFactor",
    "LinearRow",
    "PartitionReport",
    "RepType",
    "ResidueMatrix",
    "RowOperator",
    "RunConfig",
    "Scalar",
    "SplitCharCorrespondence",
    "SplitTransfer",
    "SubgroupSpec",
    "SubgroupTag",
    "Symbol",
    "TowerIndex",
    "TowerTable",
    "TowerTag",
    "TruncatedSeries",
    "VerificationReport",
    "VerificationRun",
    "Window",
]
