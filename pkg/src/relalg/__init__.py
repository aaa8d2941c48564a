"""Finite integral relation algebras: Comer finite-field constructions,
exact representation checking, and SAT-based representability search."""

from .algebra import (
    AlgebraSpec,
    AtomSig,
    NeedsTable,
    catalog_get,
    catalog_names,
    color_algebra,
    needs_of,
    peircean_closure,
    validate_spec,
)
from .comer import (
    CosetPartition,
    CycleTable,
    classify,
    coset_partition,
    converse_index,
    cycle_table,
    cycle_table_oracle,
    is_symmetric,
    scan,
)
from .repcheck import (
    GroupingRep,
    LabelingRep,
    PointLabeling,
    VerifyReport,
    induced_triples,
    verify_grouping,
    verify_labeling,
    verify_points,
)
from .satenc import (
    BoundDerivation,
    CnfFormula,
    decode_group_model,
    decode_points_model,
    emit_dimacs,
    encode_group,
    encode_points,
    point_bound,
)
from .solver import SolveResult, default_solver_command, run_solver

__version__ = "0.1.0"

__all__ = [
    "AlgebraSpec",
    "AtomSig",
    "BoundDerivation",
    "CnfFormula",
    "CosetPartition",
    "CycleTable",
    "GroupingRep",
    "LabelingRep",
    "NeedsTable",
    "PointLabeling",
    "SolveResult",
    "VerifyReport",
    "catalog_get",
    "catalog_names",
    "classify",
    "color_algebra",
    "converse_index",
    "coset_partition",
    "cycle_table",
    "cycle_table_oracle",
    "decode_group_model",
    "decode_points_model",
    "default_solver_command",
    "emit_dimacs",
    "encode_group",
    "encode_points",
    "induced_triples",
    "is_symmetric",
    "needs_of",
    "peircean_closure",
    "point_bound",
    "run_solver",
    "scan",
    "validate_spec",
    "verify_grouping",
    "verify_labeling",
    "verify_points",
]
