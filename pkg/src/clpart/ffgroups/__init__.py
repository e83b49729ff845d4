"""Brute-force ground truth: finite fields, classical groups and Jordan types at 1."""

from .enumerate import (
    BudgetExceeded,
    EmpiricalDistribution,
    EmpiricalTable,
    OracleReport,
    classical_order,
    closure_check,
    empirical_distribution,
    empirical_table,
    enumerate_group,
    group_dimension,
    oracle_compare,
    support_violations,
)
from .field import GF, field_make, field_of_order
from .forms import FormSpec, is_member, standard_form
from .linalg import Matrix, jordan_partition_at_1, nullity_sequence, rank

__all__ = [
    "GF",
    "BudgetExceeded",
    "EmpiricalDistribution",
    "EmpiricalTable",
    "FormSpec",
    "Matrix",
    "OracleReport",
    "classical_order",
    "closure_check",
    "empirical_distribution",
    "empirical_table",
    "enumerate_group",
    "field_make",
    "field_of_order",
    "group_dimension",
    "is_member",
    "jordan_partition_at_1",
    "nullity_sequence",
    "oracle_compare",
    "rank",
    "standard_form",
    "support_violations",
]
