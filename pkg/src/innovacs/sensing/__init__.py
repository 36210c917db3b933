from .ledger import BudgetLedger, make_ledger
from .matrix import SensingMatrix, adjoint, build_matrix, measure
from .measurements import MeasurementSet, append

__all__ = [
    "BudgetLedger",
    "MeasurementSet",
    "SensingMatrix",
    "adjoint",
    "append",
    "build_matrix",
    "make_ledger",
    "measure",
]
