"""criteria/registry.py

Centralized mapping of criterion names to their AllocationCriterion
implementations, so the pipeline and the CLI can select a criterion by the
name given in a config file.
"""

from typing import Dict, Type

from ...exceptions import UnknownCriterionError
from .criterion import AllocationCriterion
from .innovation import InnovationCriterion
from .measurement_error import MeasurementErrorCriterion
from .saliency import SaliencyCriterion
from .uniform import UniformCriterion

CRITERION_MAP: Dict[str, Type[AllocationCriterion]] = {
    InnovationCriterion.name: InnovationCriterion,
    MeasurementErrorCriterion.name: MeasurementErrorCriterion,
    SaliencyCriterion.name: SaliencyCriterion,
    UniformCriterion.name: UniformCriterion,
}

CRITERIA = tuple(CRITERION_MAP)


def get_criterion(name: str) -> AllocationCriterion:
    """
    Instantiate the criterion registered under *name*.

    Args:
        name (str): Criterion identifier ('innovation', 'error', 'saliency', 'uniform').

    Returns:
        AllocationCriterion: A fresh criterion instance.

    Raises:
        UnknownCriterionError: If the name is not registered.
    """
    key = name.lower().strip()
    criterion_cls = CRITERION_MAP.get(key)
    if criterion_cls is None:
        raise UnknownCriterionError(name)
    return criterion_cls()
