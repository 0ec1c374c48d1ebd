"""Exact computations in Lipschitz-free spaces over finite pointed metric spaces."""

from .errors import LipFreeError
from .extremal import (
    ExposureCertificate,
    MoleculeReport,
    brute_force_extreme,
    classify_molecule,
    exposure_certificate,
    exposure_margin,
    mass_concentration_check,
    split_optimal,
    split_representation,
    verify_certificate,
)
from .free_space import (
    FreeElement,
    Representation,
    dist_to_subspace,
    dual_norm,
    from_representation,
    molecule,
    pairing,
    primal_norm,
    rebase,
)
from .lipschitz import LipFunction, lip_norm, magic_function, pair_quotient
from .metric import FiniteMetricSpace, epsilon_segment, random_space, segment, validate

__version__ = "0.1.0"

__all__ = [
    "ExposureCertificate", "FiniteMetricSpace", "FreeElement", "LipFreeError", "LipFunction",
    "MoleculeReport", "Representation", "brute_force_extreme", "classify_molecule",
    "dist_to_subspace", "dual_norm", "epsilon_segment", "exposure_certificate",
    "exposure_margin", "from_representation", "lip_norm", "magic_function",
    "mass_concentration_check", "molecule", "pair_quotient", "pairing", "primal_norm",
    "random_space", "rebase", "segment", "split_optimal", "split_representation",
    "validate", "verify_certificate",
]
