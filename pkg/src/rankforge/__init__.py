"""Rank syndrome decoding: field arithmetic, attacks, estimates."""

import logging

from .gfqm import Field
from .rsd import (CodeParams, RsdInstance, RsdSolution, make_instance, rank_weight,
                  read_instance, verify_solution, write_instance)
from .attack_support import SupportGuessConfig, es_attack, es_attack_v1, es_attack_v2
from .attack_algebraic import HybridConfig, export_polynomial_system, hybrid_attack, lin_attack
from .oracle import brute_force, enumerate_subspaces

logging.getLogger(__name__).addHandler(logging.NullHandler())

__version__ = "0.1.0"

__all__ = [
    "Field", "CodeParams", "RsdInstance", "RsdSolution", "make_instance", "rank_weight",
    "read_instance", "write_instance", "verify_solution", "SupportGuessConfig", "es_attack",
    "es_attack_v1", "es_attack_v2", "HybridConfig", "lin_attack", "hybrid_attack",
    "export_polynomial_system", "brute_force", "enumerate_subspaces",
]
