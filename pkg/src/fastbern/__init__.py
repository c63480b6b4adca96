"""Exact Bernoulli numbers from Genocchi residues modulo prime powers."""

from .engine import BatchInput, EngineOptions, genocchi_mod, genocchi_mod_batch
from .modring import PrimePowerResidue, crt_combine
from .oracle import bernoulli_exact_small, congruence_direct, genocchi_exact_small
from .polyeval import DensePoly2M, horner_eval, multipoint_eval
from .scheduler import (
    IntegrityError,
    PlanParams,
    bernoulli,
    compute_genocchi,
    genocchi_number,
    plan,
    to_bernoulli,
    vsc_denominator,
)

__all__ = [
    "BatchInput",
    "DensePoly2M",
    "EngineOptions",
    "IntegrityError",
    "PlanParams",
    "PrimePowerResidue",
    "bernoulli",
    "bernoulli_exact_small",
    "compute_genocchi",
    "congruence_direct",
    "crt_combine",
    "genocchi_exact_small",
    "genocchi_mod",
    "genocchi_mod_batch",
    "genocchi_number",
    "horner_eval",
    "multipoint_eval",
    "plan",
    "to_bernoulli",
    "vsc_denominator",
]
