"""Detection of K_{s,t}, K*_{s,t}, 1-extensions and skewered K_{s,b}, plus
the rho(G) oracle."""

from .search import c_bound, extension_or_skewer, find_kst, find_kst_star, rho_oracle
from .verify import verify_rho, verify_witness, witness_problems
from .witness import PatternWitness, RhoResult

__all__ = [
    "PatternWitness",
    "RhoResult",
    "c_bound",
    "extension_or_skewer",
    "find_kst",
    "find_kst_star",
    "rho_oracle",
    "verify_rho",
    "verify_witness",
    "witness_problems",
]
