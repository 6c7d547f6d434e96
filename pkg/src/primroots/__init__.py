"""Consecutive and quasi-consecutive primitive roots in finite fields."""

__version__ = "0.1.0"

from .arith import PrimeFactorization, euler_phi, factorize, is_prime, omega, pow_mod, totient_gap
from .configurations import (
    RunStats,
    count_tuples,
    is_admissible_prime_tuple,
    is_squarefree_feasible,
    least_prime_with_run,
    max_run,
)
from .densities import (
    DensityModel,
    coprime_pair_density,
    dependence_correction_consecutive,
    predict_main_term,
    truncated_euler_product,
    tuple_local_density,
    zeta_reciprocal,
)
from .families import PrimeFamily, classify_prime, extreme_totient_check, predicted_run_class
from .residues import FieldScan, is_primitive_root, least_primitive_root, primroots_by_generator, scan_field
from .sieves import ArithSieve, build_sieve
from .specs import TupleSpec
