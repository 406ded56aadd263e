"""semipi: exact semiprime counting and the prime-counting identity.

Public surface:

* primes:       isqrt, dense PrimeTable, QuotientPiTable over quotient
                 points (the performance substrate)
* semiprimes:   the counting formulas (eq1, eq3 naive/grouped) and the
                 factoring-sieve oracle
* identity:     both sides of the pi identity with residual reports
* cli:          `semipi` command-line front end

Prime counts at rational arguments are floor-evaluated throughout:
pi(x) = pi(floor(x)), so pi(25/2) = pi(12) = 5.
"""

from .errors import (
    InternalConsistencyError,
    RangeError,
    ResourceLimitError,
    SemipiError,
)
from .identity import IdentityReport, check_identity, identity_lhs, identity_rhs
from .primes import (
    MAX_DENSE_LIMIT,
    PrimeTable,
    QuotientPiTable,
    SUPPORTED_MAX_N,
    build_prime_table,
    build_quotient_pi,
    isqrt,
    nth_prime,
    pi_floor,
)
from .semiprimes import (
    METHODS,
    NAIVE_MAX_N,
    ORACLE_MAX_N,
    PairSum,
    SemiprimeCount,
    count_semiprimes_eq1,
    count_semiprimes_eq3,
    count_semiprimes_oracle,
    omega_table,
    oracle_count_table,
    pair_sum_grouped,
    pair_sum_naive,
    square_root_prime_count,
)

__version__ = "0.1.0"

__all__ = [
    "SemipiError",
    "RangeError",
    "ResourceLimitError",
    "InternalConsistencyError",
    "PrimeTable",
    "QuotientPiTable",
    "SUPPORTED_MAX_N",
    "MAX_DENSE_LIMIT",
    "isqrt",
    "build_prime_table",
    "build_quotient_pi",
    "pi_floor",
    "nth_prime",
    "METHODS",
    "NAIVE_MAX_N",
    "ORACLE_MAX_N",
    "SemiprimeCount",
    "PairSum",
    "count_semiprimes_eq1",
    "count_semiprimes_eq3",
    "count_semiprimes_oracle",
    "pair_sum_naive",
    "pair_sum_grouped",
    "square_root_prime_count",
    "omega_table",
    "oracle_count_table",
    "IdentityReport",
    "identity_lhs",
    "identity_rhs",
    "check_identity",
    "__version__",
]
