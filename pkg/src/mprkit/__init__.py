"""mprkit: exact censuses of prime-order conjugacy classes in small simple
groups, plus the number-theoretic tables and inequality checks built on them."""

from .errors import DomainError, RangeError, WIDTH_BOUND
from .ntheory import (Factorization, PpdResult, configure_cache, euler_phi,
                      factorize, is_prime, largest_prime_factor, moebius,
                      primitive_prime_divisors)
from .cyclotomic import (IntPolynomial, StewartRow, cyclotomic,
                         cyclotomic_eval, stewart_row)
from .permcensus import (AltCensusRow, CycleType, alt_mpr_p,
                         brute_force_alt_census, mpr_star_alt,
                         order_p_cycle_types)
from .matcensus import (AutClassRecord, CensusResult, GroupSpec, aut_orbit,
                        census, element_order, enumerate_group, group_spec,
                        normalizer_centralizer_index, parse_group,
                        psl2_torus_element, verify_dihedral_structure)
from .bounds import (ExceptionalRow, FamilySpec, alt_bound_chain, check_lemma1_sweep,
                     check_lemma2_sweep, check_ppd, derive_family_spec,
                     exceptional_lower_bound, ppd_lower_bound, zsig_prime_for)
from .records import BoundReport, OutputRecord, emit

__version__ = "0.1.0"
