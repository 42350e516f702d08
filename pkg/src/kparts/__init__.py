"""Exact arithmetic for partitions of n into k parts.

p(n, k) counts partitions of n into exactly k parts and q(n, k) those into k
distinct parts.  The package computes both through several independent
routes -- dynamic programming, residue-constrained tuple sums, a binomial
convolution against a bounded-tuple histogram, quasi-polynomial constituents
(by interpolation and by an exact Bernoulli linear system), and a
root-of-unity wave decomposition -- cross-verifies all of them, and analyzes
divisibility and residue densities modulo m.  Every value is exact; no
floating point is used anywhere.
"""

from .closedform import (FHistogram, binomial_sum, congruence_witness,
                         f_histogram, k3_bernoulli, tuple_sum_p, tuple_sum_q)
from .density import (DensityReport, check_bound_nonzero, density_survey,
                      residue_density)
from .errors import (ConventionUnresolved, DomainError, Irrational,
                     KpartsError, NonIntegerResult, OutOfTable,
                     SingularSystem, TooLarge, WindowTooSmall)
from .exactnum import (CycloElt, Rat, bernoulli_barnes, bernoulli_number,
                       bernoulli_numbers, bernoulli_poly_eval,
                       cyclo_extract_rational, cyclo_root_power, lcm_upto,
                       stirling_unsigned)
from .oracle import (PTable, enumerate_partitions, p_table, q_of,
                     restricted_pa, staircase)
from .quasipoly import (QuasiPoly, constituent_matrix_det, interp_constituents,
                        resolve_rhs_convention, solve_bernoulli_system,
                        system_residual)
from .waves import (WaveDecomp, poly_part_P, poly_part_Q,
                    resolve_wave_convention, wave_closed_form, wave_sum_p,
                    wave_sum_q, waves_from_constituents, window_sums)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # errors
    "KpartsError", "Irrational", "OutOfTable", "TooLarge", "NonIntegerResult",
    "SingularSystem", "ConventionUnresolved", "WindowTooSmall", "DomainError",
    # exact numbers
    "Rat", "CycloElt", "bernoulli_number", "bernoulli_numbers",
    "bernoulli_poly_eval", "bernoulli_barnes", "stirling_unsigned",
    "lcm_upto", "cyclo_root_power", "cyclo_extract_rational",
    # oracle
    "PTable", "p_table", "q_of", "restricted_pa", "enumerate_partitions",
    "staircase",
    # quasi-polynomial
    "QuasiPoly", "interp_constituents", "solve_bernoulli_system",
    "constituent_matrix_det", "system_residual", "resolve_rhs_convention",
    # waves
    "WaveDecomp", "waves_from_constituents", "wave_closed_form",
    "resolve_wave_convention", "window_sums", "poly_part_P", "poly_part_Q",
    "wave_sum_p", "wave_sum_q",
    # closed forms
    "FHistogram", "f_histogram", "tuple_sum_p", "tuple_sum_q", "binomial_sum",
    "congruence_witness", "k3_bernoulli",
    # densities
    "DensityReport", "residue_density", "check_bound_nonzero", "density_survey",
]
