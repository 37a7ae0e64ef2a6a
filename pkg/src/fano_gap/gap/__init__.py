"""Certification engine for phi(T) < 2n^n over the finite and asymptotic ranges."""

from .asymptotic import (D_OF_3, TABLE_CONVENTION, CaseIBundle, Undecided, by_parts_coefficients,
                         case1_bundle, case1_margin, check_case1_bundle, d_threshold,
                         r3_bracket, r3_chain_bound, r3_chain_check, r3_exact_ratio,
                         r_infty_d, r_infty_r, r_threshold, robbins_check, table_d_of_r,
                         table_r_of_d, table_rows)
from .cases import (CASE_IV_GRIDS, F_bound_d_n_minus_1, certify_d_n_minus_1, certify_pair,
                    certify_singular_deg2, check_x1_below_T, gamma_upper, replay_case_iv,
                    s_exact, s_via_integral, s_via_model, sweep, sweep_cases, tau_d_n_minus_1,
                    tau_infinity)
from .certificate import SCHEMA, Certificate, bundle, dumps, recheck
