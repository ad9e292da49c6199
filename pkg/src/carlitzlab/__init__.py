"""carlitzlab: exact and precision-certified arithmetic of function-field
special values: Carlitz zeta values, geometric Gamma values, the Carlitz
period, and their Frobenius difference equations."""

__version__ = "0.1.0"

from .fq import FqElement, FqField, fq_field
from .poly import Poly, RationalFunction, euler_phi_A, monic_iter, poly_factor
from .series import ExtScalar, PrecSeries, frobenius_twist, series_inv
from .tower import TowerScalar, qth_root
from .recognize import linear_relation_find, numeric_rank, pade_recognize
from .carlitz import CarlitzCache, cache_for, carlitz_exp, carlitz_log, e_of, pi_tilde, polylog, powersum
from .division import BiPoly, cyclotomic_star, division_poly
from .zeta import (
    ATCertificate,
    anderson_thakur_solve,
    euler_carlitz_ratio,
    frobenius_check,
    u_set,
    zeta,
    zeta_galois_dim,
    zeta_trdeg,
)
from .gamma import (
    GammaDivisor,
    bracket,
    bracket_N,
    bracket_div,
    bracket_div_total,
    bracket_profile,
    gamma_eval,
    pi_factorial_eval,
    gamma_trdeg,
    gauss_mult_check,
    joint_trdeg,
    monomial_recognize,
    pi_monomial_eval,
    reflection_check,
    star,
    translation_check,
    weight,
)
from .motives import (
    MotiveSystem,
    TPoly,
    TSeriesTrunc,
    build_direct_sum,
    build_zeta_motive,
    evaluate_at_theta,
    l_series,
    omega_trunc,
    verify_trivialization,
)
