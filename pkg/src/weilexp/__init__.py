"""Exponents of unipotent radicals of Weil restrictions, checked by exact computation.

The model local ring ``F_p[a_1..a_l]/(a_i^(p^e_i) - R_i)`` stands in for
``k' (x)_k k'``; everything else (matrices over it, witnesses, the SL2
checks in characteristic 2 and the rule-based predictor) is built on it.
"""

from .errors import *  # noqa: F401,F403
from .matrix import (
    MatrixOverRing,
    cayley_hamilton_check,
    ch_bound_check,
    char_poly,
    identity,
    is_zero,
    mat_mul,
    mat_pow,
    p_power_exponent,
    sample_max_exponent,
    upper_triangular,
)
from .predict import ExponentPrediction, GroupSpec, cross_validate, gl, parse_group, predict
from .profile import (
    ExtensionProfile,
    Relation,
    big_e_m,
    ch_exponent_bound,
    e_of,
    exactness_condition,
    little_e_mr,
    m_invariant,
    m_r_invariant,
    profile_grid,
    validate,
)
from .ring import (
    LocalRing,
    RingElement,
    frobenius_pow,
    generator,
    ideal_nilpotency_index,
    invert_unit,
    nilpotency_index,
    normalize,
    parse_element,
    product_vanishes,
    random_ideal_element,
    subalgebra_membership,
)
from .sl2 import (
    closed_form_power,
    sl2_borel_witness,
    sl2_full_witness,
    sl2_sample_check,
)
from .verify import SuiteConfig, run_suite
from .witness import (
    WitnessReport,
    borel_witness,
    path_expansion_entry,
    verify_witness,
)

__version__ = "0.1.0"
