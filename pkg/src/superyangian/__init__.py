"""Exact computer algebra for the double Yangian of gl(m|n).

Everything is computed over Q (or Q[C] at the central level) with
fractions.Fraction; identity checks are exact coefficient comparisons inside
explicitly tracked truncation windows, never floating point.
"""

from .gradedtensor import (
    SuperDim,
    GradedTensor,
    matrix_unit,
    identity_tensor,
    permutation_P,
    transpose_tau,
    embed,
    graded_mul,
)
from .freealg import (
    Gen,
    NCPoly,
    TensorPoly,
    supercomm,
    truncate_below,
    parse_poly,
    format_poly,
)
from .series import (
    LaurentWindow,
    Laurent,
    geom_expand,
    GSeries,
    solve_g,
    yang_R,
    parse_laurent,
    format_laurent,
)
