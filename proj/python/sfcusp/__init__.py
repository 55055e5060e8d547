"""Numerical laboratory for square-free Fourier coefficients of cusp forms.

The heavy lifting lives in the compiled extension ``sfcusp._core``; this
package re-exports its public surface.
"""

from ._core import (  # noqa: F401
    SfcuspError,
    NewformRecord,
    __version__,
    bump,
    c_constant,
    contour_sum_oracle,
    delta_coefficients,
    direct_weighted_sum,
    divisor_power_sum,
    eigen_lambdas,
    eisenstein_coefficients,
    eta_newform,
    legacy_bound_log,
    level1_newform,
    load_newforms,
    mellin,
    min_squarefree_nonzero,
    mobius,
    nu,
    save_newforms,
    squarefree_divisors,
    squarefree_flags,
    theorem_bound,
    weight24_newforms,
)
