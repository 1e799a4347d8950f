"""High-precision Toeplitz+Hankel determinants, norms and asymptotics.

The package computes determinants whose (j, k) entry combines a Toeplitz
coefficient phi_{j-k+dr} with a Hankel coefficient w_{j+k+ds}, the norm
ratios h_n of the associated biorthogonal polynomial systems, and
contour-integral predictors for those norms derived from a factorization
of the weight pair. Everything runs in mpmath arbitrary precision.

Layered API:

* symbols / fourier: symbol functions on an annulus, Laurent coefficients.
* determinants: the matrices, determinants and norm ladder.
* szego: scalar factorization, the kernel C_rho and the model solution.
* asymptotics: contour coefficients, norm predictors, offset reductions.
* ising: the layered-lattice magnetization family.
* cli: the `thdet` command-line front end.
"""

from . import config as config
from .asymptotics import (
    AsymptoticEngine,
    MaskedMatrix,
    RHPData,
    exact_h01_from_data,
    exact_h01_via_chain,
    offset00_residual,
    offset01_residual,
    offset02_residual,
    solve_offset00,
    solve_offset01,
    solve_offset02,
    solve_offset02_lu,
    wsym_residual,
)
from .config import RunConfig, precision_ctx, tol
from .determinants import (
    THSystem,
    build_matrix,
    det_th,
    norm_h,
    norm_h_ratio,
    orthogonality_residual,
    orthopoly,
)
from .errors import ThdetError
from .fourier import (
    LaurentSeries,
    contour_coefficient,
    eval_series,
    fourier_coeffs,
)
from .ising import criticality_study, magnetization
from .symbols import (
    IsingParams,
    IsingSymbols,
    Symbol,
    ising_symbols,
    log_on_circle,
    tilde,
    winding_number,
)
from .szego import (
    RhoKernel,
    SzegoSplit,
    build_rho_kernel,
    c_rho,
    check_unit_reflection,
    lambda_model,
    szego_split,
)

__version__ = "0.1.0"

__all__ = [
    "AsymptoticEngine",
    "IsingParams",
    "IsingSymbols",
    "LaurentSeries",
    "MaskedMatrix",
    "RHPData",
    "RhoKernel",
    "RunConfig",
    "Symbol",
    "SzegoSplit",
    "THSystem",
    "ThdetError",
    "build_matrix",
    "build_rho_kernel",
    "c_rho",
    "check_unit_reflection",
    "config",
    "contour_coefficient",
    "criticality_study",
    "det_th",
    "eval_series",
    "exact_h01_from_data",
    "exact_h01_via_chain",
    "fourier_coeffs",
    "ising_symbols",
    "lambda_model",
    "log_on_circle",
    "magnetization",
    "norm_h",
    "norm_h_ratio",
    "offset00_residual",
    "offset01_residual",
    "offset02_residual",
    "orthogonality_residual",
    "orthopoly",
    "precision_ctx",
    "solve_offset00",
    "solve_offset01",
    "solve_offset02",
    "solve_offset02_lu",
    "szego_split",
    "tilde",
    "tol",
    "winding_number",
    "wsym_residual",
]
