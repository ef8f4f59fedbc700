"""Operator-valued quantum diagonalization on a truncated Fock space.

The package builds the Jaynes-Cummings and pseudo-Jaynes-Cummings models
as 2x2 matrices of Fock operators, diagonalizes them with operator
analogues of the SU(2) and SU(1,1) charts, and carries the construction on
to non-commutative Veronese maps, spin representations and a numerical
first Chern number.  Every identity can be checked numerically, either
directly or through :func:`ncfock.suites.run_verify`.
"""

__version__ = "0.1.0"

from .errors import *  # noqa: F401,F403
from .fock import (  # noqa: F401
    BlockOperator,
    FockOperator,
    FockSpace,
    ValidityBand,
    annihilation,
    band_residual,
    creation,
    identity,
    interior_equal,
    number,
    reference_exponential,
    window_residual,
)
from .classical import BerryPoint, Chart, Domain  # noqa: F401
from .jc import DetunedModel, JCParams  # noqa: F401
from .pseudo import PseudoModel  # noqa: F401
from .quadrature import QuadratureConfig  # noqa: F401
from .chern import LocalPoint, chern_number  # noqa: F401
from . import chern, classical, fock, jc, pseudo, representations, veronese  # noqa: F401
