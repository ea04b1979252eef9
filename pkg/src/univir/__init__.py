"""Exact symbolic toolkit for Waring/Faber polynomials, univalent-function
coefficient formulas, Grunsky coefficients and the Virasoro action on the
coefficients ``c1, c2, ...``."""

from .exactalg import MultiIndex, Poly, multi_indices, parse_rational
from .fps import BiSeries, Series, SeriesError, TruncationError
from .schlicht import (
    GrunskyTable,
    coeff_a,
    coeff_b,
    coeff_d,
    expand_a,
    expand_b,
    grunsky,
    grunsky_oracle,
    grunsky_table,
    q_series,
    schwarzian,
)
from .symfun import MonomialSymmetric, faber_Phi, faber_Q, waring_P
from .virasoro import (
    DiffOp,
    HorizonError,
    build_hat,
    build_L_minus,
    build_L_minus_oracle,
    build_L_plus,
    build_L_zero,
    commutator,
    verify_virasoro,
)

__version__ = "0.1.0"
