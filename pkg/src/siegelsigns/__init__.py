"""Hecke eigenvalue and sign analytics for degree-2 Siegel eigenforms."""

from .eigenform import (
    EigenformData,
    Kind,
    LocalHeckeEigenvalues,
    normalize,
    parse_eigenform,
    serialize_eigenform,
)
from .errors import (
    ConsistencyError,
    MissingPrimeError,
    ParseError,
    PrecisionExhaustedError,
    PreconditionError,
    SiegelSignsError,
)
from .precision import DEFAULT_CONTEXT, PrecisionContext
from .satake import HeckePolynomial, SatakeClass, SatakeParameters, build_hecke_polynomial, classify, solve_satake
from .spinor import SpinorForm, global_lambda, lambda_values, solve_form
from .synthetic import build_synthetic_eigenform, sk_lift

__all__ = [
    "ConsistencyError",
    "DEFAULT_CONTEXT",
    "EigenformData",
    "HeckePolynomial",
    "Kind",
    "LocalHeckeEigenvalues",
    "MissingPrimeError",
    "ParseError",
    "PrecisionContext",
    "PrecisionExhaustedError",
    "PreconditionError",
    "SatakeClass",
    "SatakeParameters",
    "SiegelSignsError",
    "SpinorForm",
    "build_hecke_polynomial",
    "build_synthetic_eigenform",
    "classify",
    "global_lambda",
    "lambda_values",
    "normalize",
    "parse_eigenform",
    "serialize_eigenform",
    "sk_lift",
    "solve_form",
    "solve_satake",
]
