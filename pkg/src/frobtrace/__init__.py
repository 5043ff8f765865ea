"""Exact algebra in prime characteristic: Frobenius roots, p^{-e}-linear maps,
trace maps of finite extensions and test ideals."""

from __future__ import annotations

from .divisors import PrimeTable, QDivisor, divisor_of, format_divisor, parse_divisor, pullback
from .errors import (
    FrobtraceError,
    Inconclusive,
    NeedTestElement,
    NonIntegral,
    NonMonogenic,
    NotDivisible,
    ParseError,
    PreconditionError,
    ResourceExceeded,
    RingMismatch,
    UncoveredFactor,
    UnknownVariable,
    ZeroTrace,
)
from .extension import (
    MonogenicExtension,
    PresentedExtension,
    TraceLike,
    ext_monogenic,
    ext_presented,
    surjectivity_certificate,
    tracelike_from_values,
)
from .factor import is_irreducible, univariate_factor
from .frobenius import apply_pmap, cartier_apply, fedder_test, frob_root, pe_decompose
from .groebner import Ideal, configured, groebner_basis, ideal_equal, ideal_membership, limits, normal_form
from .pmaps import PMapKey, commute_check, delta_of_key, iterate_map, key_from_values, key_of_delta, transpose_key
from .polys import Poly, PolyRing
from .session import Options, Session, run_session
from .testideal import (
    FractionalIdeal,
    Hypersurface,
    fpt_estimate,
    is_sharply_F_pure,
    is_strongly_F_regular,
    skoda_check,
    tau,
    tau_hypersurface,
    verify_containment_extension,
    verify_intersection,
    verify_transformation,
)

__version__ = "0.1.0"

__all__ = [
    "FractionalIdeal",
    "FrobtraceError",
    "Hypersurface",
    "Ideal",
    "Inconclusive",
    "MonogenicExtension",
    "NeedTestElement",
    "NonIntegral",
    "NonMonogenic",
    "NotDivisible",
    "Options",
    "PMapKey",
    "ParseError",
    "Poly",
    "PolyRing",
    "PreconditionError",
    "PresentedExtension",
    "PrimeTable",
    "QDivisor",
    "ResourceExceeded",
    "RingMismatch",
    "Session",
    "TraceLike",
    "UncoveredFactor",
    "UnknownVariable",
    "ZeroTrace",
    "apply_pmap",
    "cartier_apply",
    "commute_check",
    "configured",
    "delta_of_key",
    "divisor_of",
    "ext_monogenic",
    "ext_presented",
    "fedder_test",
    "format_divisor",
    "fpt_estimate",
    "frob_root",
    "groebner_basis",
    "ideal_equal",
    "ideal_membership",
    "is_irreducible",
    "is_sharply_F_pure",
    "is_strongly_F_regular",
    "iterate_map",
    "key_from_values",
    "key_of_delta",
    "limits",
    "normal_form",
    "parse_divisor",
    "pe_decompose",
    "pullback",
    "run_session",
    "skoda_check",
    "surjectivity_certificate",
    "tau",
    "tau_hypersurface",
    "tracelike_from_values",
    "transpose_key",
    "univariate_factor",
    "verify_containment_extension",
    "verify_intersection",
    "verify_transformation",
]
