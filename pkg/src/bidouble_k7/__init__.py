"""Exact verification of a bidouble-cover construction of surfaces with K^2 = 7, p_g = 0."""
from .construction import free_point, w_configuration
from .curves import CurveCatalog, NamedCurve, build_standard_catalog
from .lattice import BlowupConfiguration, DivisorClass, parse_class_spec
from .riemann_roch import h0, riemann_roch_chi
from .verifier import VerificationReport, verify, verify_all

__version__ = "0.1.0"

__all__ = [
    "BlowupConfiguration",
    "CurveCatalog",
    "DivisorClass",
    "NamedCurve",
    "VerificationReport",
    "build_standard_catalog",
    "free_point",
    "h0",
    "parse_class_spec",
    "riemann_roch_chi",
    "verify",
    "verify_all",
    "w_configuration",
]
