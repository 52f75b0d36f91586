"""Certification pipelines, the conic oracle and the command line."""

from .oracle import OracleResult, conic_through_points_oracle
from .pipeline import (SCHEMA, Certificate, ConfigurationError, HypothesisError, QuarticSetup,
                       a2a1_lines, certify_a2a1, certify_harris, certify_theorem_main,
                       contact_points, geometric_class, measured_class, parity_record, prepare)

__all__ = [
    "SCHEMA", "Certificate", "ConfigurationError", "HypothesisError", "OracleResult",
    "QuarticSetup", "a2a1_lines", "certify_a2a1", "certify_harris", "certify_theorem_main",
    "conic_through_points_oracle", "contact_points", "geometric_class", "measured_class",
    "parity_record", "prepare",
]
