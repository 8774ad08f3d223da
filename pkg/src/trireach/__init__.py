"""Exact toolkit for second-neighborhood reach bounds in degree-constrained
tripartite graphs: verification, certified witness constructions, region
predicates with a consistency checker, and a brute-force oracle."""

from .graphs import (
    ConstraintParams,
    Fn,
    LemmaOutcome,
    Mode,
    Tripartition,
    VerificationReport,
    WeightedTripartite,
    blow_up,
    check_expansion_lemma,
    max_reach,
    second_neighborhood,
    verify,
)
from .oracle import OracleQuery, cross_check, exhaustive_min_max, randomized_upper_bound
from .rationals import Rational, cayley_bound, format_rational, parse_rational
from .regions import evaluate_point, predicate_catalog, scan_grid
from .witnesses import (
    CertificationError,
    ConstructionError,
    Witness,
    certify,
    circulant_witness,
    extend_phi,
    extend_psi_bottom,
    extend_psi_top,
    interval_witness,
    load_witness,
    save_witness,
)

__all__ = [
    "ConstraintParams",
    "Fn",
    "LemmaOutcome",
    "Mode",
    "Tripartition",
    "VerificationReport",
    "WeightedTripartite",
    "blow_up",
    "check_expansion_lemma",
    "max_reach",
    "second_neighborhood",
    "verify",
    "OracleQuery",
    "cross_check",
    "exhaustive_min_max",
    "randomized_upper_bound",
    "Rational",
    "cayley_bound",
    "format_rational",
    "parse_rational",
    "evaluate_point",
    "predicate_catalog",
    "scan_grid",
    "CertificationError",
    "ConstructionError",
    "Witness",
    "certify",
    "circulant_witness",
    "extend_phi",
    "extend_psi_bottom",
    "extend_psi_top",
    "interval_witness",
    "load_witness",
    "save_witness",
]
