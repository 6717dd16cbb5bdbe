"""Relation checks, move corpus, planarity obstruction and engine cross-checks."""

from .checks import (
    SUITES,
    PlanarityVerdict,
    Verdict,
    basepoint_covariance,
    check_pair,
    check_relation,
    chirality,
    cross_engine_check,
    cross_pipeline_check,
    link_sanity,
    nonvanishing_report,
    planarity_obstruction,
    run_suite,
    skein_check,
)
from .corpus import CorpusPair, Move, diagram_corpus, move_corpus, named_diagrams, random_planar
from .moves import insert_rii, insert_twist, insert_twist_pair, rii_sites, smooth_crossing
from .relations import RELATIONS, legal_bindings, relation_instances
from .report import CheckResult, Report

__all__ = [
    "RELATIONS",
    "SUITES",
    "CheckResult",
    "CorpusPair",
    "Move",
    "PlanarityVerdict",
    "Report",
    "Verdict",
    "basepoint_covariance",
    "check_pair",
    "check_relation",
    "chirality",
    "cross_engine_check",
    "cross_pipeline_check",
    "diagram_corpus",
    "insert_rii",
    "insert_twist",
    "insert_twist_pair",
    "legal_bindings",
    "link_sanity",
    "move_corpus",
    "named_diagrams",
    "nonvanishing_report",
    "planarity_obstruction",
    "random_planar",
    "relation_instances",
    "rii_sites",
    "run_suite",
    "skein_check",
    "smooth_crossing",
]
