"""Empirical estimation of the constants in the operator inequalities."""

from .experiments import (STRONG_TAGS, WEAK_TAGS, GoodSetResult, MembershipRow, canonical_tag,
                          good_lambda_experiment, good_set_experiment, good_set_family_experiment,
                          hedberg_experiment, membership_phase_scan, power_weight_range,
                          required_profile, strong_type_experiment, weak_type_experiment)
from .families import DEFAULT_SEED, KINDS, Case, TestFamily, generator
from .report import CaseResult, EmpiricalConstantReport, build_report

__all__ = [
    "STRONG_TAGS", "WEAK_TAGS", "GoodSetResult", "MembershipRow", "canonical_tag",
    "good_lambda_experiment", "good_set_experiment", "good_set_family_experiment",
    "hedberg_experiment", "membership_phase_scan", "power_weight_range", "required_profile",
    "strong_type_experiment", "weak_type_experiment", "DEFAULT_SEED", "KINDS", "Case",
    "TestFamily", "generator", "CaseResult", "EmpiricalConstantReport", "build_report",
]
