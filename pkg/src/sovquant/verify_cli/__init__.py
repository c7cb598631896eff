"""Scenario loading, the verification check registry, reports and the command line."""

from .checks import CHECKS, CORE_CHECKS, DESCRIPTIONS
from .config import BasePoint, ScenarioConfig, load_config, parse_config
from .report import Record, Report
from .runner import builtin_scenario, run_scenario, sphere_demo

__all__ = [
    "CHECKS",
    "CORE_CHECKS",
    "DESCRIPTIONS",
    "BasePoint",
    "ScenarioConfig",
    "load_config",
    "parse_config",
    "Record",
    "Report",
    "builtin_scenario",
    "run_scenario",
    "sphere_demo",
]
