"""Scenario configuration: parsing and validation of JSON scenario files."""

import json
from dataclasses import dataclass, field

from ..errors import ConfigError
from ..formal_core import GaussianRational
from ..formal_core.gaussian import parse_rational
from ..levi_geometry import DefiningFunction, PointCase

CONFIG_FIELDS = {
    "name",
    "dimension",
    "defining_function",
    "base_points",
    "jet_order",
    "nu_order",
    "checks",
    "seed",
}
REQUIRED_FIELDS = {"dimension", "defining_function", "base_points", "jet_order", "nu_order"}
TERM_FIELDS = {"z_exponents", "zbar_exponents", "coeff_re", "coeff_im"}
POINT_FIELDS = {"coordinates", "expected_case", "expected_errors"}
_CASES = {c.value.lower(): c for c in PointCase}


@dataclass(frozen=True)
class BasePoint:
    coordinates: tuple
    expected_case: PointCase = None
    expected_errors: tuple = ()

    def to_json(self):
        return [c.to_json() for c in self.coordinates]


@dataclass(frozen=True)
class ScenarioConfig:
    dimension: int
    defining_function: DefiningFunction
    base_points: tuple
    jet_order: int
    nu_order: int
    checks: tuple = ()
    seed: int = 0
    name: str = "scenario"
    raw_terms: list = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        validate_orders(self.jet_order, self.nu_order)

    def with_orders(self, jet_order=None, nu_order=None):
        """Copy with overridden truncation orders (re-validated)."""
        return ScenarioConfig(
            self.dimension,
            self.defining_function,
            self.base_points,
            self.jet_order if jet_order is None else jet_order,
            self.nu_order if nu_order is None else nu_order,
            self.checks,
            self.seed,
            self.name,
            self.raw_terms,
        )


def validate_orders(jet_order, nu_order):
    if not isinstance(jet_order, int) or not isinstance(nu_order, int):
        raise ConfigError("jet_order and nu_order must be integers")
    if nu_order < 0:
        raise ConfigError("nu_order must be non-negative")
    if jet_order < 2 * nu_order + 2:
        raise ConfigError(f"jet_order {jet_order} violates jet_order >= 2 * nu_order + 2 (nu_order {nu_order})")


def _reject_unknown(obj, allowed, where):
    if not isinstance(obj, dict):
        raise ConfigError(f"{where} must be an object")
    unknown = set(obj) - allowed
    if unknown:
        raise ConfigError(f"unknown field(s) in {where}: {', '.join(sorted(unknown))}")


def _int(value, where):
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"{where} must be an integer")
    return value


def _parse_term(term, n, idx):
    where = f"defining_function[{idx}]"
    _reject_unknown(term, TERM_FIELDS, where)
    try:
        alpha = tuple(_int(a, where) for a in term["z_exponents"])
        beta = tuple(_int(b, where) for b in term["zbar_exponents"])
        re = parse_rational(term.get("coeff_re", 0))
        im = parse_rational(term.get("coeff_im", 0))
    except KeyError as exc:
        raise ConfigError(f"{where} is missing {exc.args[0]}") from None
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{where}: {exc}") from None
    if len(alpha) != n or len(beta) != n:
        raise ConfigError(f"{where}: exponent vectors must have length {n}")
    return alpha, beta, GaussianRational(re, im)


def _parse_point(point, n, idx):
    where = f"base_points[{idx}]"
    _reject_unknown(point, POINT_FIELDS, where)
    if "coordinates" not in point:
        raise ConfigError(f"{where} is missing coordinates")
    coords = point["coordinates"]
    if not isinstance(coords, list) or len(coords) != n:
        raise ConfigError(f"{where}: coordinates must be a list of {n} entries")
    try:
        parsed = tuple(GaussianRational.from_json(c) for c in coords)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{where}: {exc}") from None
    case = point.get("expected_case")
    if case is not None:
        if not isinstance(case, str) or case.lower() not in _CASES:
            raise ConfigError(f"{where}: expected_case must be one of Case1, Case2, Critical")
        case = _CASES[case.lower()]
    errors = point.get("expected_errors", [])
    if not isinstance(errors, list) or not all(isinstance(e, str) for e in errors):
        raise ConfigError(f"{where}: expected_errors must be a list of error class names")
    return BasePoint(parsed, case, tuple(errors))


def parse_config(data):
    """Validate a decoded JSON object and build a :class:`ScenarioConfig`."""
    from .checks import CHECKS

    _reject_unknown(data, CONFIG_FIELDS, "config")
    missing = REQUIRED_FIELDS - set(data)
    if missing:
        raise ConfigError(f"config is missing: {', '.join(sorted(missing))}")
    n = _int(data["dimension"], "dimension")
    if n < 1:
        raise ConfigError("dimension must be >= 1")
    terms = data["defining_function"]
    if not isinstance(terms, list):
        raise ConfigError("defining_function must be a list of terms")
    psi = DefiningFunction(n, tuple(_parse_term(t, n, i) for i, t in enumerate(terms)))
    points = data["base_points"]
    if not isinstance(points, list):
        raise ConfigError("base_points must be a list")
    checks = data.get("checks", list(CHECKS))
    if not isinstance(checks, list):
        raise ConfigError("checks must be a list of names")
    unknown = [c for c in checks if c not in CHECKS]
    if unknown:
        raise ConfigError(f"unknown check(s): {', '.join(unknown)}")
    return ScenarioConfig(
        dimension=n,
        defining_function=psi,
        base_points=tuple(_parse_point(p, n, i) for i, p in enumerate(points)),
        jet_order=_int(data["jet_order"], "jet_order"),
        nu_order=_int(data["nu_order"], "nu_order"),
        checks=tuple(checks),
        seed=_int(data.get("seed", 0), "seed"),
        name=str(data.get("name", "scenario")),
        raw_terms=terms,
    )


def load_config(path):
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON ({exc})") from None
    return parse_config(data)


def config_to_json(config):
    """Serialize a config back to its JSON form."""
    terms = []
    for alpha, beta, c in config.defining_function.terms:
        terms.append(
            {
                "z_exponents": list(alpha),
                "zbar_exponents": list(beta),
                "coeff_re": str(c.re),
                "coeff_im": str(c.im),
            }
        )
    points = []
    for p in config.base_points:
        entry = {"coordinates": p.to_json()}
        if p.expected_case is not None:
            entry["expected_case"] = p.expected_case.value
        if p.expected_errors:
            entry["expected_errors"] = list(p.expected_errors)
        points.append(entry)
    return {
        "name": config.name,
        "dimension": config.dimension,
        "defining_function": terms,
        "base_points": points,
        "jet_order": config.jet_order,
        "nu_order": config.nu_order,
        "checks": list(config.checks),
        "seed": config.seed,
    }
