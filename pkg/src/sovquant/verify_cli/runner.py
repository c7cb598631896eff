"""Scenario execution and the built-in scenarios."""

import time

from .. import __version__
from ..errors import SovQuantError
from ..levi_geometry import DefiningFunction, PointCase
from .checks import CORE_CHECKS, PointContext, Skip, run_check
from .config import BasePoint, ScenarioConfig
from .report import FAIL, PASS, SKIPPED, Record, Report, summarize


def _error_names(exc):
    return {cls.__name__ for cls in type(exc).__mro__}


def _describe(exc):
    case = getattr(exc, "case", None)
    name = type(exc).__name__
    return f"{name} ({case}): {exc}" if case else f"{name}: {exc}"


def run_scenario(config):
    """Run every configured check at every base point and collect a :class:`Report`.

    Module errors become failed records unless the base point lists the error
    class in ``expected_errors``, in which case the record passes.
    """
    report = Report(
        metadata={
            "scenario": config.name,
            "orders": {"jet_order": config.jet_order, "nu_order": config.nu_order},
            "seed": config.seed,
            "version": __version__,
        }
    )
    for index, point in enumerate(config.base_points):
        if not config.checks:
            continue
        coords = point.to_json()
        ctx = PointContext(config.defining_function, point, config.jet_order, config.nu_order, config.seed, index)
        seen = set()
        for name in config.checks:
            start = time.perf_counter()
            note = ""
            try:
                outcome = run_check(name, ctx)
            except Skip as exc:
                status, summary, note = SKIPPED, "0", str(exc)
            except SovQuantError as exc:
                expected = _error_names(exc) & set(point.expected_errors)
                seen |= expected
                status = PASS if expected else FAIL
                summary = "0" if expected else "error"
                note = ("expected " if expected else "") + _describe(exc)
            except Exception as exc:  # a crash inside a check is a failed record, not a crash of the tool
                status, summary, note = FAIL, "error", f"{type(exc).__name__}: {exc}"
            else:
                summary = summarize(outcome.residuals)
                status = PASS if summary == "0" else FAIL
                note = outcome.note
                if status == FAIL:
                    bad = [label for label, r in outcome.residuals if summarize([(label, r)]) != "0"]
                    note = "; ".join(filter(None, [note, "nonzero: " + ", ".join(bad)]))
            report.records.append(Record(name, coords, status, summary, time.perf_counter() - start, note))
        missing = set(point.expected_errors) - seen
        if missing:
            report.records.append(
                Record("expected-errors", coords, FAIL, "0", 0.0, "declared but not raised: " + ", ".join(sorted(missing)))
            )
    return report


# ---------------------------------------------------------------------- built-in scenarios


def _axis_point(n, value):
    return tuple([value] + [0] * (n - 1))


def default_orders(nu_order=None, jet_order=None):
    R = 3 if nu_order is None else nu_order
    J = max(10, 2 * R + 4) if jet_order is None else jet_order
    return J, R


def sphere_scenario(n, nu_order=None, jet_order=None, seed=0, checks=None):
    """Unit sphere: one base point on S and one off S."""
    J, R = default_orders(nu_order, jet_order)
    points = (
        BasePoint(_point(_axis_point(n, 1)), PointCase.CASE2),
        BasePoint(_point(_axis_point(n, 2)), PointCase.CASE1),
    )
    return ScenarioConfig(
        n, DefiningFunction.sphere(n), points, J, R, tuple(CORE_CHECKS if checks is None else checks), seed, f"sphere-n{n}"
    )


def cylinder_scenario(nu_order=None, jet_order=None, seed=0):
    """|z^1|^2 = 1 in C^2 at (1, 0): Levi-degenerate, Gamma singular (expected)."""
    J, R = default_orders(nu_order, jet_order)
    points = (BasePoint(_point((1, 0)), PointCase.CASE2, ("GammaSingular",)),)
    return ScenarioConfig(2, DefiningFunction.cylinder(2), points, J, R, CORE_CHECKS, seed, "cylinder")


def flat_scenario(n=1, nu_order=None, jet_order=None, seed=0):
    """Flat potential sum z zbar compared with the Wick product oracle.

    The defining function psi = 1 + sum |z|^2 only supplies the dimension and the
    base point; the flat check does not use it.
    """
    J, R = default_orders(4 if nu_order is None else nu_order, jet_order)
    e = [tuple(int(i == k) for i in range(n)) for k in range(n)]
    psi = DefiningFunction(n, tuple((a, a, 1) for a in e) + (((0,) * n, (0,) * n, 1),))
    points = (BasePoint(_point((0,) * n), PointCase.CASE1),)
    return ScenarioConfig(n, psi, points, J, R, ("classification", "flat-oracle"), seed, f"flat-n{n}")


def _point(coords):
    from ..formal_core import GaussianRational

    return tuple(GaussianRational.coerce(c) for c in coords)


BUILTINS = {
    "flat": flat_scenario,
    "sphere": lambda **kw: sphere_scenario(1, **kw),
    "cylinder": cylinder_scenario,
}


def builtin_scenario(name, **orders):
    try:
        factory = BUILTINS[name]
    except KeyError:
        raise KeyError(f"unknown built-in scenario {name!r}; choose from {', '.join(BUILTINS)}") from None
    return factory(**orders)


def sphere_demo(n, nu_order=None, jet_order=None, seed=0):
    """Full suite on the unit sphere in C^n plus the closed-form inverse metric check.

    n = 3 defaults to nu-order 2 to keep the run short.
    """
    if n not in (1, 2, 3):
        raise ValueError("sphere_demo supports n in {1, 2, 3}")
    if nu_order is None and n == 3:
        nu_order = 2
    config = sphere_scenario(n, nu_order, jet_order, seed, CORE_CHECKS + ("closed-form-metric",))
    return run_scenario(config)


__all__ = [
    "run_scenario",
    "sphere_demo",
    "sphere_scenario",
    "cylinder_scenario",
    "flat_scenario",
    "builtin_scenario",
    "BUILTINS",
    "PASS",
    "FAIL",
    "SKIPPED",
]
