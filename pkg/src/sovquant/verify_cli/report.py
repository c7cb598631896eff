"""Check records, exact residual summaries and report serialization."""

import json
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational

from ..formal_core import FiberGradedJet, FormalSeries, GaussianRational, Jet
from ..sov_engine import ResidualReport

PASS = "pass"
FAIL = "fail"
SKIPPED = "skipped"


def magnitude(x):
    """Largest |re| or |im| of any coefficient inside a residual (exact)."""
    if x is None:
        return Fraction(0)
    if isinstance(x, (int, Rational)):
        return abs(Fraction(x))
    if isinstance(x, GaussianRational):
        return max(abs(x.re), abs(x.im))
    if isinstance(x, (Jet, FiberGradedJet)):
        return x.max_abs_part()
    if isinstance(x, FormalSeries):
        return max((magnitude(c) for c in x.coeffs.values()), default=Fraction(0))
    if isinstance(x, ResidualReport):
        return magnitude(list(x.residuals.values()))
    if isinstance(x, dict):
        return magnitude(list(x.values()))
    if isinstance(x, (list, tuple)):
        return max((magnitude(y) for y in x), default=Fraction(0))
    raise TypeError(f"cannot summarize residual of type {type(x).__name__}")


def summarize(residuals):
    """``"0"`` if every residual vanishes, else the max magnitude as a "p/q" string."""
    m = magnitude([r for _, r in residuals])
    return "0" if m == 0 else str(m)


@dataclass
class Record:
    name: str
    base_point: list
    status: str
    residual_summary: str
    timing: float
    note: str = ""

    def to_json(self, timing=True):
        out = {
            "name": self.name,
            "base_point": self.base_point,
            "status": self.status,
            "residual_summary": self.residual_summary,
        }
        if timing:
            out["timing"] = round(self.timing, 6)
        out["note"] = self.note
        return out


@dataclass
class Report:
    records: list = field(default_factory=list)
    metadata: dict = field(default_factory=dict)

    @property
    def passed(self):
        return all(r.status != FAIL for r in self.records)

    def counts(self):
        out = {PASS: 0, FAIL: 0, SKIPPED: 0}
        for r in self.records:
            out[r.status] += 1
        return out

    def to_json(self, timing=True):
        return {
            "metadata": self.metadata,
            "overall": PASS if self.passed else FAIL,
            "records": [r.to_json(timing) for r in self.records],
        }

    def body(self):
        """Serialized report without timings, for determinism comparisons."""
        return json.dumps(self.to_json(timing=False), indent=2)

    def dumps(self):
        return json.dumps(self.to_json(), indent=2)

    def to_text(self):
        lines = [f"scenario {self.metadata.get('scenario', '?')}: {self.metadata.get('orders')}"]
        for r in self.records:
            point = "(" + ", ".join(_point_str(c) for c in r.base_point) + ")"
            line = f"{r.status.upper():7} {r.name:18} {point:16} residual={r.residual_summary} [{r.timing:.3f}s]"
            if r.note:
                line += f"  {r.note}"
            lines.append(line)
        c = self.counts()
        lines.append(f"overall: {PASS if self.passed else FAIL} ({c[PASS]} pass, {c[FAIL]} fail, {c[SKIPPED]} skipped)")
        return "\n".join(lines)


def _point_str(c):
    re, im = c["re"], c["im"]
    if im == "0":
        return re
    return f"{re}{'' if im.startswith('-') else '+'}{im}i"
