"""Structured verdicts for verification batteries."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class CheckReport:
    """Outcome of one randomized (or exhaustive) check battery.

    ``max_residual`` is the worst relative residual seen; ``passed`` is
    equivalent to ``max_residual <= tol``.  ``witnesses`` keeps the worst
    few trials so a failure can be replayed from ``(seed, trial)``.
    ``checks`` carries named sub-residuals/sub-verdicts for composite
    batteries (axiom validation, classify).
    """

    name: str
    trials: int
    max_residual: float
    passed: bool
    seed: int
    tol: float
    witnesses: tuple = ()
    checks: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        out = {
            "name": self.name,
            "trials": self.trials,
            "max_residual": float(self.max_residual),
            "pass": bool(self.passed),
            "seed": self.seed,
            "witnesses": [dict(w) for w in self.witnesses],
        }
        if self.checks:
            out["checks"] = dict(self.checks)
        return out


def make_report(name, trials, seed, tol, residuals, witnesses=(), checks=None,
                passed=None) -> CheckReport:
    """Assemble a report from a residual list; pass iff max <= tol."""
    max_residual = float(max(residuals, default=0.0))
    if passed is None:
        passed = max_residual <= tol
    return CheckReport(
        name=name,
        trials=trials,
        max_residual=max_residual,
        passed=bool(passed),
        seed=seed,
        tol=tol,
        witnesses=tuple(witnesses),
        checks=dict(checks or {}),
    )


def worst_witnesses(entries, keep=3):
    """The ``keep`` largest-residual witness dicts, ordered worst first.

    ``entries`` is an iterable of dicts each carrying a ``"residual"`` key.
    """
    ranked = sorted(entries, key=lambda w: w["residual"], reverse=True)
    return tuple(ranked[:keep])
