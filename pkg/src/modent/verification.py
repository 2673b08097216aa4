"""Result type returned by the exhaustive and symbolic verifiers."""

from dataclasses import dataclass, field


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of a verification run.

    `checks` counts the individual assertions that were evaluated and
    `failures` holds a human-readable line per violation (empty on success).
    Extra measured quantities (dimensions, generators, ...) go in `data`.
    """

    name: str
    checks: int
    failures: tuple = ()
    data: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures

    def __bool__(self) -> bool:
        return self.passed

    def summary(self) -> str:
        status = "pass" if self.passed else "fail"
        line = f"{self.name}: {status} ({self.checks} checks"
        if self.failures:
            line += f", {len(self.failures)} failures"
        return line + ")"
