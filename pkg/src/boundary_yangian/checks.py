from __future__ import annotations

from dataclasses import dataclass


@dataclass
class Check:
    """Outcome of one exact identity check.

    ``residual`` is the serialized nonzero remainder and is set only when the
    check fails; ``errored`` marks checks that could not be evaluated at all
    (e.g. a capacity overflow) as opposed to evaluating to a nonzero residual.
    """

    name: str
    passed: bool
    residual: str | None = None
    detail: str | None = None
    errored: bool = False

    @property
    def status(self) -> str:
        if self.errored:
            return "error"
        return "pass" if self.passed else "fail"


def residual_check(name: str, residual, detail: str | None = None) -> Check:
    """Pass iff ``residual`` is zero; keep its text form otherwise."""
    ok = not residual
    return Check(name, ok, None if ok else str(residual), detail)


def all_passed(checks) -> bool:
    return all(c.passed and not c.errored for c in checks)
