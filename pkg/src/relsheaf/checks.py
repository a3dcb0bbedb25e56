from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Check:
    """Outcome of one law check on one instance."""

    law: str
    passed: bool
    counterexample: str = ""
    instance: str = ""

    def __post_init__(self):
        if not self.passed and not self.counterexample:
            raise ValueError(f"failed check {self.law!r} must carry a counterexample")


def check(law: str, problem, instance: str = "") -> Check:
    """Build a Check from a violation value: None (or False-y) means the law holds."""
    if problem is None or problem is False:
        return Check(law, True, "", instance)
    text = problem if isinstance(problem, str) else repr(problem)
    return Check(law, False, text or "violated", instance)
