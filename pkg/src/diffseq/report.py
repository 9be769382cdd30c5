from __future__ import annotations

from dataclasses import dataclass, field

from .errors import VerificationFailure


@dataclass
class Report:
    """Record of a verification that succeeded.

    Failed checks never produce a Report; they raise VerificationFailure.
    """

    module: str
    operation: str
    n: int | None = None
    checks: list = field(default_factory=list)
    data: dict = field(default_factory=dict)

    passed = True

    def check(self, name, residual, stage=None, index=None):
        """Record ``name`` as passing if ``residual`` is zero, raise otherwise."""
        if residual:
            raise VerificationFailure(
                self.module, self.operation, f"{name} does not hold", residual, stage, index
            )
        self.checks.append(name)

    def to_json(self):
        from .render import to_jsonable

        out = {"module": self.module, "operation": self.operation}
        if self.n is not None:
            out["n"] = self.n
        out["passed"] = True
        out["checks"] = list(self.checks)
        if self.data:
            out["data"] = to_jsonable(self.data)
        return out

    def to_text(self):
        head = f"{self.module}.{self.operation}"
        if self.n is not None:
            head += f" n={self.n}"
        return f"{head}: PASS ({len(self.checks)} checks)"


def failure_json(exc):
    from .render import to_jsonable

    residual = exc.residual
    if hasattr(residual, "to_json"):
        residual = residual.to_json()
    return {
        "module": exc.module,
        "operation": exc.operation,
        "stage": exc.stage,
        "index": to_jsonable(exc.index),
        "message": str(exc),
        "residual": to_jsonable(residual),
    }
