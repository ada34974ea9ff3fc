"""Small pass/fail report object shared by the verification routines."""

from dataclasses import dataclass, field

MAX_VIOLATIONS = 10


@dataclass
class Report:
    name: str
    ok: bool = True
    violations: list = field(default_factory=list)
    details: dict = field(default_factory=dict)
    truncated: int = 0

    def fail(self, msg):
        self.ok = False
        if len(self.violations) < MAX_VIOLATIONS:
            self.violations.append(msg)
        else:
            self.truncated += 1

    def check(self, cond, msg):
        if not cond:
            self.fail(msg)
        return cond

    def merge(self, other):
        """Fold a sub-report into this one, prefixing its messages."""
        if not other.ok:
            for v in other.violations:
                self.fail(f"{other.name}: {v}")
            self.truncated += other.truncated
        self.details[other.name] = other.ok
        return self

    def __bool__(self):
        return self.ok

    def to_dict(self):
        return {"name": self.name, "ok": self.ok, "violations": self.violations,
                "truncated": self.truncated, "details": _jsonable(self.details)}

    def summary(self):
        head = f"{'PASS' if self.ok else 'FAIL'} {self.name}"
        lines = [head] + [f"  - {v}" for v in self.violations]
        if self.truncated:
            lines.append(f"  ... {self.truncated} more")
        return "\n".join(lines)


def _jsonable(x):
    from fractions import Fraction
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (bool, int, float, str)) or x is None:
        return x
    return str(x)


def matrix_diff(report, got, want, label=""):
    """Record entrywise differences between two OperatorMatrix values."""
    if got.dim != want.dim:
        report.fail(f"{label} dimension {got.dim} != {want.dim}")
        return report
    if got == want:
        return report
    shown = 0
    for i, j, _ in (got - want).nonzero_entries():
        report.fail(f"{label} entry ({i + 1},{j + 1}): got {got[i, j]}, want {want[i, j]}")
        shown += 1
        if shown > MAX_VIOLATIONS:
            break
    return report
