"""
Violation reporting and summarisation for witness-check runs.
"""

from collections import Counter
from typing import Any, Dict, List, Mapping, Optional

from ..checks.detector import Severity, Violation

_SEVERITY_ORDER = [Severity.CRITICAL, Severity.HIGH, Severity.MEDIUM, Severity.LOW]


class ViolationSummary:
    """Summaries of the violations found by a CheckManager run."""

    def __init__(self, results: Optional[Mapping[str, int]] = None):
        self.violations: List[Violation] = []
        self.results: Dict[str, int] = dict(results or {})

    def add_violations(self, violations: List[Violation]):
        self.violations.extend(violations)

    def generate_summary(self) -> Dict[str, Any]:
        return {
            'total_violations': len(self.violations),
            'by_severity': dict(Counter(v.severity.value for v in self.violations)),
            'by_check': dict(Counter(v.check_name for v in self.violations)),
            'by_solution': dict(Counter(v.solution for v in self.violations if v.solution is not None)),
            'checks': self.results,
            'violations': [v.to_dict() for v in self.violations],
        }

    def format_summary(self, limit: int = 20) -> str:
        """Console summary: per-check status, then the first `limit` violations by severity."""
        summary = self.generate_summary()
        lines = ["", "=" * 60, "WITNESS CHECK SUMMARY", "=" * 60]
        lines.append(f"{'Check':<24} {'Status':<10} {'Violations':<10}")
        lines.append("-" * 50)
        for name, count in self.results.items():
            status = "skipped" if count < 0 else ("ok" if count == 0 else "FAILED")
            shown = "-" if count < 0 else str(count)
            lines.append(f"{name:<24} {status:<10} {shown:<10}")
        lines.append("-" * 50)
        lines.append(f"Total violations: {summary['total_violations']}")
        if not self.violations:
            return "\n".join(lines)

        for severity in _SEVERITY_ORDER:
            count = summary['by_severity'].get(severity.value, 0)
            if count:
                lines.append(f"  {severity.value.upper():<10} {count}")
        ranked = sorted(self.violations, key=lambda v: _SEVERITY_ORDER.index(v.severity))
        lines.append("")
        for v in ranked[:limit]:
            where = f" [{v.solution}]" if v.solution else ""
            lines.append(f"  {v.severity.value.upper():<9} {v.check_name}{where}: {v.message}")
        if len(ranked) > limit:
            lines.append(f"  ... {len(ranked) - limit} more")
        return "\n".join(lines)
