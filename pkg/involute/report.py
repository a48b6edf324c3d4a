"""
Law-check reports.

A Report collects one LawResult per law for a single (suite, instance)
pair. Checks are counted; the first failing case of each law keeps its
witness.
"""

import json
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Iterable, List, Optional, Union

PASS = "pass"
FAIL = "fail"

Witness = Union[Any, Callable[[], Any]]


@dataclass
class LawResult:
    """Outcome of one law on one instance."""
    suite: str
    law: str
    instance: str
    verdict: str = PASS
    checked: int = 0
    witness: Any = None

    def to_record(self) -> Dict[str, Any]:
        record = {
            "suite": self.suite,
            "law": self.law,
            "instance": self.instance,
            "verdict": self.verdict,
            "checked": self.checked,
        }
        if self.witness is not None:
            record["witness"] = self.witness
        return record


@dataclass
class Report:
    """All law results for one suite run on one instance."""
    suite: str
    instance: str
    results: Dict[str, LawResult] = field(default_factory=dict)

    def _result(self, law: str) -> LawResult:
        if law not in self.results:
            self.results[law] = LawResult(self.suite, law, self.instance)
        return self.results[law]

    def check(self, law: str, ok: bool, witness: Witness = None) -> bool:
        """Record one case of `law`. Callable witnesses are only evaluated on failure."""
        result = self._result(law)
        result.checked += 1
        if not ok and result.verdict == PASS:
            result.verdict = FAIL
            result.witness = witness() if callable(witness) else witness
        return ok

    def note(self, law: str) -> None:
        """Register a law with zero cases so that it shows up as a (vacuous) pass."""
        self._result(law)

    def fail(self, law: str, witness: Any) -> None:
        self.check(law, False, witness)

    def merge(self, other: "Report") -> "Report":
        for law, res in other.results.items():
            mine = self._result(law)
            mine.checked += res.checked
            if res.verdict == FAIL and mine.verdict == PASS:
                mine.verdict = FAIL
                mine.witness = res.witness
        return self

    def verdict(self, law: str) -> str:
        return self.results[law].verdict

    @property
    def passed(self) -> bool:
        return all(r.verdict == PASS for r in self.results.values())

    def failures(self) -> List[LawResult]:
        return [r for r in self.sorted_results() if r.verdict == FAIL]

    def sorted_results(self) -> List[LawResult]:
        return sorted(
            self.results.values(),
            key=lambda r: (r.law, json.dumps(r.witness, sort_keys=True)),
        )

    def to_records(self) -> List[Dict[str, Any]]:
        return [r.to_record() for r in self.sorted_results()]


def all_passed(reports: Iterable[Report]) -> bool:
    return all(r.passed for r in reports)


def first_failure(reports: Iterable[Report]) -> Optional[LawResult]:
    for report in reports:
        failures = report.failures()
        if failures:
            return failures[0]
    return None
