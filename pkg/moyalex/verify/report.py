"""Check results and their JSON / JUnit renderings."""

import json
import xml.etree.ElementTree as ET
from pathlib import Path
from typing import Iterable, Union

from pydantic import BaseModel


class CheckResult(BaseModel):
    """One executed check; ``detail`` names the rule and the first difference on failure."""

    id: str
    suite: str
    name: str
    passed: bool
    detail: str = ""
    colors: dict[str, int] = {}


class Report(BaseModel):
    suite: str
    results: list[CheckResult] = []

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def failures(self) -> list[CheckResult]:
        return [r for r in self.results if not r.passed]

    def extend(self, results: Iterable[CheckResult]) -> None:
        self.results.extend(results)

    def merged(self, other: "Report") -> "Report":
        """Union of both reports, ordered by check id."""
        results = sorted([*self.results, *other.results], key=lambda r: r.id)
        suite = self.suite if self.suite == other.suite else f"{self.suite}+{other.suite}"
        return Report(suite=suite, results=results)

    def summary(self) -> str:
        failed = len(self.failures())
        return f"{self.suite}: {len(self.results) - failed} passed, {failed} failed"

    def to_json(self) -> str:
        data = self.model_dump()
        data["passed"] = self.passed
        return json.dumps(data, indent=2, sort_keys=True)

    def to_junit(self) -> str:
        suites = ET.Element("testsuites")
        by_suite: dict[str, list[CheckResult]] = {}
        for r in self.results:
            by_suite.setdefault(r.suite, []).append(r)
        for name in sorted(by_suite):
            results = by_suite[name]
            node = ET.SubElement(
                suites,
                "testsuite",
                name=name,
                tests=str(len(results)),
                failures=str(sum(1 for r in results if not r.passed)),
            )
            for r in results:
                case = ET.SubElement(node, "testcase", classname=f"moyalex.{name}", name=r.id)
                if not r.passed:
                    failure = ET.SubElement(case, "failure", message=r.name)
                    failure.text = r.detail
        ET.indent(suites)
        return ET.tostring(suites, encoding="unicode")

    def write(self, path: Union[str, Path], junit: bool = False) -> None:
        Path(path).write_text((self.to_junit() if junit else self.to_json()) + "\n", encoding="utf-8")
