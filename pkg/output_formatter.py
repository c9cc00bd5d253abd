#!/usr/bin/env python3
"""
Verification reports and their console, JSON and file renderings
"""

import json
import os
from dataclasses import dataclass, field
from datetime import datetime
from typing import Any, Dict, List, Optional
import logging

logger = logging.getLogger("arrangements.output")

PASS = "pass"
FAIL = "fail"
SKIPPED = "skipped"

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


@dataclass
class Check:
    """One named assertion; witnesses are canonical polynomial or table text"""

    name: str
    status: str
    witness: Optional[str] = None
    detail: Optional[str] = None

    def to_dict(self) -> Dict[str, Any]:
        result = {'name': self.name, 'status': self.status}
        if self.witness is not None:
            result['witness'] = self.witness
        if self.detail is not None:
            result['detail'] = self.detail
        return result


@dataclass
class VerificationReport:
    """Checks, payload data and per-phase timings for one command or family"""

    subject: str
    checks: List[Check] = field(default_factory=list)
    data: Dict[str, Any] = field(default_factory=dict)
    notes: List[str] = field(default_factory=list)
    timings: Dict[str, float] = field(default_factory=dict)
    budget_exceeded: bool = False

    def add(self, name: str, passed: bool, witness: Optional[str] = None,
            detail: Optional[str] = None) -> Check:
        check = Check(name, PASS if passed else FAIL, witness, detail)
        self.checks.append(check)
        if not passed:
            logger.info(f"{self.subject}: check {name} failed ({detail or witness or 'no witness'})")
        return check

    def skip(self, name: str, detail: str) -> Check:
        check = Check(name, SKIPPED, detail=detail)
        self.checks.append(check)
        return check

    def budget(self, name: str, detail: str) -> Check:
        """Record a check abandoned because a step budget ran out"""
        self.budget_exceeded = True
        return self.skip(name, detail)

    @property
    def failures(self) -> List[Check]:
        return [c for c in self.checks if c.status == FAIL]

    @property
    def passed(self) -> bool:
        return not self.failures

    def counts(self) -> Dict[str, int]:
        return {status: sum(1 for c in self.checks if c.status == status)
                for status in (PASS, FAIL, SKIPPED)}

    @property
    def exit_code(self) -> int:
        if self.failures:
            return EXIT_FAIL
        return EXIT_BUDGET if self.budget_exceeded else EXIT_PASS

    def merge(self, other: "VerificationReport", prefix: Optional[str] = None) -> "VerificationReport":
        """Append another report's checks in order; its data nests under its subject"""
        label = prefix if prefix is not None else other.subject
        for check in other.checks:
            name = f"{label}:{check.name}" if label else check.name
            self.checks.append(Check(name, check.status, check.witness, check.detail))
        if other.data:
            self.data[label or other.subject] = other.data
        self.notes.extend(other.notes)
        for phase, seconds in other.timings.items():
            key = f"{label}:{phase}" if label else phase
            self.timings[key] = self.timings.get(key, 0.0) + seconds
        self.budget_exceeded = self.budget_exceeded or other.budget_exceeded
        return self

    def to_dict(self, include_timings: bool = True) -> Dict[str, Any]:
        result = {
            'subject': self.subject,
            'status': FAIL if self.failures else (SKIPPED if self.budget_exceeded else PASS),
            'exit_code': self.exit_code,
            'summary': self.counts(),
            'checks': [c.to_dict() for c in self.checks],
            'data': self.data,
            'notes': list(self.notes),
        }
        if include_timings:
            result['timings'] = dict(self.timings)
        return result


class ReportFormatter:
    """Renders reports to the console or to files under an output directory"""

    def __init__(self, output_dir: str = "results"):
        self.output_dir = output_dir
        self.timestamp = datetime.now().strftime("%Y%m%d_%H%M%S")

    def format_console_output(self, report: VerificationReport) -> str:
        output = []
        output.append("=" * 60)
        output.append(f"VERIFICATION REPORT: {report.subject}")
        output.append("=" * 60)

        if report.data:
            output.append("DATA:")
            output.append("-" * 40)
            for key, value in report.data.items():
                output.extend(self._format_value(key, value, "  "))
            output.append("")

        if report.checks:
            output.append("CHECKS:")
            output.append("-" * 40)
            for check in report.checks:
                line = f"  [{check.status.upper():7s}] {check.name}"
                if check.detail:
                    line += f"  ({check.detail})"
                output.append(line)
                if check.witness:
                    output.append(f"            witness: {check.witness}")
            output.append("")

        if report.notes:
            output.append("NOTES:")
            output.append("-" * 40)
            output.extend(f"  {note}" for note in report.notes)
            output.append("")

        if report.timings:
            output.append("TIMINGS:")
            output.append("-" * 40)
            for phase, seconds in report.timings.items():
                output.append(f"  {phase}: {seconds:.3f}s")
            output.append("")

        counts = report.counts()
        verdict = {0: "PASS", 1: "FAIL", 3: "BUDGET EXCEEDED"}[report.exit_code]
        output.append(f"Result: {verdict} ({counts[PASS]} passed, {counts[FAIL]} failed, "
                      f"{counts[SKIPPED]} skipped)")
        output.append("=" * 60)
        return "\n".join(output)

    def _format_value(self, key: str, value: Any, indent: str) -> List[str]:
        if isinstance(value, dict):
            lines = [f"{indent}{key}:"]
            for k, v in value.items():
                lines.extend(self._format_value(str(k), v, indent + "  "))
            return lines
        if isinstance(value, (list, tuple)) and any(isinstance(v, (list, dict, str)) for v in value):
            lines = [f"{indent}{key}:"]
            for v in value:
                rendered = v if isinstance(v, str) else json.dumps(v)
                lines.append(f"{indent}  {rendered}")
            return lines
        if isinstance(value, str) and "\n" in value:
            return [f"{indent}{key}:"] + [f"{indent}  {line}" for line in value.splitlines()]
        return [f"{indent}{key}: {value}"]

    def format_json(self, report: VerificationReport, include_timings: bool = True) -> str:
        return json.dumps(report.to_dict(include_timings), indent=2, sort_keys=True, ensure_ascii=False)

    def save_text_file(self, report: VerificationReport, filename: Optional[str] = None) -> str:
        os.makedirs(self.output_dir, exist_ok=True)
        filepath = os.path.join(self.output_dir, filename or f"{self._stem(report)}_{self.timestamp}.txt")
        with open(filepath, 'w', encoding='utf-8') as f:
            f.write(self.format_console_output(report) + "\n")
        logger.info(f"Report saved to text file: {filepath}")
        return filepath

    def save_json_file(self, report: VerificationReport, filename: Optional[str] = None) -> str:
        os.makedirs(self.output_dir, exist_ok=True)
        filepath = os.path.join(self.output_dir, filename or f"{self._stem(report)}_{self.timestamp}.json")
        with open(filepath, 'w', encoding='utf-8') as f:
            f.write(self.format_json(report) + "\n")
        logger.info(f"Report saved to JSON file: {filepath}")
        return filepath

    def save_all_formats(self, report: VerificationReport) -> Dict[str, str]:
        return {
            'text': self.save_text_file(report),
            'json': self.save_json_file(report),
        }

    @staticmethod
    def _stem(report: VerificationReport) -> str:
        stem = "".join(ch if ch.isalnum() else "_" for ch in report.subject)
        return stem.strip("_") or "report"
