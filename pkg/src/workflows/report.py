"""
Check and report records for weylfree
Provides the status enums, per-check results and decomposition reports
with JSON, YAML and CSV serialization
"""

import csv
import io
import json
import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, List, Optional

import yaml

logger = logging.getLogger('report')

REPORT_VERSION = "1.0"


class CheckStatus(Enum):
    """Outcome of a single verification"""
    PASSED = "passed"
    FAILED = "failed"
    SKIPPED = "skipped"


class ReportFamily(Enum):
    """Decomposition families a report can describe"""
    A_IN_WEYL = "A_in_Weyl"
    E6_OVER_D5 = "E6_over_D5"


def plain(value: Any) -> Any:
    """Render a value with only JSON-native types

    Fractions become "p/q" strings, tuples become lists and enums their values.
    """
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, dict):
        return {str(plain(k)): plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = [plain(v) for v in value]
        return sorted(items, key=str) if isinstance(value, (set, frozenset)) else items
    if hasattr(value, 'to_dict'):
        return plain(value.to_dict())
    return value


def dump_json(data: Any) -> str:
    """Deterministic JSON text"""
    return json.dumps(plain(data), sort_keys=True, indent=2) + "\n"


def dump_csv(rows: List[Dict[str, Any]]) -> str:
    """CSV text whose header is the sorted union of the row keys"""
    header = sorted({key for row in rows for key in row})
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=header, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: _cell(row.get(k)) for k in header})
    return buffer.getvalue()


def _cell(value: Any) -> Any:
    value = plain(value)
    if isinstance(value, (dict, list)):
        return json.dumps(value, sort_keys=True)
    return "" if value is None else value


@dataclass
class CheckResult:
    """Result of one named verification, with an optional witness"""
    name: str
    status: CheckStatus
    detail: str = ""
    witness: Optional[Any] = None

    @classmethod
    def of(cls, name: str, ok: bool, detail: str = "", witness: Any = None) -> "CheckResult":
        status = CheckStatus.PASSED if ok else CheckStatus.FAILED
        return cls(name=name, status=status, detail=detail,
                   witness=None if ok else witness)

    @classmethod
    def skipped(cls, name: str, detail: str) -> "CheckResult":
        return cls(name=name, status=CheckStatus.SKIPPED, detail=detail)

    @property
    def passed(self) -> bool:
        return self.status != CheckStatus.FAILED

    def to_dict(self) -> Dict[str, Any]:
        result = {"name": self.name, "status": self.status.value}
        if self.detail:
            result["detail"] = self.detail
        if self.witness is not None:
            result["witness"] = plain(self.witness)
        return result


@dataclass
class ReportRow:
    """One charge s of a decomposition, with its module labels and checks"""
    s: int
    weight: str
    level: Fraction
    heisenberg: str
    lowest_weight: Fraction
    dimensions: Dict[str, int] = field(default_factory=dict)
    checks: List[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def add(self, check: CheckResult) -> None:
        self.checks.append(check)
        if not check.passed:
            logger.warning(f"Row s={self.s}: check {check.name} failed: {check.detail}")

    def to_dict(self) -> Dict[str, Any]:
        return {
            "s": self.s,
            "weight": self.weight,
            "level": str(self.level),
            "heisenberg": self.heisenberg,
            "lowest_weight": str(self.lowest_weight),
            "dimensions": dict(self.dimensions),
            "checks": [check.to_dict() for check in self.checks],
        }

    def to_csv_row(self) -> Dict[str, Any]:
        return {
            "s": self.s,
            "weight": self.weight,
            "level": str(self.level),
            "heisenberg": self.heisenberg,
            "lowest_weight": str(self.lowest_weight),
            "dimensions": self.dimensions,
            "failed": ";".join(c.name for c in self.checks if not c.passed),
            "status": "passed" if self.passed else "failed",
        }


@dataclass
class DecompositionReport:
    """Rows of a charge decomposition plus family-level checks"""
    family: ReportFamily
    rank: int
    degree: Fraction
    rows: List[ReportRow] = field(default_factory=list)
    checks: List[CheckResult] = field(default_factory=list)
    note: str = ""
    version: str = REPORT_VERSION

    @property
    def passed(self) -> bool:
        return all(row.passed for row in self.rows) and all(c.passed for c in self.checks)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "family": self.family.value,
            "rank": self.rank,
            "degree": str(self.degree),
            "rows": [row.to_dict() for row in self.rows],
            "checks": [check.to_dict() for check in self.checks],
            "note": self.note,
            "status": "passed" if self.passed else "failed",
            "version": self.version,
        }

    def to_json(self) -> str:
        """Convert report to JSON"""
        return dump_json(self.to_dict())

    def to_yaml(self) -> str:
        """Convert report to YAML"""
        return yaml.safe_dump(self.to_dict(), sort_keys=True)

    def to_csv(self) -> str:
        """One CSV line per row"""
        return dump_csv([row.to_csv_row() for row in self.rows])

    def save_to_file(self, file_path: str) -> None:
        """Save report to file (YAML, JSON or CSV)"""
        if file_path.endswith('.yaml') or file_path.endswith('.yml'):
            content = self.to_yaml()
        elif file_path.endswith('.json'):
            content = self.to_json()
        elif file_path.endswith('.csv'):
            content = self.to_csv()
        else:
            raise ValueError(f"Unsupported file format: {file_path}")

        with open(file_path, 'w') as f:
            f.write(content)

        logger.info(f"Report saved to {file_path}")
