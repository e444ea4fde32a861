"""
Run reports shared by every subcommand
"""
import logging
import time
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence

from utils.constants import EXIT_OK
from utils.serialization import to_csv, to_json, to_text
from utils.system_utils import peak_memory_mb

logger = logging.getLogger(__name__)


@dataclass
class RunReport:
    """
    Result of one subcommand.

    Attributes:
        command: Echo of the subcommand and its effective arguments
        payload: Deterministic result section
        verdicts: Pass/fail checks; None marks an undecided check
        title: First line of the text rendering
        lines: Remaining lines of the text rendering
        csv_rows: Rows for CSV output
        csv_columns: Fixed CSV column order
        exit_code: Process exit code for this report
        started: perf_counter value at construction
    """
    command: Dict[str, Any]
    payload: Dict[str, Any] = field(default_factory=dict)
    verdicts: Dict[str, Any] = field(default_factory=dict)
    title: str = ""
    lines: List[str] = field(default_factory=list)
    csv_rows: List[Dict[str, Any]] = field(default_factory=list)
    csv_columns: Sequence[str] = ()
    exit_code: int = EXIT_OK
    started: float = field(default_factory=time.perf_counter)
    wall_time_s: Optional[float] = None

    def finish(self) -> "RunReport":
        self.wall_time_s = round(time.perf_counter() - self.started, 3)
        logger.info(f"{self.command.get('subcommand')} finished in {self.wall_time_s}s, exit {self.exit_code}")
        return self

    def to_dict(self) -> Dict[str, Any]:
        if self.wall_time_s is None:
            self.finish()
        return {
            "command": self.command,
            "payload": self.payload,
            "verdicts": self.verdicts,
            "meta": {"wall_time_s": self.wall_time_s, "peak_rss_mb": peak_memory_mb()},
        }

    def render(self, fmt: str) -> str:
        """
        Renders the report.

        Args:
            fmt: "json", "csv" or "text"

        Returns:
            str: Output for stdout
        """
        if fmt == "json":
            return to_json(self.to_dict())
        if fmt == "csv":
            if self.csv_columns:
                return to_csv(self.csv_rows, self.csv_columns)
            flat = {key: value for key, value in self.verdicts.items() if not isinstance(value, (dict, list))}
            return to_csv([flat], sorted(flat))
        lines = list(self.lines)
        for name, value in sorted(self.verdicts.items()):
            if not isinstance(value, (dict, list)):
                lines.append(f"{name}: {_verdict_text(value)}")
        return to_text(self.title, lines)


def _verdict_text(value: Any) -> str:
    if value is None:
        return "undecided"
    if isinstance(value, bool):
        return "pass" if value else "FAIL"
    return str(value)
