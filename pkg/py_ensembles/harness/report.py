import csv
import logging
import time
from pathlib import Path
from typing import Dict, List, NamedTuple

from py_ensembles.utils import format_float
from py_ensembles.vars import VERDICTS

logger = logging.getLogger(__name__)


class CheckRow(NamedTuple):
    """
    One comparison of an experiment

    Attributes:
        label: What is compared
        lhs: Left-hand side (Monte Carlo estimate or first pipeline)
        se: Standard error of lhs, 0 for deterministic values
        rhs: Right-hand side (exact or second pipeline)
        tolerance: Allowed deviation on top of 3 standard errors
    """

    label: str
    lhs: float
    se: float
    rhs: float
    tolerance: float

    @property
    def excess(self) -> float:
        """
        :return: |lhs - rhs| - 3 se - tolerance, positive when the row fails
        """
        return abs(self.lhs - self.rhs) - 3 * self.se - self.tolerance

    @property
    def verdict(self) -> VERDICTS:
        return "pass" if self.excess <= 0 else "fail"


class ExperimentReport(NamedTuple):
    """
    Outcome of an experiment

    The headline lhs/rhs are those of the worst row; the verdict passes iff every row satisfies
    |lhs - rhs| <= 3 se + tolerance.

    Attributes:
        name: Experiment name
        inputs: Parameters the experiment ran with
        lhs: Worst row left-hand side
        se: Its standard error
        rhs: Worst row right-hand side
        tolerance: Its tolerance
        verdict: 'pass' or 'fail'
        runtime: Wall time in seconds
        rows: All comparisons
    """

    name: str
    inputs: Dict[str, object]
    lhs: float
    se: float
    rhs: float
    tolerance: float
    verdict: VERDICTS
    runtime: float
    rows: List[CheckRow]

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def to_text(self) -> str:
        """
        :return: One 'key = value' line per field, the rows as 'row.<label> = lhs, se, rhs, tolerance, verdict'
        """
        lines = [f"name = {self.name}"]
        lines += [f"input.{key} = {value}" for key, value in self.inputs.items()]
        lines += [
            f"lhs = {format_float(self.lhs)}", f"se = {format_float(self.se)}", f"rhs = {format_float(self.rhs)}",
            f"tolerance = {format_float(self.tolerance)}", f"verdict = {self.verdict}",
            f"runtime = {self.runtime:.3f}",
        ]
        for row in self.rows:
            values = ", ".join(format_float(v) for v in (row.lhs, row.se, row.rhs, row.tolerance))
            lines.append(f"row.{row.label} = {values}, {row.verdict}")
        return "\n".join(lines) + "\n"

    def write_csv(self, path: Path | str) -> None:
        """
        Writes the rows as 'label,lhs,se,rhs,tolerance,verdict'

        :param path: Output file
        """
        with open(path, "w", encoding="utf-8", newline="") as handle:
            writer = csv.writer(handle, lineterminator="\n")
            writer.writerow(["label", "lhs", "se", "rhs", "tolerance", "verdict"])
            for row in self.rows:
                writer.writerow(
                    [row.label] + [format_float(v) for v in (row.lhs, row.se, row.rhs, row.tolerance)] + [row.verdict]
                )


def make_report(name: str, inputs: Dict[str, object], rows: List[CheckRow], started: float) -> ExperimentReport:
    """
    Builds a report from its rows

    :param name: Experiment name
    :param inputs: Parameters
    :param rows: Comparisons, at least one
    :param started: time.perf_counter() value taken when the experiment started
    :return: The report
    """
    worst = max(rows, key=lambda row: row.excess)
    verdict = "pass" if all(row.verdict == "pass" for row in rows) else "fail"
    logger.debug("%s: %d rows, verdict %s", name, len(rows), verdict)
    return ExperimentReport(
        name, inputs, worst.lhs, worst.se, worst.rhs, worst.tolerance, verdict, time.perf_counter() - started, rows
    )


def trend_row(label: str, earlier: float, later: float, slack: float = 0.0) -> CheckRow:
    """
    Row asserting that a quantity does not increase, encoded as lhs = max(0, later - earlier) against rhs = 0

    :param label: What is compared
    :param earlier: Value at the coarser parameter
    :param later: Value at the finer parameter
    :param slack: Allowed increase (default: 0)
    :return: The row
    """
    return CheckRow(label, max(0.0, later - earlier), 0.0, 0.0, slack)
