"""
Export of suite reports to JSON and CSV, plus summary logging.

JSON output uses the schema-stable projection with sorted keys, so the same
suite run twice produces byte-identical files.
"""

import csv
import json
import logging
from datetime import datetime
from pathlib import Path
from typing import Any, Dict, List, Optional

from src.core.schema import report_passed, suite_report_to_json

logger = logging.getLogger(__name__)

CSV_FIELDS = ["suite", "status", "checks_run", "failures", "seed", "elapsed_sec", "params"]


def dumps_report(data: Any) -> str:
    """Canonical JSON text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


class ResultExporter:
    """Writes suite reports to an export directory."""

    def __init__(self, export_dir: str = "exports", logger=None):
        """
        Args:
            export_dir: Directory for export files (created if missing)
            logger: Logger to report to (module logger if None)
        """
        self.export_dir = Path(export_dir)
        self.export_dir.mkdir(parents=True, exist_ok=True)
        self.logger = logger if logger else logging.getLogger(__name__)

    def generate_filename(self, prefix: str = "reports", extension: str = "json") -> str:
        timestamp = datetime.now().strftime("%Y%m%d_%H%M%S")
        return f"{prefix}_{timestamp}.{extension}"

    def export_json(self, reports: List[Dict[str, Any]], filename: Optional[str] = None) -> Path:
        """
        Write the JSON projection of each report as one array.

        Args:
            reports: Suite report dicts
            filename: Target filename (timestamped if None)

        Returns:
            Path to the created file
        """
        filepath = self.export_dir / (filename or self.generate_filename("reports", "json"))
        try:
            filepath.write_text(dumps_report([suite_report_to_json(r) for r in reports]), encoding="utf-8")
        except OSError as e:
            self.logger.error(f"❌ Failed to export JSON: {e}")
            raise
        self.logger.info(f"✅ Exported {len(reports)} reports to {filepath}")
        return filepath

    def export_csv(self, reports: List[Dict[str, Any]], filename: Optional[str] = None) -> Optional[Path]:
        """One row per suite; failures are counted, params serialized as JSON."""
        if not reports:
            self.logger.warning("⚠️  No reports to export")
            return None
        filepath = self.export_dir / (filename or self.generate_filename("reports", "csv"))
        try:
            with open(filepath, "w", newline="", encoding="utf-8") as f:
                writer = csv.DictWriter(f, fieldnames=CSV_FIELDS)
                writer.writeheader()
                for report in reports:
                    writer.writerow(self._flatten_report(report))
        except OSError as e:
            self.logger.error(f"❌ Failed to export CSV: {e}")
            raise
        self.logger.info(f"✅ Exported {len(reports)} reports to {filepath}")
        return filepath

    def _flatten_report(self, report: Dict[str, Any]) -> Dict[str, Any]:
        meta = report.get("meta", {})
        return {
            "suite": report["suite"],
            "status": meta.get("status", "pending"),
            "checks_run": report["checks_run"],
            "failures": len(report["failures"]),
            "seed": "" if report.get("seed") is None else report["seed"],
            "elapsed_sec": meta.get("elapsed_sec", 0.0),
            "params": json.dumps(report["params"], sort_keys=True),
        }

    def generate_summary(self, reports: List[Dict[str, Any]]) -> Dict[str, Any]:
        total = len(reports)
        passed = sum(1 for r in reports if report_passed(r))
        return {
            "total_suites": total,
            "passed": passed,
            "failed": total - passed,
            "checks_run": sum(r["checks_run"] for r in reports),
            "elapsed_sec": round(sum(r.get("meta", {}).get("elapsed_sec", 0.0) for r in reports), 3),
            "suites": {r["suite"]: r.get("meta", {}).get("status", "pending") for r in reports},
        }

    def export_summary(self, reports: List[Dict[str, Any]], filename: Optional[str] = None) -> Path:
        filepath = self.export_dir / (filename or self.generate_filename("summary", "json"))
        filepath.write_text(dumps_report(self.generate_summary(reports)), encoding="utf-8")
        self.logger.info(f"📊 Summary exported to {filepath}")
        return filepath

    def log_summary(self, reports: List[Dict[str, Any]]) -> None:
        summary = self.generate_summary(reports)
        self.logger.info("=" * 60)
        self.logger.info("📊 SUITE SUMMARY")
        self.logger.info("=" * 60)
        self.logger.info(f"Suites:       {summary['total_suites']}")
        self.logger.info(f"Passed:       {summary['passed']}")
        self.logger.info(f"Failed:       {summary['failed']}")
        self.logger.info(f"Checks run:   {summary['checks_run']}")
        for report in reports:
            mark = "✅" if report_passed(report) else "❌"
            self.logger.info(f"  {mark} {report['suite']:28s} {report['checks_run']:6d} checks {len(report['failures']):4d} failures")
        self.logger.info("=" * 60)


def export_reports(
    reports: List[Dict[str, Any]],
    format: str = "json",
    export_dir: str = "exports",
    include_summary: bool = True,
    logger=None,
) -> List[Path]:
    """
    Export reports in 'json', 'csv' or 'both' formats.

    Returns:
        Paths of the files written
    """
    exporter = ResultExporter(export_dir, logger=logger)
    exporter.log_summary(reports)
    paths = []
    fmt = format.lower()
    if fmt in ("json", "both"):
        paths.append(exporter.export_json(reports))
    if fmt in ("csv", "both"):
        path = exporter.export_csv(reports)
        if path is not None:
            paths.append(path)
    if include_summary:
        paths.append(exporter.export_summary(reports))
    return paths
