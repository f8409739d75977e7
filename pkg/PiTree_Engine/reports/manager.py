"""
Report Writer — saves run artifacts to an output directory.

Twin-File Protocol:
    Every save_report() call writes a paired MD + CSV:
        {stem}.md   <- Human-readable report
        {stem}.csv  <- One row per check record
    and, when a payload is given, the full structured report:
        {stem}.json

No timestamps or run ids go into names or contents, so identical runs give
byte-identical files.

Storage layout:
    {out_dir}/
        report.{md,csv,json}
        tree.{dot,json}
        witness_{check}.json
"""

from __future__ import annotations

import logging
import os
import re

import pandas as pd

from PiTree_Engine.config import OUTPUT_DIR
from PiTree_Engine.utils.json_helpers import dump_json

logger = logging.getLogger(__name__)


class ReportWriter:
    """
    Writes text, JSON and Twin-File reports under one directory.

    OSError from the filesystem propagates; the CLI maps it to its I/O exit
    code.
    """

    def __init__(self, out_dir: str | None = None):
        self.out_dir = out_dir or OUTPUT_DIR
        os.makedirs(self.out_dir, exist_ok=True)

    def path(self, filename: str) -> str:
        return os.path.join(self.out_dir, filename)

    # ------------------------------------------------------------------
    # Single files
    # ------------------------------------------------------------------

    def write_text(self, filename: str, content: str) -> str:
        path = self.path(filename)
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            f.write(content)
        logger.debug(f"wrote {path} ({len(content)} chars)")
        return path

    def write_json(self, filename: str, payload) -> str:
        if not filename.endswith(".json"):
            filename = filename + ".json"
        return self.write_text(filename, dump_json(payload))

    def write_witness(self, check_id: str, witness: dict) -> str:
        """witness_{check}.json in the input schemas; returns the file name."""
        filename = f"witness_{_slugify(check_id)}.json"
        self.write_json(filename, witness)
        return filename

    # ------------------------------------------------------------------
    # Twin-File reports
    # ------------------------------------------------------------------

    def save_report(
        self,
        stem: str,
        content: str,
        dataframe: pd.DataFrame | None = None,
        payload: dict | None = None,
    ) -> list[str]:
        """
        Save a Markdown report with its CSV twin and optional JSON payload.

        Args:
            stem:      File name without extension (e.g. 'report').
            content:   Pre-formatted Markdown.
            dataframe: Table saved as {stem}.csv.
            payload:   Structured report saved as {stem}.json.

        Returns:
            Paths written, Markdown first.
        """
        written = [self.write_text(f"{stem}.md", content)]

        if dataframe is not None:
            csv_path = self.path(f"{stem}.csv")
            dataframe.to_csv(csv_path, index=False, lineterminator="\n")
            written.append(csv_path)

        if payload is not None:
            written.append(self.write_json(f"{stem}.json", payload))

        logger.info(f"saved report {stem} to {self.out_dir}: {len(written)} files")
        return written

    def list_files(self) -> list[str]:
        return sorted(f for f in os.listdir(self.out_dir) if os.path.isfile(self.path(f)))


# ------------------------------------------------------------------
# Module-level helpers
# ------------------------------------------------------------------

def _slugify(text: str) -> str:
    """Lowercase filesystem-safe slug."""
    s = text.lower().strip()
    s = re.sub(r"[^\w\s-]", "", s)
    s = re.sub(r"[\s-]+", "_", s)
    return s[:80]
