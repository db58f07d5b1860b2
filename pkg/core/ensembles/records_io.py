import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Union

import pandas as pd

from core.error_handler import ValidationError, ExperimentError
from .ensemble_models import ConcentrationResult, TrialRecord, ExperimentSummary


class RecordsWriter:
    """
    Writes experiment output: JSON-lines trial records, a summary document and
    ladder tables for external plotting.
    """

    LADDER_FORMATS = ['csv', 'xlsx']

    def write_jsonl(self, path: Union[str, Path], records: List[TrialRecord]) -> Path:
        """One TrialRecord per line, keys sorted."""
        path = Path(path)
        lines = [json.dumps(r.model_dump(mode="json"), sort_keys=True) for r in records]
        try:
            path.write_text("".join(line + "\n" for line in lines))
        except OSError as e:
            raise ExperimentError(f"Cannot write records to {path}: {e}", context={"path": str(path)},
                                  original_error=e)
        logging.info(f"Wrote {len(records)} trial records to {path}")
        return path

    def read_jsonl(self, path: Union[str, Path]) -> List[TrialRecord]:
        path = Path(path)
        if not path.exists() or path.stat().st_size == 0:
            return []
        try:
            frame = pd.read_json(path, lines=True, orient="records", dtype=False)
        except ValueError as e:
            raise ValidationError(f"Invalid JSON-lines file {path}: {e}", field="path", value=str(path))
        rows = frame.to_dict("records")
        # pandas fills absent optional fields with NaN
        cleaned = [{k: v for k, v in row.items() if not (isinstance(v, float) and pd.isna(v))} for row in rows]
        return [TrialRecord(**row) for row in cleaned]

    def write_summary(self, path: Union[str, Path], summary: ExperimentSummary,
                      header: Dict[str, Any]) -> Path:
        path = Path(path)
        document = {**header, "summary": summary.model_dump(mode="json")}
        path.write_text(json.dumps(document, sort_keys=True, indent=2) + "\n")
        return path

    def export_ladder(self, result: ConcentrationResult, path: Union[str, Path]) -> Path:
        """(N, median_abs_dev) table as CSV, or xlsx through openpyxl."""
        path = Path(path)
        file_format = path.suffix.lstrip('.').lower()
        if file_format not in self.LADDER_FORMATS:
            raise ValidationError(
                f"Unsupported ladder format: {file_format}. Supported formats: {', '.join(self.LADDER_FORMATS)}",
                field="path", value=str(path)
            )
        frame = pd.DataFrame([point.model_dump() for point in result.ladder],
                             columns=["n", "p", "median_abs_dev", "trials", "disconnected"])
        if file_format == 'csv':
            frame.to_csv(path, index=False)
        else:
            frame.to_excel(path, index=False, engine="openpyxl")
        logging.info(f"Exported {len(frame)} ladder points to {path}")
        return path


records_writer = RecordsWriter()


def write_jsonl(path: Union[str, Path], records: List[TrialRecord]) -> Path:
    return records_writer.write_jsonl(path, records)


def read_jsonl(path: Union[str, Path]) -> List[TrialRecord]:
    return records_writer.read_jsonl(path)


def export_ladder(result: ConcentrationResult, path: Union[str, Path]) -> Path:
    return records_writer.export_ladder(result, path)
