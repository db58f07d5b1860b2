import io
import json
from typing import Any, Dict, List

import pandas as pd

from core.error_handler import ValidationError

OUTPUT_FORMATS = ('json', 'text', 'csv')


class ReportFormatter:
    """
    Renders command documents. json is the stable interface; text is for people
    and may change; csv flattens the document into one row, or one row per item
    for tabular documents.
    """

    def render(self, document: Dict[str, Any], output_format: str = 'json') -> str:
        if output_format == 'json':
            return json.dumps(document, sort_keys=True, indent=2) + "\n"
        if output_format == 'text':
            return self.format_text(document)
        if output_format == 'csv':
            return self.format_csv(document)
        raise ValidationError(f"Unsupported output format: {output_format}. "
                              f"Supported formats: {', '.join(OUTPUT_FORMATS)}",
                              field="format", value=output_format)

    def format_text(self, document: Dict[str, Any]) -> str:
        kind = document.get("kind")
        body = document.get("result", {})
        header = f"{document.get('tool')} {document.get('version')} {kind}"
        if document.get("seed") is not None:
            header += f" (seed {document['seed']})"
        lines = [header]
        if kind in ("certify", "bounds"):
            lines += self.format_certificate(body)
        elif kind == "verify":
            lines += self.format_verify(body)
        elif kind == "experiment" and "summary" in body:
            lines += self.format_summary(body["summary"])
        else:
            lines += self._key_values(body)
        return "\n".join(lines) + "\n"

    def format_certificate(self, certificate: Dict[str, Any]) -> List[str]:
        lines = [
            f"Graph: N={certificate['n']} E={certificate['e']} connected={certificate['connected']}",
            f"Moments: Q={certificate['q']:.12g} P={certificate['p']:.12g} variance={certificate['variance']:.6g}",
            f"lambda_2^G={certificate['lambda2_g']:.12g} lambda_N^G={certificate['lambdaN_g']:.12g} "
            f"mu={certificate['mu']:.12g} ({certificate['mu_method']})",
            f"Eigenvalues on 1^perp lie in [{certificate['lower']:.12g}, {certificate['upper']:.12g}]",
        ]
        if "positivity_paper" in certificate:
            lines.append(f"Positive (moment condition): {certificate['positivity_paper']} "
                         f"margin {certificate['margins']['paper']:.6g}")
            lines.append(f"Positive (naive condition): {certificate['positivity_naive']} "
                         f"margin {certificate['margins']['naive']:.6g}")
        lines.append(f"Improvement ratio: {certificate['improvement_ratio']:.6g}")
        if not certificate['connected']:
            lines.append("Warning: graph is disconnected; bounds are not authoritative")
        if "oracle_eigenvalues" in certificate:
            values = ", ".join(f"{x:.6g}" for x in certificate["oracle_eigenvalues"])
            lines.append(f"Oracle eigenvalues: {values}")
        return lines

    def format_verify(self, body: Dict[str, Any]) -> List[str]:
        lines = []
        for report in body["suites"]:
            status = "PASS" if all(p["failed"] == 0 for p in report["properties"]) else "FAIL"
            lines.append(f"Suite {report['suite']}: {status} ({report['corpus_size']} graphs)")
            for prop in report["properties"]:
                lines.append(f"  {prop['name']}: {prop['checked'] - prop['failed']}/{prop['checked']} passed")
        return lines

    def format_summary(self, summary: Dict[str, Any]) -> List[str]:
        lines = [
            f"Family {summary['family']} params={summary['params']} trials={summary['trials']}",
            f"Sandwich violations: {summary['sandwich_violations']}",
            f"False positives: moment={summary['paper_false_positives']} naive={summary['naive_false_positives']}",
            f"Disconnected samples: {summary['disconnected']} skipped: {summary['skipped']}",
        ]
        if summary.get("improvement_ratio_min") is not None:
            lines.append(
                f"Improvement ratio: min={summary['improvement_ratio_min']:.6g} "
                f"median={summary['improvement_ratio_median']:.6g} max={summary['improvement_ratio_max']:.6g}"
            )
        if summary.get("a_p0") is not None:
            lines.append(f"a(p0) = {summary['a_p0']:.12g}")
        return lines

    def format_csv(self, document: Dict[str, Any]) -> str:
        body = document.get("result", {})
        rows = self._table(body)
        buffer = io.StringIO()
        frame = pd.json_normalize(rows) if rows else pd.json_normalize(body)
        frame.to_csv(buffer, index=False)
        return buffer.getvalue()

    def _table(self, body: Dict[str, Any]) -> List[Dict[str, Any]]:
        if "eigenvalues_ascending" in body:
            return [{"index": i, "eigenvalue": v, "abs_order_eigenvalue": a}
                    for i, (v, a) in enumerate(zip(body["eigenvalues_ascending"], body["eigenvalues_abs_order"]))]
        if "ladder" in body:
            return body["ladder"]
        if "suites" in body:
            return [{"suite": s["suite"], **p} for s in body["suites"] for p in s["properties"]]
        return []

    def _key_values(self, body: Dict[str, Any], indent: str = "") -> List[str]:
        lines = []
        for key in sorted(body):
            value = body[key]
            if isinstance(value, dict):
                lines.append(f"{indent}{key}:")
                lines += self._key_values(value, indent + "  ")
            elif isinstance(value, list) and len(value) > 8:
                lines.append(f"{indent}{key}: [{len(value)} values]")
            else:
                lines.append(f"{indent}{key}: {value}")
        return lines


report_formatter = ReportFormatter()
