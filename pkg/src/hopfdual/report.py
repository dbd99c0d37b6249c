"""Reports: one JSON document, with CSV and aligned-text renderings derived from it."""

from __future__ import annotations

import csv
import io
import json
from typing import Dict, List, Optional

from .homology import BettiTable


def table_json(T: BettiTable, kind: Optional[str] = None) -> dict:
    d = T.to_json()
    if kind:
        d["kind"] = kind
    return d


def make_report(command: str, fixture: str, tables: List[dict], verdicts: Dict, shift, timing_ms: float) -> dict:
    from . import __version__

    return {
        "command": command,
        "fixture": fixture,
        "tables": tables,
        "verdicts": verdicts,
        "shift": shift,
        "version": __version__,
        "timing_ms": round(timing_ms, 3),
    }


def to_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=False) + "\n"


def strip_timing(report: dict) -> dict:
    return {k: v for k, v in report.items() if k != "timing_ms"}


def _flatten(prefix: str, value, out: List[tuple]) -> None:
    if isinstance(value, dict) and set(value) == {"passed", "checked", "witness"}:
        tail = f" ({value['checked']} cases)" if value["passed"] else f": {value['witness']}"
        out.append((prefix, ("PASS" if value["passed"] else "FAIL") + tail))
    elif isinstance(value, dict):
        for k, v in value.items():
            _flatten(f"{prefix}.{k}" if prefix else str(k), v, out)
    elif isinstance(value, list) and value and all(isinstance(v, dict) for v in value):
        for i, v in enumerate(value):
            _flatten(f"{prefix}[{i}]", v, out)
    else:
        out.append((prefix, json.dumps(value) if isinstance(value, (list, dict)) else value))


def to_csv(report: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["section", "table", "i", "w", "dim"])
    for T in report["tables"]:
        for i, wt, d in T["entries"]:
            w.writerow(["table", T["kind"], i, wt, d])
    rows: List[tuple] = []
    _flatten("", report["verdicts"], rows)
    for key, value in rows:
        w.writerow(["verdict", key, "", "", value])
    for key in ("command", "fixture", "shift", "version", "timing_ms"):
        w.writerow(["meta", key, "", "", report[key]])
    return buf.getvalue()


def _grid(T: dict) -> List[str]:
    entries = T["entries"]
    if not entries:
        return [f"{T['kind']}: (empty)"]
    degrees = sorted({i for i, _, _ in entries})
    weights = sorted({w for _, w, _ in entries})
    cell = {(i, w): d for i, w, d in entries}
    width = max(3, max(len(str(w)) for w in weights), max(len(str(d)) for _, _, d in entries))
    lines = [f"{T['kind']}  (rows: degree i, columns: weight w)"]
    lines.append("i\\w " + " ".join(str(w).rjust(width) for w in weights))
    for i in degrees:
        lines.append(
            str(i).ljust(4) + " ".join(str(cell[(i, w)]).rjust(width) if (i, w) in cell else ".".rjust(width) for w in weights)
        )
    return lines


def to_text(report: dict) -> str:
    lines = [f"hopfdual {report['version']}  {report['command']}  {report['fixture']}"]
    for T in report["tables"]:
        lines.append("")
        lines += _grid(T)
    rows: List[tuple] = []
    _flatten("", report["verdicts"], rows)
    if rows:
        lines.append("")
        key_w = max(len(k) for k, _ in rows)
        for key, value in rows:
            if isinstance(value, bool):
                value = "PASS" if value else "FAIL"
            lines.append(f"{key.ljust(key_w)}  {value}")
    lines.append("")
    lines.append(f"shift: {report['shift']}")
    lines.append(f"time: {report['timing_ms']} ms")
    return "\n".join(lines) + "\n"


RENDERERS = {"json": to_json, "csv": to_csv, "text": to_text}
