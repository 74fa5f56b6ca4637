"""Instruction-trace serialization: one CSV row per scheduled block."""

from __future__ import annotations

from pathlib import Path

from .engine import TraceRecord

TRACE_HEADER = "timestep_start,duration_ms,opcode,modules,distance,count"


def format_record(record: TraceRecord) -> str:
    modules = ";".join(str(m) for m in record.modules)
    return (f"{record.timestep_start:.3f},{record.duration_ms:.3f},"
            f"{record.opcode},{modules},{record.distance:.2f},{record.count}")


def write_trace(records: list[TraceRecord], path: str | Path) -> None:
    lines = [TRACE_HEADER] + [format_record(r) for r in records]
    Path(path).write_text("\n".join(lines) + "\n")


def read_trace(path: str | Path) -> list[dict]:
    """Parse a trace file back into dict rows (values as written)."""
    lines = Path(path).read_text().strip().split("\n")
    if not lines or lines[0] != TRACE_HEADER:
        raise ValueError("not a trace file: bad header")
    fields = TRACE_HEADER.split(",")
    rows = []
    for line in lines[1:]:
        parts = line.split(",")
        if len(parts) != len(fields):
            raise ValueError(f"malformed trace row: {line!r}")
        row = dict(zip(fields, parts))
        row["timestep_start"] = float(row["timestep_start"])
        row["duration_ms"] = float(row["duration_ms"])
        row["distance"] = float(row["distance"])
        row["count"] = int(row["count"])
        row["modules"] = tuple(int(m) for m in row["modules"].split(";")
                               if m != "")
        rows.append(row)
    return rows
