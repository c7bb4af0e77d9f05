"""Benchmark harness: accuracy, confusion counts and core recognition time
over a labeled gesture corpus."""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import LabelMismatch
from .recognizer import RecognizerConfig, Template, recognize
from .store import GestureSample

#: confusion column for samples that produced no template at all
NO_MATCH = "(none)"


@dataclass(frozen=True)
class BenchReport:
    total: int
    correct: int
    accuracy: float
    labels: list  # row/column order == template insertion order
    confusion: dict  # {true_label: {predicted_label_or_NO_MATCH: count}}
    runtime_core: float  # seconds of recognition only, whole pass
    per_sample_ms: float
    repeats: int = 1


def run_benchmark(
    samples: Sequence[GestureSample],
    library: Sequence[Template],
    cfg: RecognizerConfig = RecognizerConfig(),
    repeats: int = 1,
) -> BenchReport:
    """Recognize every sample against the library and tally the confusion.

    Every sample label must name a template (LabelMismatch otherwise). The
    clock only covers recognize() calls — dataset parsing and template
    setup are excluded. With repeats >= 3 the pass runs that many times and
    the reported core time averages the three most consistent passes (the
    tightest window of three in sorted order); counts come from the last
    pass, which is deterministic anyway.
    """
    if not samples:
        raise ValueError("run_benchmark requires at least one sample")
    template_names = [t.name for t in library]
    known = set(template_names)
    missing = sorted({s.glyph_label for s in samples} - known)
    if missing:
        raise LabelMismatch(f"no template for sample labels: {missing}")

    times = []
    confusion: dict = {}
    correct = 0
    for _ in range(max(1, repeats)):
        confusion = {label: {} for label in template_names}
        correct = 0
        elapsed = 0.0
        for s in samples:
            t0 = time.perf_counter()
            result = recognize(s.raw, library, cfg)
            elapsed += time.perf_counter() - t0
            predicted = NO_MATCH
            if result is not None and result.template_name is not None:
                predicted = result.template_name
            row = confusion.setdefault(s.glyph_label, {})
            row[predicted] = row.get(predicted, 0) + 1
            if predicted == s.glyph_label:
                correct += 1
        times.append(elapsed)

    runtime = _consistent_time(times)
    total = len(samples)
    return BenchReport(
        total=total,
        correct=correct,
        accuracy=correct / total,
        labels=template_names,
        confusion=confusion,
        runtime_core=runtime,
        per_sample_ms=runtime / total * 1000.0,
        repeats=max(1, repeats),
    )


def _consistent_time(times: list) -> float:
    """Average of the three most consistent passes; fewer passes average
    everything."""
    if len(times) < 3:
        return sum(times) / len(times)
    ts = sorted(times)
    best = min(range(len(ts) - 2), key=lambda i: ts[i + 2] - ts[i])
    window = ts[best:best + 3]
    return sum(window) / 3.0


def render_report(report: BenchReport, format: str = "text") -> str:
    """Deterministic tabular rendering; confusion rows and columns follow
    template insertion order, with a trailing no-match column when needed."""
    if format not in ("text", "csv"):
        raise ValueError(f"format must be 'text' or 'csv', got {format!r}")
    columns = list(report.labels)
    if any(NO_MATCH in row for row in report.confusion.values()):
        columns.append(NO_MATCH)
    rows = [label for label in report.labels if label in report.confusion]
    rows += [label for label in report.confusion if label not in report.labels]

    if format == "csv":
        lines = [f"total,{report.total}",
                 f"correct,{report.correct}",
                 f"accuracy,{report.accuracy:.6f}",
                 f"runtime_core_s,{report.runtime_core:.6f}",
                 f"per_sample_ms,{report.per_sample_ms:.6f}",
                 "",
                 "true\\predicted," + ",".join(columns)]
        for label in rows:
            row = report.confusion.get(label, {})
            lines.append(label + "," + ",".join(
                str(row.get(col, 0)) for col in columns))
        return "\n".join(lines) + "\n"

    width = max([len(c) for c in columns + rows] + [6])
    header = (f"samples: {report.total}   correct: {report.correct}   "
              f"accuracy: {report.accuracy * 100:.2f}%\n"
              f"core runtime: {report.runtime_core:.3f} s "
              f"({report.per_sample_ms:.3f} ms/sample, "
              f"{report.repeats} repeat{'s' if report.repeats != 1 else ''})\n\n")
    lines = [" " * (width + 2) + " ".join(c.rjust(width) for c in columns)]
    for label in rows:
        row = report.confusion.get(label, {})
        lines.append(label.rjust(width + 2) + " " + " ".join(
            str(row.get(col, 0)).rjust(width) for col in columns))
    return header + "\n".join(lines) + "\n"
