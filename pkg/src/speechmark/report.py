"""Markdown rendering of evaluation reports.

Four table shapes: binary accuracy/F1, per-class precision/recall/F1 with
a weighted-average row, per-category weighted metrics, and the regression
PC/MAE pair. Classification values render as percentages with one decimal;
correlation with three decimals and MAE with two.
"""

from .errors import DataError


def _pct(x):
    return f"{100.0 * x:.1f}"


def _table(header, rows):
    lines = ["| " + " | ".join(header) + " |",
             "|" + "|".join(["---"] * len(header)) + "|"]
    lines.extend("| " + " | ".join(str(c) for c in row) + " |" for row in rows)
    return "\n".join(lines)


def render_binary(report, method="SVC (ours)"):
    """Accuracy / weighted-F1 table for the aphasia-versus-control task."""
    rows = [(method, _pct(report["accuracy"]), _pct(report["weighted"]["f1"]))]
    return _table(("Method", "Accuracy", "F1"), rows)


def render_per_class(report):
    """Per-class precision/recall/F1 plus the weighted-average row."""
    rows = []
    for label in report["labels"]:
        m = report["per_class"][label]
        rows.append((label.capitalize(), _pct(m["precision"]), _pct(m["recall"]), _pct(m["f1"])))
    w = report["weighted"]
    rows.append(("Weighted average", _pct(w["precision"]), _pct(w["recall"]), _pct(w["f1"])))
    return _table(("Class", "Precision", "Recall", "F1"), rows)


def render_per_category(reports):
    """Weighted precision/recall/F1 per score category."""
    rows = []
    for category, report in reports.items():
        w = report["weighted"]
        pretty = category.replace("_", " ").capitalize()
        rows.append((pretty, _pct(w["precision"]), _pct(w["recall"]), _pct(w["f1"])))
    return _table(("Score category", "Precision", "Recall", "F1"), rows)


def render_regression(report, method="SVR (ours)"):
    """Pearson-correlation / MAE table for severity regression."""
    pc = "undefined" if report["pearson"] is None else f"{report['pearson']:.3f}"
    rows = [(method, pc, f"{report['mae']:.2f}")]
    return _table(("Method", "PC", "MAE"), rows)


def render_all(document):
    """Render every section present in a pipeline report document."""
    sections = []
    if "binary" in document:
        sections.append("## Aphasia versus control\n\n" + render_binary(document["binary"]))
    if "subtype" in document:
        sections.append("## Subtype classification\n\n" + render_per_class(document["subtype"]))
    if "per_category" in document:
        sections.append(
            "## Per-category subtype classification\n\n"
            + render_per_category(document["per_category"])
        )
    if "aq" in document:
        sections.append("## Severity (AQ) regression\n\n" + render_regression(document["aq"]))
    if not sections:
        raise DataError("report document has no renderable sections")
    return "\n\n".join(sections) + "\n"
