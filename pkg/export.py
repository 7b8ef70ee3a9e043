"""Result export utilities: solution lists, JSON, CSV, Markdown and PDF."""

from __future__ import annotations

import csv
import json
from dataclasses import asdict
from datetime import date
from io import BytesIO, StringIO

from solver import PRUNED, SolutionSet, SolveResult


def solutions_text(solutions: SolutionSet) -> str:
    """One n-bit string per line, x1 first, ascending."""
    return "".join(line + "\n" for line in solutions.to_strings())


def report_to_json(result: SolveResult) -> str:
    return json.dumps(result.to_dict(), indent=2)


def trials_to_csv(stats) -> str:
    """One row per trial of a FilterStats."""
    buf = StringIO()
    columns = ["trial", "seed", "unpruned", "pruned", "solutions", "empty_unpruned", "inconclusive"]
    writer = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n")
    writer.writeheader()
    for row in stats.rows:
        writer.writerow(asdict(row))
    return buf.getvalue()


def summary_to_json(stats, threshold: float | None = None, strong_sr_fraction: float | None = None) -> str:
    summary = stats.summary()
    summary["threshold"] = threshold
    summary["strong_sr_fraction"] = strong_sr_fraction
    return json.dumps(summary, indent=2)


def advisor_to_markdown(rows: list[dict]) -> str:
    """Table of minimal n per security level (rows from the advise-quad command)."""
    parts = [
        "| security bits | m = n | m = 2n | ceil(s / 0.7911) |",
        "|---|---|---|---|",
    ]
    for row in rows:
        parts.append(f"| {row['bits']} | {row['n_ratio1']} | {row['n_ratio2']} | {row['rule_of_thumb']} |")
    return "\n".join(parts) + "\n"


def report_to_markdown(result: SolveResult) -> str:
    """Return a solve run as a Markdown string."""
    parts: list[str] = []
    parts.append(f"# Solve report (n={result.n}, m={result.m})")
    parts.append("")
    parts.append(f"- method: {result.method}")
    parts.append(f"- k: {result.k}, delta: {result.delta}, d0: {result.d0}")
    parts.append(f"- branches: {len(result.branches)}, pruned: {result.pruned}, searched: {result.unpruned}")
    parts.append(f"- time: {result.elapsed:.2f} s")
    parts.append("")

    parts.append("## Solutions")
    parts.append("")
    if len(result.solutions):
        parts.append("```")
        parts.extend(result.solutions.to_strings())
        parts.append("```")
    else:
        parts.append("_none_")
    parts.append("")

    unpruned = [b for b in result.branches if b.outcome != PRUNED]
    if unpruned:
        parts.append("## Searched branches")
        parts.append("")
        parts.append("| tail | outcome | solutions | rows | cols |")
        parts.append("|---|---|---|---|---|")
        for b in unpruned:
            parts.append(f"| {b.tail} | {b.outcome} | {b.solutions} | {b.n_rows} | {b.n_cols} |")
        parts.append("")

    certified = [b for b in result.branches if b.certificate]
    if certified:
        parts.append("## Certificates")
        parts.append("")
        for b in certified:
            parts.append(f"### tail {b.tail}")
            parts.append("")
            parts.extend(f"    {line}" for line in b.certificate)
            parts.append("")

    if result.errors:
        parts.append("---")
        parts.append("")
        parts.append("## Errors")
        parts.append("")
        parts.extend(f"- {e}" for e in result.errors)
    return "\n".join(parts)


def _sanitize_for_pdf(text: str) -> str:
    """Replace characters that Latin-1 (fpdf built-in fonts) cannot encode."""
    replacements = {
        "\u2014": "-",   # em dash
        "\u2013": "-",   # en dash
        "\u00B7": "*",   # middle dot
        "\u2264": "<=",
        "\u2265": ">=",
        "\u03B3": "gamma",
        "\u03B8": "theta",
        "\u03B4": "delta",
        "\u00A0": " ",   # non-breaking space
    }
    for char, repl in replacements.items():
        text = text.replace(char, repl)
    return text.encode("latin-1", errors="replace").decode("latin-1")


def report_to_pdf(result: SolveResult, max_certificates: int = 20) -> bytes:
    """Return a solve run as PDF bytes using fpdf2."""
    from fpdf import FPDF

    pdf = FPDF()
    pdf.set_auto_page_break(auto=True, margin=20)
    pdf.set_margins(20, 20, 20)

    def h1(text: str):
        pdf.set_font("Helvetica", style="B", size=20)
        pdf.multi_cell(0, 10, _sanitize_for_pdf(text), new_x="LMARGIN", new_y="NEXT")
        pdf.ln(4)

    def h2(text: str):
        pdf.set_font("Helvetica", style="B", size=14)
        pdf.set_text_color(50, 80, 150)
        pdf.multi_cell(0, 8, _sanitize_for_pdf(text), new_x="LMARGIN", new_y="NEXT")
        pdf.set_text_color(0, 0, 0)
        pdf.ln(2)

    def body(text: str):
        pdf.set_font("Helvetica", size=11)
        pdf.multi_cell(0, 6, _sanitize_for_pdf(text), new_x="LMARGIN", new_y="NEXT")
        pdf.ln(1)

    def mono(text: str):
        pdf.set_font("Courier", size=9)
        pdf.multi_cell(0, 5, _sanitize_for_pdf(text), new_x="LMARGIN", new_y="NEXT")
        pdf.ln(1)

    def caption(text: str):
        pdf.set_font("Helvetica", style="I", size=9)
        pdf.set_text_color(120, 120, 120)
        pdf.multi_cell(0, 5, _sanitize_for_pdf(text), new_x="LMARGIN", new_y="NEXT")
        pdf.set_text_color(0, 0, 0)

    def divider():
        pdf.set_draw_color(200, 200, 200)
        pdf.line(20, pdf.get_y(), 190, pdf.get_y())
        pdf.ln(4)

    pdf.add_page()
    h1(f"Solve report: n={result.n}, m={result.m}")
    caption(date.today().isoformat())
    divider()
    body(f"Method {result.method}, k={result.k}, delta={result.delta}, Macaulay degree d0={result.d0}.")
    body(f"{len(result.branches)} branches, {result.pruned} pruned by the linear filter, {result.unpruned} searched.")
    body(f"Elapsed: {result.elapsed:.2f} s")

    h2(f"Solutions ({len(result.solutions)})")
    if len(result.solutions):
        mono("\n".join(result.solutions.to_strings()))
    else:
        body("The system has no solution.")

    certified = [b for b in result.branches if b.certificate]
    if certified:
        pdf.add_page()
        h2("Inconsistency certificates")
        for b in certified[:max_certificates]:
            body(f"tail {b.tail}")
            mono("\n".join(b.certificate))
        if len(certified) > max_certificates:
            caption(f"{len(certified) - max_certificates} more certificates omitted")

    if result.errors:
        divider()
        h2("Errors")
        for e in result.errors:
            body(f"- {e}")

    buf = BytesIO()
    pdf.output(buf)
    return buf.getvalue()
