"""Report rendering: text tables, delimited files and latency figures."""

from __future__ import annotations

import csv
import json
import os

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .scenario import ScenarioResult
from .trace.events import write_jsonl
from .trace.latency import COMPONENTS, LatencyReport
from .trace.table import export_trace_table, render_trace_table

# Sub-components rendered indented beneath their agent totals.
_INDENTED = {"monitoring tool listing", "monitoring tool call + SBI",
             "monitoring selection+synthesis", "execution tool listing",
             "execution tool call + system", "execution selection+synthesis"}


def render_latency_table(report: LatencyReport) -> str:
    headers = ("Component", "Mean [s]", "Std [s]", "Min [s]", "Max [s]")
    rows = []
    for name in COMPONENTS:
        stats = report.components[name]
        display = ("    " + name) if name in _INDENTED else name
        rows.append((display, f"{stats.mean_s:.3f}", f"{stats.std_s:.3f}",
                     f"{stats.min_s:.3f}", f"{stats.max_s:.3f}"))
    widths = [max(len(headers[i]), *(len(r[i]) for r in rows)) for i in range(5)]
    def fmt(row: tuple[str, ...]) -> str:
        cells = [row[0].ljust(widths[0])]
        cells += [row[i].rjust(widths[i]) for i in range(1, 5)]
        return "  ".join(cells).rstrip()
    lines = [fmt(headers), fmt(tuple("-" * w for w in widths))]
    lines += [fmt(r) for r in rows]
    lines.append(f"runs: {report.run_count}")
    return "\n".join(lines)


def write_latency_csv(report: LatencyReport, path: str) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["component", "mean_s", "std_s", "min_s", "max_s"])
        for name in COMPONENTS:
            stats = report.components[name]
            writer.writerow([name, f"{stats.mean_s:.6f}", f"{stats.std_s:.6f}",
                             f"{stats.min_s:.6f}", f"{stats.max_s:.6f}"])


def write_latency_figure(report: LatencyReport, path: str) -> None:
    """Horizontal bar chart of component means with std error bars."""
    names = list(COMPONENTS)
    means = [report.components[n].mean_s for n in names]
    stds = [report.components[n].std_s for n in names]
    fig, ax = plt.subplots(figsize=(9, 5.5))
    positions = range(len(names))
    ax.barh(positions, means, xerr=stds, color="#3b7dd8", alpha=0.85,
            error_kw={"ecolor": "#333333", "capsize": 3})
    ax.set_yticks(list(positions))
    ax.set_yticklabels(names)
    ax.invert_yaxis()
    ax.set_xlabel("seconds")
    ax.set_title(f"Latency decomposition over {report.run_count} runs")
    ax.grid(axis="x", linestyle=":", alpha=0.5)
    fig.tight_layout()
    fig.savefig(path, dpi=130)
    plt.close(fig)


def write_scenario_results(result: ScenarioResult, out_dir: str) -> dict[str, str]:
    """Write traces, tables, the latency report and its figure to out_dir.

    Returns a map of artifact name to path.
    """
    os.makedirs(out_dir, exist_ok=True)
    artifacts: dict[str, str] = {}

    summary_path = os.path.join(out_dir, "scenario.json")
    with open(summary_path, "w", encoding="utf-8") as fh:
        json.dump(result.to_dict(), fh, indent=2)
    artifacts["scenario"] = summary_path

    table_sections = []
    for index, trace in enumerate(result.traces, start=1):
        trace_path = os.path.join(out_dir, f"trace-run{index:02d}.jsonl")
        write_jsonl(trace.events, trace_path)
        artifacts[f"trace-run{index:02d}"] = trace_path
        table_sections.append(f"Run {index} ({trace.run_id})\n"
                              + render_trace_table(export_trace_table(trace.events)))
    table_path = os.path.join(out_dir, "trace_table.txt")
    with open(table_path, "w", encoding="utf-8") as fh:
        fh.write("\n\n".join(table_sections) + "\n")
    artifacts["trace_table"] = table_path

    if result.latency_report is not None:
        report = result.latency_report
        json_path = os.path.join(out_dir, "latency_report.json")
        with open(json_path, "w", encoding="utf-8") as fh:
            json.dump(report.to_dict(), fh, indent=2)
        csv_path = os.path.join(out_dir, "latency_report.csv")
        write_latency_csv(report, csv_path)
        txt_path = os.path.join(out_dir, "latency_report.txt")
        with open(txt_path, "w", encoding="utf-8") as fh:
            fh.write(render_latency_table(report) + "\n")
        fig_path = os.path.join(out_dir, "latency_components.png")
        write_latency_figure(report, fig_path)
        artifacts.update({"latency_json": json_path, "latency_csv": csv_path,
                          "latency_txt": txt_path, "latency_figure": fig_path})
    return artifacts


def load_latency_report(path: str) -> LatencyReport:
    from .trace.latency import ComponentStats
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    components = {name: ComponentStats(stats["meanS"], stats["stdS"],
                                       stats["minS"], stats["maxS"])
                  for name, stats in data["components"].items()}
    return LatencyReport(components=components, run_count=int(data["runCount"]),
                         runs=list(data.get("runs", [])))
