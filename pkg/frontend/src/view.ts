// DOM rendering: translate view-model state into the page.

import type { ConsoleViewModel } from "./model.js";
import type { LatencyReportDoc, NfStatus, TraceEventRecord } from "./types.js";

export function renderTimeline(container: HTMLElement, rows: TraceEventRecord[]): void {
  container.replaceChildren();
  if (rows.length === 0) {
    const placeholder = document.createElement("div");
    placeholder.className = "placeholder";
    placeholder.textContent = "No traffic yet - submit an intent.";
    container.appendChild(placeholder);
    return;
  }
  for (const event of rows) {
    const row = document.createElement("div");
    row.className = `trace-row iface-${event.interface.toLowerCase()} dir-${event.direction}`;
    const label = document.createElement("span");
    label.className = "label";
    label.textContent = event.label || "·";
    const route = document.createElement("span");
    route.className = "route";
    route.textContent = `${event.source} → ${event.destination}`;
    const iface = document.createElement("span");
    iface.className = "iface";
    iface.textContent = event.interface;
    const purpose = document.createElement("span");
    purpose.className = "purpose";
    purpose.textContent = event.purpose;
    row.append(label, route, iface, purpose);
    container.appendChild(row);
  }
  container.scrollTop = container.scrollHeight;
}

export function renderNfPanel(container: HTMLElement,
                              statuses: Record<string, NfStatus>): void {
  container.replaceChildren();
  for (const nf of Object.keys(statuses).sort()) {
    const status = statuses[nf];
    const cell = document.createElement("div");
    cell.className = `nf-cell ${status.state === "Running" ? "nf-up" : "nf-down"}`;
    const name = document.createElement("div");
    name.className = "nf-name";
    name.textContent = nf;
    const state = document.createElement("div");
    state.className = "nf-state";
    state.textContent = status.state + (status.registered ? " (registered)" : "");
    cell.append(name, state);
    container.appendChild(cell);
  }
}

export function renderReport(container: HTMLElement,
                             report: LatencyReportDoc | null): void {
  container.replaceChildren();
  if (!report) {
    const placeholder = document.createElement("div");
    placeholder.className = "placeholder";
    placeholder.textContent = "No latency report yet - run a scenario.";
    container.appendChild(placeholder);
    return;
  }
  const table = document.createElement("table");
  const head = table.createTHead().insertRow();
  for (const title of ["Component", "Mean [s]", "Std [s]", "Min [s]", "Max [s]"]) {
    const cell = document.createElement("th");
    cell.textContent = title;
    head.appendChild(cell);
  }
  const body = table.createTBody();
  for (const [name, stats] of Object.entries(report.components)) {
    const row = body.insertRow();
    row.insertCell().textContent = name;
    for (const value of [stats.meanS, stats.stdS, stats.minS, stats.maxS]) {
      const cell = row.insertCell();
      cell.textContent = value.toFixed(3);
      cell.className = "num";
    }
  }
  const caption = document.createElement("div");
  caption.className = "caption";
  caption.textContent = `${report.runCount} runs`;
  container.append(table, caption);
}

export function renderOutcome(container: HTMLElement,
                              model: ConsoleViewModel): void {
  if (model.activeTask) {
    container.className = "outcome working";
    container.textContent = `Working: ${model.activeTask.prompt}`;
  } else if (model.lastOutcome) {
    const failed = model.lastOutcome.state !== "completed";
    container.className = failed ? "outcome failed" : "outcome done";
    container.textContent = model.lastOutcome.text;
  } else {
    container.className = "outcome";
    container.textContent = "";
  }
}
