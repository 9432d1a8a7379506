// Console view-model: pure state transitions, no DOM and no transport.

import type {
  InterfaceTag, LatencyReportDoc, NfStatus, TaskOutcome, TraceEventRecord,
} from "./types.js";

export interface ActiveTask {
  prompt: string;
  state: "active";
}

export class ConsoleViewModel {
  nfStatuses: Record<string, NfStatus> = {};
  liveEvents: TraceEventRecord[] = [];
  activeTask: ActiveTask | null = null;
  lastOutcome: TaskOutcome | null = null;
  latestReport: LatencyReportDoc | null = null;
  filter: InterfaceTag | null = null;
  connected = false;

  private seen = new Set<number>();

  // Events may replay after a reconnect; ordering must match server
  // emission order, which the seq field carries.
  addEvent(event: TraceEventRecord): boolean {
    if (this.seen.has(event.seq)) return false;
    this.seen.add(event.seq);
    this.liveEvents.push(event);
    this.liveEvents.sort((a, b) => a.seq - b.seq);
    return true;
  }

  visibleEvents(): TraceEventRecord[] {
    if (this.filter === null) return [...this.liveEvents];
    return this.liveEvents.filter((e) => e.interface === this.filter);
  }

  labeledRows(): TraceEventRecord[] {
    return this.visibleEvents().filter((e) => e.label !== "");
  }

  canSubmit(text: string): boolean {
    return text.trim().length > 0 && this.activeTask === null;
  }

  beginTask(prompt: string): void {
    this.activeTask = { prompt, state: "active" };
    this.lastOutcome = null;
  }

  finishTask(outcome: TaskOutcome): void {
    this.activeTask = null;
    this.lastOutcome = outcome;
  }

  setStatuses(statuses: Record<string, NfStatus>): void {
    this.nfStatuses = statuses;
  }

  setReport(report: LatencyReportDoc | null): void {
    this.latestReport = report;
  }

  clearTimeline(): void {
    this.liveEvents = [];
    this.seen.clear();
  }
}
