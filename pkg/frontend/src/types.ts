// Shared wire types mirroring the control plane's JSON documents.

export type InterfaceTag = "A2A" | "MCP" | "SBI" | "SYS";

export interface TraceEventRecord {
  label: string;
  timestampNs: number;
  interface: InterfaceTag;
  source: string;
  destination: string;
  purpose: string;
  direction: "request" | "response";
  correlationId: string;
  seq: number;
}

export interface NfStatus {
  state: "Running" | "Stopped";
  registered: boolean;
}

export interface ComponentStats {
  meanS: number;
  stdS: number;
  minS: number;
  maxS: number;
}

export interface LatencyReportDoc {
  runCount: number;
  components: Record<string, ComponentStats>;
}

export type TaskState = "completed" | "failed" | "submitted" | "working";

export interface TaskOutcome {
  state: TaskState;
  text: string;
}

export interface Endpoints {
  hostAgent: string;
  nrf: string;
  control: string;
  nfTypes: string[];
}
