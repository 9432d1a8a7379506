// The console touches exactly three surfaces: the Host Agent's A2A
// endpoint, read-only NRF discovery, and the control endpoint's
// trace/report documents. Nothing here calls MCP or lifecycle APIs.

import type { Endpoints, LatencyReportDoc, NfStatus, TaskOutcome } from "./types.js";

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

function randomId(): string {
  const hex = () => Math.floor(Math.random() * 0xffff).toString(16).padStart(4, "0");
  return `${hex()}${hex()}-${hex()}-${hex()}-${hex()}-${hex()}${hex()}${hex()}`;
}

export async function submitIntent(
  fetchFn: FetchLike,
  hostAgentUrl: string,
  text: string,
): Promise<TaskOutcome> {
  const id = randomId();
  const body = {
    id,
    jsonrpc: "2.0",
    method: "message/send",
    params: {
      message: { kind: "message", role: "user", parts: [{ kind: "text", text }] },
    },
  };
  const response = await fetchFn(hostAgentUrl.replace(/\/$/, "") + "/", {
    method: "POST",
    headers: { "content-type": "application/json" },
    body: JSON.stringify(body),
  });
  const reply = await response.json();
  if (reply.error) {
    return { state: "failed", text: `protocol error: ${reply.error.message}` };
  }
  const status = reply.result?.status;
  return {
    state: status?.state ?? "failed",
    text: status?.message?.parts?.[0]?.text ?? "",
  };
}

// One read-only discovery query per NF type; Running is what registration
// means in this deployment.
export async function fetchNfStatuses(
  fetchFn: FetchLike,
  nrfUrl: string,
  nfTypes: string[],
): Promise<Record<string, NfStatus>> {
  const statuses: Record<string, NfStatus> = {};
  await Promise.all(nfTypes.map(async (nfType) => {
    const url = `${nrfUrl.replace(/\/$/, "")}/nnrf-nfm/v1/nf-instances?nf-type=${nfType}`;
    const response = await fetchFn(url);
    const doc = await response.json();
    const registered = (doc?._links?.item ?? []).length > 0;
    statuses[nfType] = { registered, state: registered ? "Running" : "Stopped" };
  }));
  return statuses;
}

export async function fetchLatencyReport(
  fetchFn: FetchLike,
  controlUrl: string,
): Promise<LatencyReportDoc | null> {
  const response = await fetchFn(controlUrl.replace(/\/$/, "") + "/api/report/latency");
  if (!response.ok) return null;
  return (await response.json()) as LatencyReportDoc;
}

export async function fetchEndpoints(
  fetchFn: FetchLike,
  controlUrl: string,
): Promise<Endpoints> {
  const response = await fetchFn(controlUrl.replace(/\/$/, "") + "/api/endpoints");
  if (!response.ok) throw new Error(`endpoints fetch failed: ${response.status}`);
  return (await response.json()) as Endpoints;
}
