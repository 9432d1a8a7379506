import { describe, expect, it } from "vitest";

import {
  fetchLatencyReport, fetchNfStatuses, submitIntent,
} from "../src/api.js";
import type { FetchLike } from "../src/api.js";

function jsonResponse(doc: unknown, ok = true, status = 200): Response {
  return {
    ok,
    status,
    json: async () => doc,
  } as unknown as Response;
}

describe("submitIntent", () => {
  it("sends a message/send envelope and reads the task outcome", async () => {
    const calls: Array<{ url: string; body: any }> = [];
    const fetchFn: FetchLike = async (url, init) => {
      calls.push({ url, body: JSON.parse(String(init?.body)) });
      return jsonResponse({
        id: calls[0].body.id,
        jsonrpc: "2.0",
        result: {
          id: "task-1",
          kind: "task",
          status: {
            state: "completed",
            message: { role: "agent", parts: [{ kind: "text", text: "AMF started" }] },
          },
        },
      });
    };
    const outcome = await submitIntent(fetchFn, "http://host:8001", "Start the AMF");
    expect(outcome).toEqual({ state: "completed", text: "AMF started" });
    expect(calls[0].url).toBe("http://host:8001/");
    const body = calls[0].body;
    expect(body.jsonrpc).toBe("2.0");
    expect(body.method).toBe("message/send");
    expect(body.params.message.role).toBe("user");
    expect(body.params.message.parts[0]).toEqual({ kind: "text", text: "Start the AMF" });
  });

  it("maps protocol errors to a failed outcome", async () => {
    const fetchFn: FetchLike = async () =>
      jsonResponse({ id: 1, jsonrpc: "2.0",
                     error: { code: -32601, message: "method not found" } });
    const outcome = await submitIntent(fetchFn, "http://host:8001", "x");
    expect(outcome.state).toBe("failed");
    expect(outcome.text).toContain("method not found");
  });

  it("propagates transport failures to the caller", async () => {
    const fetchFn: FetchLike = async () => { throw new Error("connection refused"); };
    await expect(submitIntent(fetchFn, "http://host:8001", "x"))
      .rejects.toThrow("connection refused");
  });
});

describe("fetchNfStatuses", () => {
  it("derives Running from a non-empty discovery item list", async () => {
    const fetchFn: FetchLike = async (url) => {
      const registered = url.includes("nf-type=AMF");
      return jsonResponse({
        _links: { item: registered ? [{ href: "http://nrf/x" }] : [], self: "" },
      });
    };
    const statuses = await fetchNfStatuses(fetchFn, "http://nrf:8080",
                                           ["AMF", "SMF"]);
    expect(statuses.AMF).toEqual({ state: "Running", registered: true });
    expect(statuses.SMF).toEqual({ state: "Stopped", registered: false });
  });

  it("queries the discovery endpoint per NF type", async () => {
    const urls: string[] = [];
    const fetchFn: FetchLike = async (url) => {
      urls.push(url);
      return jsonResponse({ _links: { item: [], self: "" } });
    };
    await fetchNfStatuses(fetchFn, "http://nrf:8080", ["AMF", "UPF"]);
    expect(urls.sort()).toEqual([
      "http://nrf:8080/nnrf-nfm/v1/nf-instances?nf-type=AMF",
      "http://nrf:8080/nnrf-nfm/v1/nf-instances?nf-type=UPF",
    ]);
  });
});

describe("fetchLatencyReport", () => {
  it("returns null when no report exists yet", async () => {
    const fetchFn: FetchLike = async () => jsonResponse({}, false, 404);
    expect(await fetchLatencyReport(fetchFn, "http://control:8010")).toBeNull();
  });

  it("returns the report document untouched", async () => {
    const doc = { runCount: 10, components: { "end-to-end": {
      meanS: 12.81, stdS: 0.1, minS: 12.5, maxS: 13.0 } } };
    const fetchFn: FetchLike = async () => jsonResponse(doc);
    expect(await fetchLatencyReport(fetchFn, "http://control:8010")).toEqual(doc);
  });
});
