// Wiring: real fetch/EventSource against a live stack.

import {
  fetchEndpoints, fetchLatencyReport, fetchNfStatuses, submitIntent,
} from "./api.js";
import { ConsoleViewModel } from "./model.js";
import { TimelineStream } from "./sse.js";
import type { EventSourceLike } from "./sse.js";
import { renderNfPanel, renderOutcome, renderReport, renderTimeline } from "./view.js";
import type { InterfaceTag } from "./types.js";

const STATUS_POLL_MS = 2000;
const REPORT_POLL_MS = 5000;

// Adapter narrowing the browser EventSource to the injectable interface.
function makeNativeEventSource(url: string): EventSourceLike {
  const native = new EventSource(url);
  const adapter: EventSourceLike = {
    onmessage: null,
    onerror: null,
    onopen: null,
    close: () => native.close(),
  };
  native.onmessage = (message) => adapter.onmessage?.({ data: message.data });
  native.onerror = () => adapter.onerror?.();
  native.onopen = () => adapter.onopen?.();
  return adapter;
}

function byId<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

async function boot(): Promise<void> {
  const model = new ConsoleViewModel();
  const controlUrl = window.location.origin;
  const endpoints = await fetchEndpoints(fetch.bind(window), controlUrl);

  const intentInput = byId<HTMLInputElement>("intent-input");
  const submitButton = byId<HTMLButtonElement>("intent-submit");
  const outcomePanel = byId<HTMLDivElement>("outcome");
  const timelinePanel = byId<HTMLDivElement>("timeline");
  const nfPanel = byId<HTMLDivElement>("nf-panel");
  const reportPanel = byId<HTMLDivElement>("report");
  const banner = byId<HTMLDivElement>("stream-banner");
  const filterSelect = byId<HTMLSelectElement>("iface-filter");

  const refreshControls = () => {
    submitButton.disabled = !model.canSubmit(intentInput.value);
  };
  const repaintTimeline = () => renderTimeline(timelinePanel, model.labeledRows());

  intentInput.addEventListener("input", refreshControls);
  refreshControls();

  filterSelect.addEventListener("change", () => {
    model.filter = (filterSelect.value || null) as InterfaceTag | null;
    repaintTimeline();
  });

  submitButton.addEventListener("click", () => {
    void (async () => {
      const text = intentInput.value;
      if (!model.canSubmit(text)) return;
      model.beginTask(text);
      refreshControls();
      renderOutcome(outcomePanel, model);
      try {
        const outcome = await submitIntent(fetch.bind(window),
                                           endpoints.hostAgent, text);
        model.finishTask(outcome);
      } catch (error) {
        model.finishTask({
          state: "failed",
          text: `Host Agent unreachable: ${String(error)}`,
        });
      }
      refreshControls();
      renderOutcome(outcomePanel, model);
    })();
  });

  const stream = new TimelineStream(
    `${controlUrl}/events`,
    makeNativeEventSource,
    {
      onEvent: (event) => {
        if (model.addEvent(event)) repaintTimeline();
      },
      onConnected: () => {
        model.connected = true;
        banner.hidden = true;
      },
      onDisconnected: () => {
        model.connected = false;
        banner.hidden = false;
      },
    },
  );
  stream.connect();

  const pollStatuses = async () => {
    try {
      const statuses = await fetchNfStatuses(fetch.bind(window), endpoints.nrf,
                                             endpoints.nfTypes);
      model.setStatuses(statuses);
      renderNfPanel(nfPanel, model.nfStatuses);
    } catch {
      // NRF briefly unreachable: keep the previous panel.
    }
  };
  const pollReport = async () => {
    model.setReport(await fetchLatencyReport(fetch.bind(window), controlUrl));
    renderReport(reportPanel, model.latestReport);
  };

  await pollStatuses();
  await pollReport();
  repaintTimeline();
  renderOutcome(outcomePanel, model);
  window.setInterval(() => void pollStatuses(), STATUS_POLL_MS);
  window.setInterval(() => void pollReport(), REPORT_POLL_MS);
}

void boot();
