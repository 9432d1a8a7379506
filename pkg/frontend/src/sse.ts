// Event-stream client for the control endpoint's trace feed.
//
// EventSource reconnects on its own and resends Last-Event-ID, so the
// server replays anything missed; the model de-duplicates by seq. The
// factory is injectable so tests can drive a fake source.

import type { TraceEventRecord } from "./types.js";

export interface EventSourceLike {
  onmessage: ((event: { data: string }) => void) | null;
  onerror: (() => void) | null;
  onopen: (() => void) | null;
  close(): void;
}

export type EventSourceFactory = (url: string) => EventSourceLike;

export interface TimelineStreamHandlers {
  onEvent: (event: TraceEventRecord) => void;
  onConnected: () => void;
  onDisconnected: () => void;
}

export class TimelineStream {
  private source: EventSourceLike | null = null;

  constructor(
    private readonly url: string,
    private readonly factory: EventSourceFactory,
    private readonly handlers: TimelineStreamHandlers,
  ) {}

  connect(): void {
    this.close();
    this.source = this.factory(this.url);
    this.source.onopen = () => this.handlers.onConnected();
    this.source.onerror = () => this.handlers.onDisconnected();
    this.source.onmessage = (message) => {
      let parsed: TraceEventRecord;
      try {
        parsed = JSON.parse(message.data) as TraceEventRecord;
      } catch {
        return; // keep-alive or partial frame
      }
      this.handlers.onEvent(parsed);
    };
  }

  close(): void {
    if (this.source) {
      this.source.close();
      this.source = null;
    }
  }

  isOpen(): boolean {
    return this.source !== null;
  }
}
