import { afterEach, beforeEach, describe, expect, it, vi } from "vitest";

import { ConsoleClient, type WebSocketLike } from "../src/client.js";
import type { SessionEvent } from "../src/session.js";

class FakeSocket implements WebSocketLike {
  static instances: FakeSocket[] = [];
  onopen: ((ev?: unknown) => void) | null = null;
  onmessage: ((ev: { data: unknown }) => void) | null = null;
  onclose: ((ev: { code: number }) => void) | null = null;
  onerror: ((ev?: unknown) => void) | null = null;
  readyState = 0;
  sent: string[] = [];
  closedWith: number | null = null;

  constructor(public url: string) {
    FakeSocket.instances.push(this);
  }
  send(data: string): void {
    this.sent.push(data);
  }
  close(code = 1000): void {
    this.closedWith = code;
    this.readyState = 3;
  }
  // Test helpers: drive the socket like the real network would.
  open(): void {
    this.readyState = 1;
    this.onopen?.();
  }
  receive(message: unknown): void {
    this.onmessage?.({ data: JSON.stringify(message) });
  }
  drop(code = 1006): void {
    this.readyState = 3;
    this.onclose?.({ code });
  }
}

function lastSocket(): FakeSocket {
  const socket = FakeSocket.instances[FakeSocket.instances.length - 1];
  if (!socket) throw new Error("no socket dialed");
  return socket;
}

let events: SessionEvent[] = [];

function makeClient(overrides: Record<string, unknown> = {}): ConsoleClient {
  return new ConsoleClient({
    url: "ws://example.test/ws",
    onEvent: (event) => events.push(event),
    webSocketImpl: FakeSocket,
    reconnectDelayMs: 100,
    maxReconnectAttempts: 3,
    ...overrides,
  });
}

beforeEach(() => {
  FakeSocket.instances = [];
  events = [];
  vi.useFakeTimers();
});

afterEach(() => {
  vi.useRealTimers();
});

describe("ConsoleClient", () => {
  it("re-applies mode and language on every (re)open", () => {
    const client = makeClient();
    client.connect();
    lastSocket().open();
    expect(lastSocket().sent.map((f) => JSON.parse(f))).toEqual([
      { type: "set_mode", mode: "fuzzy" },
      { type: "set_language", language: "both" },
    ]);

    client.setMode("exact");
    client.setLanguage("es");
    lastSocket().drop(1006);
    vi.advanceTimersByTime(100);
    lastSocket().open();
    expect(lastSocket().sent.map((f) => JSON.parse(f))).toEqual([
      { type: "set_mode", mode: "exact" },
      { type: "set_language", language: "es" },
    ]);
  });

  it("delivers parsed server messages and ignores junk frames", () => {
    const client = makeClient();
    client.connect();
    const socket = lastSocket();
    socket.open();
    socket.receive({
      type: "state", x: 0, y: 0, z: 1, yaw: 0, active_action: null, tick: 1,
    });
    socket.onmessage?.({ data: "{{nope" });
    socket.onmessage?.({ data: 12345 });
    const server = events.filter((e) => e.kind === "server");
    expect(server).toHaveLength(1);
    expect(server[0]?.kind === "server" && server[0].message.type).toBe("state");
  });

  it("does not send before the socket is open", () => {
    const client = makeClient();
    client.connect();
    expect(client.sendCommand("go forward")).toBe(false);
    lastSocket().open();
    expect(client.sendCommand("go forward")).toBe(true);
    expect(JSON.parse(lastSocket().sent.at(-1) ?? "")).toEqual({
      type: "command",
      text: "go forward",
    });
  });

  it("treats close 1000 as session end and does not reconnect", () => {
    const client = makeClient();
    client.connect();
    lastSocket().open();
    lastSocket().drop(1000);
    vi.advanceTimersByTime(10_000);
    expect(FakeSocket.instances).toHaveLength(1);
    expect(events.at(-1)).toEqual({ kind: "ended" });
  });

  it("reconnects on abnormal close until the attempt cap, then fails", () => {
    const client = makeClient();
    client.connect();
    lastSocket().open();
    lastSocket().drop(1006);
    for (let i = 0; i < 3; i++) {
      vi.advanceTimersByTime(100);
      lastSocket().drop(1006);
    }
    vi.advanceTimersByTime(10_000);
    expect(FakeSocket.instances).toHaveLength(4);
    const kinds = events.map((e) => e.kind);
    expect(kinds.filter((k) => k === "reconnecting")).toHaveLength(3);
    expect(kinds.at(-1)).toBe("failed");
  });

  it("resets the retry budget after a successful reconnect", () => {
    const client = makeClient();
    client.connect();
    lastSocket().open();
    for (let round = 0; round < 5; round++) {
      lastSocket().drop(1006);
      vi.advanceTimersByTime(100);
      lastSocket().open();
    }
    expect(events.filter((e) => e.kind === "failed")).toHaveLength(0);
    expect(events.filter((e) => e.kind === "open")).toHaveLength(6);
  });

  it("close() silences the client and closes cleanly", () => {
    const client = makeClient();
    client.connect();
    const socket = lastSocket();
    socket.open();
    client.close();
    expect(socket.closedWith).toBe(1000);
    const before = events.length;
    vi.advanceTimersByTime(10_000);
    expect(FakeSocket.instances).toHaveLength(1);
    expect(events.length).toBe(before);
  });
});
