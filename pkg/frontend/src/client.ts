/** WebSocket client for the teleop service with automatic reconnection.
 *
 * The constructor is injectable so the same client runs in the browser
 * (global WebSocket) and under node tests (the `ws` package).
 *
 * Close code 1000 means the server ended the session (exit utterance): no
 * reconnect. Any other close schedules a retry until `maxReconnectAttempts`
 * is exhausted. After every successful (re)connect the client re-applies its
 * mode and language, since those are per-connection on the server.
 */
import type { ClientMessage, LanguageChoice, Mode } from "./protocol.js";
import { parseServerMessage, serializeClientMessage } from "./protocol.js";
import type { SessionEvent } from "./session.js";

export interface WebSocketLike {
  onopen: ((ev?: unknown) => void) | null;
  onmessage: ((ev: { data: unknown }) => void) | null;
  onclose: ((ev: { code: number }) => void) | null;
  onerror: ((ev?: unknown) => void) | null;
  readyState: number;
  send(data: string): void;
  close(code?: number): void;
}

export type WebSocketCtor = new (url: string) => WebSocketLike;

const WS_OPEN = 1;

export interface ClientOptions {
  /** ws:// or wss:// URL of the service's socket endpoint. */
  url: string;
  onEvent: (event: SessionEvent) => void;
  webSocketImpl?: WebSocketCtor;
  reconnectDelayMs?: number;
  maxReconnectAttempts?: number;
}

export class ConsoleClient {
  private readonly url: string;
  private readonly onEvent: (event: SessionEvent) => void;
  private readonly WebSocketImpl: WebSocketCtor;
  private readonly reconnectDelayMs: number;
  private readonly maxReconnectAttempts: number;

  private socket: WebSocketLike | null = null;
  private retries = 0;
  private timer: ReturnType<typeof setTimeout> | null = null;
  private stopped = false;

  private mode: Mode = "fuzzy";
  private language: LanguageChoice = "both";

  constructor(options: ClientOptions) {
    this.url = options.url;
    this.onEvent = options.onEvent;
    const impl =
      options.webSocketImpl ??
      ((globalThis as { WebSocket?: WebSocketCtor }).WebSocket as WebSocketCtor);
    if (!impl) {
      throw new Error("no WebSocket implementation available");
    }
    this.WebSocketImpl = impl;
    this.reconnectDelayMs = options.reconnectDelayMs ?? 500;
    this.maxReconnectAttempts = options.maxReconnectAttempts ?? 20;
  }

  connect(): void {
    this.stopped = false;
    this.onEvent({ kind: "connecting" });
    this.dial();
  }

  private dial(): void {
    let socket: WebSocketLike;
    try {
      socket = new this.WebSocketImpl(this.url);
    } catch {
      this.scheduleReconnect();
      return;
    }
    this.socket = socket;
    socket.onopen = () => {
      this.retries = 0;
      // Per-connection settings reset server-side on a new socket.
      this.sendMessage({ type: "set_mode", mode: this.mode });
      this.sendMessage({ type: "set_language", language: this.language });
      this.onEvent({ kind: "open" });
    };
    socket.onmessage = (ev) => {
      // Text frames arrive as strings in the browser and may arrive as
      // Buffers under node; anything else fails to parse and is ignored.
      const raw = typeof ev.data === "string" ? ev.data : String(ev.data);
      const message = parseServerMessage(raw);
      if (message) this.onEvent({ kind: "server", message });
    };
    socket.onclose = (ev) => {
      this.socket = null;
      if (this.stopped) return;
      if (ev.code === 1000) {
        this.onEvent({ kind: "ended" });
        return;
      }
      this.scheduleReconnect();
    };
    socket.onerror = () => {
      // onclose follows; reconnect is decided there.
    };
  }

  private scheduleReconnect(): void {
    if (this.stopped) return;
    if (this.retries >= this.maxReconnectAttempts) {
      this.onEvent({ kind: "failed" });
      return;
    }
    this.retries += 1;
    this.onEvent({ kind: "reconnecting", attempt: this.retries });
    this.timer = setTimeout(() => {
      this.timer = null;
      this.dial();
    }, this.reconnectDelayMs);
  }

  private sendMessage(message: ClientMessage): boolean {
    const socket = this.socket;
    if (!socket || socket.readyState !== WS_OPEN) return false;
    socket.send(serializeClientMessage(message));
    return true;
  }

  sendCommand(text: string): boolean {
    return this.sendMessage({ type: "command", text });
  }

  setMode(mode: Mode): void {
    this.mode = mode;
    this.onEvent({ kind: "set_mode", mode });
    this.sendMessage({ type: "set_mode", mode });
  }

  setLanguage(language: LanguageChoice): void {
    this.language = language;
    this.onEvent({ kind: "set_language", language });
    this.sendMessage({ type: "set_language", language });
  }

  reset(): boolean {
    return this.sendMessage({ type: "reset" });
  }

  /** Stop for good: no further events, no reconnects. */
  close(): void {
    this.stopped = true;
    if (this.timer !== null) {
      clearTimeout(this.timer);
      this.timer = null;
    }
    const socket = this.socket;
    this.socket = null;
    if (socket) {
      socket.onclose = null;
      try {
        socket.close(1000);
      } catch {
        // already closing
      }
    }
  }
}
