/** Console session state: a pure fold over connection and server events.
 *
 * Invariants:
 *  - `state` is always the most recent state message received.
 *  - `scrollback` holds interpretation events verbatim, ordered by arrival.
 */
import type {
  InterpretationMessage,
  LanguageChoice,
  Mode,
  ServerMessage,
  StateMessage,
} from "./protocol.js";
import { isExitInterpretation } from "./protocol.js";

export type ConnectionPhase =
  | "connecting"
  | "open"
  | "reconnecting"
  | "ended"     // server closed the session after an exit utterance
  | "failed";   // gave up reconnecting

export type SessionEvent =
  | { kind: "connecting" }
  | { kind: "open" }
  | { kind: "server"; message: ServerMessage }
  | { kind: "reconnecting"; attempt: number }
  | { kind: "ended" }
  | { kind: "failed" }
  | { kind: "set_mode"; mode: Mode }
  | { kind: "set_language"; language: LanguageChoice };

export interface ConsoleSession {
  phase: ConnectionPhase;
  state: StateMessage | null;
  scrollback: InterpretationMessage[];
  errors: string[];
  mode: Mode;
  language: LanguageChoice;
  /** True once an exit interpretation has been observed. */
  exitSeen: boolean;
}

export function newSession(): ConsoleSession {
  return {
    phase: "connecting",
    state: null,
    scrollback: [],
    errors: [],
    mode: "fuzzy",
    language: "both",
    exitSeen: false,
  };
}

export function applyEvent(
  session: ConsoleSession,
  event: SessionEvent,
): ConsoleSession {
  switch (event.kind) {
    case "connecting":
      return { ...session, phase: "connecting" };
    case "open":
      return { ...session, phase: "open" };
    case "reconnecting":
      return { ...session, phase: "reconnecting" };
    case "ended":
      return { ...session, phase: "ended" };
    case "failed":
      return { ...session, phase: "failed" };
    case "set_mode":
      return { ...session, mode: event.mode };
    case "set_language":
      return { ...session, language: event.language };
    case "server": {
      const message = event.message;
      switch (message.type) {
        case "state":
          return { ...session, state: message };
        case "interpretation":
          return {
            ...session,
            scrollback: [...session.scrollback, message],
            exitSeen: session.exitSeen || isExitInterpretation(message),
          };
        case "error":
          return { ...session, errors: [...session.errors, message.message] };
      }
    }
  }
}

/** Text input is enabled only while the connection is open. */
export function inputEnabled(session: ConsoleSession): boolean {
  return session.phase === "open";
}

/** One scrollback line: hypothesis → matched surface, class, distance. */
export function formatEvent(m: InterpretationMessage): string {
  if (isExitInterpretation(m)) {
    return `[${m.mode}] "${m.hypothesis}" → session ended`;
  }
  if (m.no_class) {
    return `[${m.mode}] "${m.hypothesis}" → no class`;
  }
  return (
    `[${m.mode}] "${m.hypothesis}" → "${m.matched_surface}" ` +
    `(${m.action_class}, d=${m.distance})`
  );
}
