import { describe, expect, it } from "vitest";

import type {
  InterpretationMessage,
  StateMessage,
} from "../src/protocol.js";
import {
  applyEvent,
  formatEvent,
  inputEnabled,
  newSession,
  type ConsoleSession,
  type SessionEvent,
} from "../src/session.js";

function state(tick: number, x = 0): StateMessage {
  return { type: "state", x, y: 0, z: 1, yaw: 0, active_action: null, tick };
}

function interpretation(
  hypothesis: string,
  overrides: Partial<InterpretationMessage> = {},
): InterpretationMessage {
  return {
    type: "interpretation",
    hypothesis,
    matched_surface: hypothesis,
    action_class: "stop",
    distance: 0,
    mode: "fuzzy",
    no_class: false,
    ...overrides,
  };
}

function fold(events: SessionEvent[], start?: ConsoleSession): ConsoleSession {
  return events.reduce(applyEvent, start ?? newSession());
}

describe("session state", () => {
  it("starts connecting with fuzzy mode, both languages", () => {
    const s = newSession();
    expect(s.phase).toBe("connecting");
    expect(s.mode).toBe("fuzzy");
    expect(s.language).toBe("both");
    expect(s.state).toBeNull();
    expect(s.scrollback).toEqual([]);
  });

  it("keeps only the most recent state message", () => {
    const s = fold([
      { kind: "open" },
      { kind: "server", message: state(1) },
      { kind: "server", message: state(2, 0.5) },
      { kind: "server", message: state(3, 1.0) },
    ]);
    expect(s.state?.tick).toBe(3);
    expect(s.state?.x).toBe(1.0);
  });

  it("orders scrollback by arrival and stores messages verbatim", () => {
    const first = interpretation("up");
    const second = interpretation("para", { mode: "exact" });
    const s = fold([
      { kind: "open" },
      { kind: "server", message: first },
      { kind: "server", message: second },
    ]);
    expect(s.scrollback).toHaveLength(2);
    expect(s.scrollback[0]).toBe(first);
    expect(s.scrollback[1]).toBe(second);
  });

  it("collects error payloads without dropping the session", () => {
    const s = fold([
      { kind: "open" },
      { kind: "server", message: { type: "error", message: "missing text" } },
    ]);
    expect(s.phase).toBe("open");
    expect(s.errors).toEqual(["missing text"]);
  });

  it("tracks mode and language toggles", () => {
    const s = fold([
      { kind: "set_mode", mode: "exact" },
      { kind: "set_language", language: "es" },
    ]);
    expect(s.mode).toBe("exact");
    expect(s.language).toBe("es");
  });

  it("marks exitSeen on the exit echo and ends on server close", () => {
    const exitEcho = interpretation("salir", {
      matched_surface: null,
      action_class: null,
      distance: null,
      no_class: false,
    });
    const s = fold([
      { kind: "open" },
      { kind: "server", message: exitEcho },
      { kind: "ended" },
    ]);
    expect(s.exitSeen).toBe(true);
    expect(s.phase).toBe("ended");
  });

  it("does not mutate the previous session value", () => {
    const before = fold([{ kind: "open" }]);
    const after = applyEvent(before, {
      kind: "server",
      message: interpretation("up"),
    });
    expect(before.scrollback).toHaveLength(0);
    expect(after.scrollback).toHaveLength(1);
  });
});

describe("inputEnabled", () => {
  it("is true only while open", () => {
    expect(inputEnabled(fold([{ kind: "open" }]))).toBe(true);
    for (const event of [
      { kind: "connecting" },
      { kind: "reconnecting", attempt: 1 },
      { kind: "ended" },
      { kind: "failed" },
    ] as const) {
      expect(inputEnabled(fold([{ kind: "open" }, event]))).toBe(false);
    }
  });
});

describe("formatEvent", () => {
  it("shows hypothesis, surface, class and distance", () => {
    expect(
      formatEvent(
        interpretation("go to left", {
          matched_surface: "go left",
          action_class: "go_left",
          distance: 3,
        }),
      ),
    ).toBe('[fuzzy] "go to left" → "go left" (go_left, d=3)');
  });

  it("labels no-class and exit lines", () => {
    expect(
      formatEvent(
        interpretation("go forwards", {
          matched_surface: null,
          action_class: null,
          distance: null,
          mode: "exact",
          no_class: true,
        }),
      ),
    ).toBe('[exact] "go forwards" → no class');
    expect(
      formatEvent(
        interpretation("salir", {
          matched_surface: null,
          action_class: null,
          distance: null,
          no_class: false,
        }),
      ),
    ).toBe('[fuzzy] "salir" → session ended');
  });
});
