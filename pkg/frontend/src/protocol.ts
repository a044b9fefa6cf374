/** Message protocol spoken by the teleop service, plus the /lexicon shape.
 *
 * Every frame is one JSON object. The console never re-interprets anything:
 * scrollback entries are server messages verbatim.
 */

export type Mode = "exact" | "fuzzy";
export type LanguageChoice = "es" | "en" | "both";

export type ClientMessage =
  | { type: "command"; text: string }
  | { type: "set_mode"; mode: Mode }
  | { type: "set_language"; language: LanguageChoice }
  | { type: "reset" };

export interface StateMessage {
  type: "state";
  x: number;
  y: number;
  z: number;
  yaw: number;
  active_action: string | null;
  tick: number;
}

export interface InterpretationMessage {
  type: "interpretation";
  hypothesis: string;
  matched_surface: string | null;
  action_class: string | null;
  distance: number | null;
  mode: string;
  no_class: boolean;
}

export interface ErrorMessage {
  type: "error";
  message: string;
}

export type ServerMessage = StateMessage | InterpretationMessage | ErrorMessage;

export interface LexiconEntry {
  surface: string;
  language: string;
  action_class: string;
}

export interface LexiconDocument {
  name: string;
  version: string;
  entries: LexiconEntry[];
}

function isNumber(v: unknown): v is number {
  return typeof v === "number" && Number.isFinite(v);
}

function isStringOrNull(v: unknown): v is string | null {
  return v === null || typeof v === "string";
}

/** Parse one text frame into a typed server message; null if it is not one. */
export function parseServerMessage(raw: string): ServerMessage | null {
  let data: unknown;
  try {
    data = JSON.parse(raw);
  } catch {
    return null;
  }
  if (typeof data !== "object" || data === null) return null;
  const m = data as Record<string, unknown>;
  switch (m.type) {
    case "state":
      if (
        isNumber(m.x) && isNumber(m.y) && isNumber(m.z) && isNumber(m.yaw) &&
        isStringOrNull(m.active_action) && isNumber(m.tick)
      ) {
        return {
          type: "state",
          x: m.x, y: m.y, z: m.z, yaw: m.yaw,
          active_action: m.active_action, tick: m.tick,
        };
      }
      return null;
    case "interpretation":
      if (
        typeof m.hypothesis === "string" &&
        isStringOrNull(m.matched_surface) &&
        isStringOrNull(m.action_class) &&
        (m.distance === null || isNumber(m.distance)) &&
        typeof m.mode === "string" &&
        typeof m.no_class === "boolean"
      ) {
        return {
          type: "interpretation",
          hypothesis: m.hypothesis,
          matched_surface: m.matched_surface,
          action_class: m.action_class,
          distance: m.distance as number | null,
          mode: m.mode,
          no_class: m.no_class,
        };
      }
      return null;
    case "error":
      if (typeof m.message === "string") {
        return { type: "error", message: m.message };
      }
      return null;
    default:
      return null;
  }
}

export function serializeClientMessage(message: ClientMessage): string {
  return JSON.stringify(message);
}

/** An interpretation of an exit utterance: no class was assigned, yet it is
 * not a classification failure. The server closes right after sending it. */
export function isExitInterpretation(m: InterpretationMessage): boolean {
  return m.action_class === null && !m.no_class;
}

function isLexiconEntry(v: unknown): v is LexiconEntry {
  if (typeof v !== "object" || v === null) return false;
  const e = v as Record<string, unknown>;
  return (
    typeof e.surface === "string" &&
    typeof e.language === "string" &&
    typeof e.action_class === "string"
  );
}

/** Fetch and validate the lexicon reference document. */
export async function fetchLexicon(baseUrl: string): Promise<LexiconDocument> {
  const response = await fetch(`${baseUrl}/lexicon`);
  if (!response.ok) {
    throw new Error(`lexicon fetch failed: HTTP ${response.status}`);
  }
  const data: unknown = await response.json();
  if (typeof data !== "object" || data === null) {
    throw new Error("lexicon document is not an object");
  }
  const doc = data as Record<string, unknown>;
  if (
    typeof doc.name !== "string" ||
    typeof doc.version !== "string" ||
    !Array.isArray(doc.entries) ||
    !doc.entries.every(isLexiconEntry)
  ) {
    throw new Error("lexicon document has an unexpected shape");
  }
  return { name: doc.name, version: doc.version, entries: doc.entries };
}

/** Group lexicon entries by action class, preserving entry order. */
export function groupByClass(doc: LexiconDocument): Map<string, LexiconEntry[]> {
  const groups = new Map<string, LexiconEntry[]>();
  for (const entry of doc.entries) {
    const bucket = groups.get(entry.action_class);
    if (bucket) bucket.push(entry);
    else groups.set(entry.action_class, [entry]);
  }
  return groups;
}
