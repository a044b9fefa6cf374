/** Browser entry point: wires the client, session state and renderer to the
 * page. Rendering is driven by incoming state messages; the console only
 * mutates simulation state through protocol messages.
 */
import { ConsoleClient } from "./client.js";
import type { LanguageChoice, Mode } from "./protocol.js";
import { fetchLexicon, groupByClass } from "./protocol.js";
import { defaultView, drawScene } from "./render.js";
import type { ConsoleSession } from "./session.js";
import { applyEvent, formatEvent, inputEnabled, newSession } from "./session.js";

function mustGet<T extends HTMLElement>(id: string): T {
  const el = document.getElementById(id);
  if (!el) throw new Error(`missing element #${id}`);
  return el as T;
}

const canvas = mustGet<HTMLCanvasElement>("scene");
const ctx = canvas.getContext("2d");
if (!ctx) throw new Error("2d canvas context unavailable");
const banner = mustGet<HTMLDivElement>("banner");
const scrollbackEl = mustGet<HTMLUListElement>("scrollback");
const commandInput = mustGet<HTMLInputElement>("command");
const sendButton = mustGet<HTMLButtonElement>("send");
const modeSelect = mustGet<HTMLSelectElement>("mode");
const languageSelect = mustGet<HTMLSelectElement>("language");
const resetButton = mustGet<HTMLButtonElement>("reset");
const lexiconEl = mustGet<HTMLDivElement>("lexicon");
const speechButton = mustGet<HTMLButtonElement>("speech");

const params = new URLSearchParams(location.search);
const host = params.get("service") ?? location.host;
const httpBase = `${location.protocol === "https:" ? "https" : "http"}://${host}`;
const wsBase = `${location.protocol === "https:" ? "wss" : "ws"}://${host}/ws`;

let session: ConsoleSession = newSession();
const view = defaultView(canvas.width, canvas.height);

function renderBanner(): void {
  switch (session.phase) {
    case "open":
      banner.textContent = `connected — ${host}`;
      banner.className = "banner ok";
      break;
    case "connecting":
      banner.textContent = "connecting…";
      banner.className = "banner warn";
      break;
    case "reconnecting":
      banner.textContent = "connection lost — retrying…";
      banner.className = "banner warn";
      break;
    case "ended":
      banner.textContent = "session ended (exit received)";
      banner.className = "banner info";
      break;
    case "failed":
      banner.textContent = "connection failed — is the service running?";
      banner.className = "banner error";
      break;
  }
  const enabled = inputEnabled(session);
  commandInput.disabled = !enabled;
  sendButton.disabled = !enabled;
  resetButton.disabled = !enabled;
}

function renderScrollback(): void {
  scrollbackEl.replaceChildren(
    ...session.scrollback.map((event) => {
      const li = document.createElement("li");
      li.textContent = formatEvent(event);
      if (event.no_class) li.className = "noclass";
      return li;
    }),
  );
  scrollbackEl.scrollTop = scrollbackEl.scrollHeight;
  const errors = session.errors;
  const lastError = errors[errors.length - 1];
  if (lastError) {
    const li = document.createElement("li");
    li.textContent = `error: ${lastError}`;
    li.className = "error";
    scrollbackEl.appendChild(li);
  }
}

const client = new ConsoleClient({
  url: wsBase,
  onEvent: (event) => {
    session = applyEvent(session, event);
    renderBanner();
    if (event.kind === "server") {
      if (event.message.type === "state") {
        drawScene(ctx, view, session.state);
      } else {
        renderScrollback();
      }
    }
  },
});

sendButton.onclick = () => {
  const text = commandInput.value.trim();
  if (!text) return;
  if (client.sendCommand(text)) commandInput.value = "";
};
commandInput.onkeydown = (ev) => {
  if (ev.key === "Enter") sendButton.click();
};
modeSelect.onchange = () => client.setMode(modeSelect.value as Mode);
languageSelect.onchange = () =>
  client.setLanguage(languageSelect.value as LanguageChoice);
resetButton.onclick = () => client.reset();

async function renderLexicon(): Promise<void> {
  try {
    const doc = await fetchLexicon(httpBase);
    const parts: string[] = [`<h3>${doc.name} (v${doc.version})</h3>`];
    for (const [actionClass, entries] of groupByClass(doc)) {
      const surfaces = entries
        .map((e) => `${e.surface} <small>(${e.language})</small>`)
        .join(", ");
      parts.push(`<dt>${actionClass}</dt><dd>${surfaces}</dd>`);
    }
    lexiconEl.innerHTML = `${parts[0]}<dl>${parts.slice(1).join("")}</dl>`;
  } catch {
    lexiconEl.textContent = "lexicon unavailable";
  }
}

// Optional browser speech capture behind a feature flag; it feeds the exact
// same command path as the text box.
interface RecognitionLike {
  lang: string;
  start(): void;
  onresult: ((ev: { results: { [i: number]: { [j: number]: { transcript: string } } } }) => void) | null;
}
function setupSpeech(): void {
  if (params.get("speech") !== "1") {
    speechButton.hidden = true;
    return;
  }
  const Recognition = (
    globalThis as { webkitSpeechRecognition?: new () => RecognitionLike }
  ).webkitSpeechRecognition;
  if (!Recognition) {
    speechButton.hidden = true;
    return;
  }
  speechButton.onclick = () => {
    const recognition = new Recognition();
    recognition.lang = session.language === "es" ? "es-ES" : "en-US";
    recognition.onresult = (ev) => {
      const transcript = ev.results[0]?.[0]?.transcript;
      if (transcript) client.sendCommand(transcript);
    };
    recognition.start();
  };
}

drawScene(ctx, view, null);
renderBanner();
setupSpeech();
void renderLexicon();
client.connect();
