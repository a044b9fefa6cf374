/** Top-down scene renderer.
 *
 * View convention (documented for tests and users): the canvas shows the room
 * from above with world +x to the right and world +y up-screen, origin at the
 * canvas centre. Yaw is measured in degrees with heading (cos yaw, sin yaw)
 * in world coordinates, so yaw 0° points right, yaw 90° points up-screen and
 * yaw 270° points along world −y, i.e. down-screen.
 *
 * All geometry helpers are pure; `drawScene` writes through a minimal 2D
 * interface so tests can use a recording fake in place of a real canvas.
 */
import type { StateMessage } from "./protocol.js";

export interface Draw2D {
  fillStyle: string | CanvasGradient | CanvasPattern;
  strokeStyle: string | CanvasGradient | CanvasPattern;
  lineWidth: number;
  font: string;
  textAlign: string;
  beginPath(): void;
  moveTo(x: number, y: number): void;
  lineTo(x: number, y: number): void;
  arc(x: number, y: number, r: number, a0: number, a1: number): void;
  fill(): void;
  stroke(): void;
  fillRect(x: number, y: number, w: number, h: number): void;
  strokeRect(x: number, y: number, w: number, h: number): void;
  fillText(text: string, x: number, y: number): void;
  setLineDash(segments: number[]): void;
}

export interface View {
  width: number;
  height: number;
  /** World metres spanned by the canvas width. */
  metersAcross: number;
  /** Top of the altitude bar, in metres. */
  zMax: number;
  /** Altitude floor, in metres. */
  floorZ: number;
}

export function defaultView(width: number, height: number): View {
  return { width, height, metersAcross: 8, zMax: 3, floorZ: 0.5 };
}

export function pixelsPerMeter(view: View): number {
  return view.width / view.metersAcross;
}

/** World (x, y) to screen pixels; +y world is up-screen. */
export function worldToScreen(
  view: View,
  x: number,
  y: number,
): { sx: number; sy: number } {
  const scale = pixelsPerMeter(view);
  return {
    sx: view.width / 2 + x * scale,
    sy: view.height / 2 - y * scale,
  };
}

/** Unit heading vector in world coordinates for a yaw in degrees. */
export function headingVector(yawDeg: number): { dx: number; dy: number } {
  const rad = (yawDeg * Math.PI) / 180;
  return { dx: Math.cos(rad), dy: Math.sin(rad) };
}

export function markerScreenPos(
  view: View,
  state: StateMessage,
): { sx: number; sy: number } {
  return worldToScreen(view, state.x, state.y);
}

const ARROW_METERS = 0.45;
const MARKER_RADIUS_PX = 7;

/** Screen endpoints of the heading arrow. */
export function arrowEndpoints(
  view: View,
  state: StateMessage,
): { from: { sx: number; sy: number }; to: { sx: number; sy: number } } {
  const from = markerScreenPos(view, state);
  const h = headingVector(state.yaw);
  const to = worldToScreen(
    view,
    state.x + h.dx * ARROW_METERS,
    state.y + h.dy * ARROW_METERS,
  );
  return { from, to };
}

export interface AltitudeBar {
  x: number;
  y: number;
  width: number;
  height: number;
  /** Screen y of the fill level for the current altitude. */
  fillY: number;
  /** Screen y of the floor line. */
  floorY: number;
  /** True when the drone sits at (or within 1 mm of) the floor. */
  atFloor: boolean;
}

const BAR_MARGIN_PX = 16;
const BAR_WIDTH_PX = 18;

export function altitudeBar(view: View, z: number): AltitudeBar {
  const height = view.height - 2 * BAR_MARGIN_PX;
  const x = view.width - BAR_MARGIN_PX - BAR_WIDTH_PX;
  const y = BAR_MARGIN_PX;
  const clamped = Math.min(Math.max(z, 0), view.zMax);
  const fillY = y + height * (1 - clamped / view.zMax);
  const floorY = y + height * (1 - view.floorZ / view.zMax);
  return {
    x,
    y,
    width: BAR_WIDTH_PX,
    height,
    fillY,
    floorY,
    atFloor: z <= view.floorZ + 1e-3,
  };
}

const COLORS = {
  background: "#101418",
  grid: "#1f2830",
  room: "#2f3b46",
  marker: "#3ddc84",
  arrow: "#3ddc84",
  bar: "#24303a",
  barFill: "#4aa3ff",
  floor: "#8899aa",
  floorHit: "#ff5a5a",
  text: "#d7e0e8",
};

function drawGrid(ctx: Draw2D, view: View): void {
  const scale = pixelsPerMeter(view);
  ctx.strokeStyle = COLORS.grid;
  ctx.lineWidth = 1;
  ctx.setLineDash([]);
  for (let m = -Math.ceil(view.metersAcross / 2); m <= view.metersAcross / 2; m++) {
    const { sx } = worldToScreen(view, m, 0);
    ctx.beginPath();
    ctx.moveTo(sx, 0);
    ctx.lineTo(sx, view.height);
    ctx.stroke();
    const sy = view.height / 2 - m * scale;
    ctx.beginPath();
    ctx.moveTo(0, sy);
    ctx.lineTo(view.width, sy);
    ctx.stroke();
  }
}

function drawAltitude(ctx: Draw2D, view: View, z: number): void {
  const bar = altitudeBar(view, z);
  ctx.fillStyle = COLORS.bar;
  ctx.fillRect(bar.x, bar.y, bar.width, bar.height);
  ctx.fillStyle = COLORS.barFill;
  ctx.fillRect(bar.x, bar.fillY, bar.width, bar.y + bar.height - bar.fillY);
  // Floor line: highlighted when the drone has been stopped by the floor.
  ctx.strokeStyle = bar.atFloor ? COLORS.floorHit : COLORS.floor;
  ctx.lineWidth = bar.atFloor ? 3 : 1;
  ctx.setLineDash([4, 3]);
  ctx.beginPath();
  ctx.moveTo(bar.x - 4, bar.floorY);
  ctx.lineTo(bar.x + bar.width + 4, bar.floorY);
  ctx.stroke();
  ctx.setLineDash([]);
  ctx.fillStyle = COLORS.text;
  ctx.font = "12px monospace";
  ctx.textAlign = "right";
  ctx.fillText(`z=${z.toFixed(2)} m`, bar.x - 8, bar.fillY + 4);
}

export function drawScene(
  ctx: Draw2D,
  view: View,
  state: StateMessage | null,
): void {
  ctx.fillStyle = COLORS.background;
  ctx.fillRect(0, 0, view.width, view.height);
  drawGrid(ctx, view);
  ctx.strokeStyle = COLORS.room;
  ctx.lineWidth = 2;
  ctx.strokeRect(1, 1, view.width - 2, view.height - 2);

  if (!state) {
    ctx.fillStyle = COLORS.text;
    ctx.font = "14px monospace";
    ctx.textAlign = "center";
    ctx.fillText("waiting for state…", view.width / 2, view.height / 2);
    return;
  }

  const { from, to } = arrowEndpoints(view, state);
  ctx.strokeStyle = COLORS.arrow;
  ctx.lineWidth = 2;
  ctx.beginPath();
  ctx.moveTo(from.sx, from.sy);
  ctx.lineTo(to.sx, to.sy);
  ctx.stroke();

  ctx.fillStyle = COLORS.marker;
  ctx.beginPath();
  ctx.arc(from.sx, from.sy, MARKER_RADIUS_PX, 0, Math.PI * 2);
  ctx.fill();

  drawAltitude(ctx, view, state.z);

  ctx.fillStyle = COLORS.text;
  ctx.font = "12px monospace";
  ctx.textAlign = "left";
  ctx.fillText(
    `x=${state.x.toFixed(2)} y=${state.y.toFixed(2)} yaw=${state.yaw.toFixed(1)}°`,
    8,
    16,
  );
  ctx.fillText(
    `action=${state.active_action ?? "hover"} tick=${state.tick}`,
    8,
    32,
  );
}
