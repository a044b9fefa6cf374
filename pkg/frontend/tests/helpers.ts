import type { Draw2D } from "../src/render.js";

/** Records every draw call so assertions can inspect a rendered frame. */
export class RecordingContext implements Draw2D {
  fillStyle: string | CanvasGradient | CanvasPattern = "";
  strokeStyle: string | CanvasGradient | CanvasPattern = "";
  lineWidth = 1;
  font = "";
  textAlign = "";
  calls: Array<{ op: string; args: unknown[] }> = [];

  private record(op: string, ...args: unknown[]): void {
    this.calls.push({ op, args });
  }
  beginPath(): void { this.record("beginPath"); }
  moveTo(x: number, y: number): void { this.record("moveTo", x, y); }
  lineTo(x: number, y: number): void { this.record("lineTo", x, y); }
  arc(x: number, y: number, r: number, a0: number, a1: number): void {
    this.record("arc", x, y, r, a0, a1);
  }
  fill(): void { this.record("fill"); }
  stroke(): void { this.record("stroke", this.strokeStyle, this.lineWidth); }
  fillRect(x: number, y: number, w: number, h: number): void {
    this.record("fillRect", x, y, w, h);
  }
  strokeRect(x: number, y: number, w: number, h: number): void {
    this.record("strokeRect", x, y, w, h);
  }
  fillText(text: string, x: number, y: number): void {
    this.record("fillText", text, x, y);
  }
  setLineDash(segments: number[]): void { this.record("setLineDash", segments); }

  texts(): string[] {
    return this.calls
      .filter((c) => c.op === "fillText")
      .map((c) => String(c.args[0]));
  }
}
