/**
 * Canvas renderer. Draw order per repaint: matched shadow first (beneath
 * everything), then the optional anchor-triangle overlay, then the ink on
 * top, then HUD text. Shadow coordinates arrive in input (canvas) space
 * and are passed to the context untransformed — what the recognizer
 * matched is drawn pixel-identical to where it matched it.
 */

import { MatchPayload, XY } from "./protocol.js";
import { ResultState } from "./session.js";

/** The slice of CanvasRenderingContext2D the renderer draws through. */
export interface Ctx2D {
  lineWidth: number;
  strokeStyle: string | object;
  fillStyle: string | object;
  font: string;
  lineCap: string;
  lineJoin: string;
  clearRect(x: number, y: number, w: number, h: number): void;
  beginPath(): void;
  moveTo(x: number, y: number): void;
  lineTo(x: number, y: number): void;
  closePath(): void;
  stroke(): void;
  arc(x: number, y: number, r: number, a0: number, a1: number): void;
  fill(): void;
  fillText(text: string, x: number, y: number): void;
}

export interface RendererOptions {
  width: number;
  height: number;
  showTriangle?: boolean;
  inkStyle?: string;
  shadowStyle?: string;
  triangleStyle?: string;
  textStyle?: string;
}

export class CanvasRenderer {
  private ink: readonly XY[] = [];
  private drawing = false;
  private result: ResultState = { kind: "idle" };
  private triangleShown: boolean;

  constructor(
    private readonly ctx: Ctx2D,
    private readonly opts: RendererOptions,
  ) {
    this.triangleShown = opts.showTriangle ?? false;
  }

  setInk(points: readonly XY[], drawing: boolean): void {
    this.ink = points;
    this.drawing = drawing;
    this.draw();
  }

  setResult(state: ResultState): void {
    this.result = state;
    this.draw();
  }

  get triangleVisible(): boolean {
    return this.triangleShown;
  }

  toggleTriangle(): void {
    this.triangleShown = !this.triangleShown;
    this.draw();
  }

  /** One full repaint from current state. */
  draw(): void {
    const { ctx, opts } = this;
    ctx.clearRect(0, 0, opts.width, opts.height);

    const match = this.result.kind === "match" ? this.result.match : null;
    if (match) {
      this.drawShadow(match);
      if (this.triangleShown) this.drawTriangle(match);
    }
    this.drawInk();
    this.drawHud();
  }

  private polyline(points: readonly XY[], close = false): void {
    const ctx = this.ctx;
    const first = points[0];
    if (!first) return;
    ctx.beginPath();
    ctx.moveTo(first[0], first[1]);
    for (let i = 1; i < points.length; i++) {
      const p = points[i]!;
      ctx.lineTo(p[0], p[1]);
    }
    if (close) ctx.closePath();
    ctx.stroke();
  }

  private drawShadow(match: MatchPayload): void {
    const ctx = this.ctx;
    ctx.lineWidth = 6;
    ctx.lineCap = "round";
    ctx.lineJoin = "round";
    ctx.strokeStyle = this.opts.shadowStyle ?? "#8bb8dd";
    this.polyline(match.shadow);
  }

  private drawTriangle(match: MatchPayload): void {
    const ctx = this.ctx;
    const [a, b, c] = match.triangle;
    const va = match.shadow[a];
    const vb = match.shadow[b];
    const vc = match.shadow[c];
    if (!va || !vb || !vc) return;
    ctx.lineWidth = 1.5;
    ctx.strokeStyle = this.opts.triangleStyle ?? "#e0a23c";
    this.polyline([va, vb, vc], true);
  }

  private drawInk(): void {
    if (this.ink.length === 0) return;
    const ctx = this.ctx;
    ctx.lineWidth = 2.5;
    ctx.lineCap = "round";
    ctx.lineJoin = "round";
    ctx.strokeStyle = this.opts.inkStyle ?? "#1c1c28";
    if (this.ink.length === 1) {
      const p = this.ink[0]!;
      ctx.fillStyle = this.opts.inkStyle ?? "#1c1c28";
      ctx.beginPath();
      ctx.arc(p[0], p[1], 1.5, 0, Math.PI * 2);
      ctx.fill();
      return;
    }
    this.polyline(this.ink);
  }

  private drawHud(): void {
    const text = hudText(this.result, this.drawing);
    if (!text) return;
    const ctx = this.ctx;
    ctx.font = "14px system-ui, sans-serif";
    ctx.fillStyle = this.opts.textStyle ?? "#333344";
    ctx.fillText(text, 12, this.opts.height - 12);
  }
}

/** Status line for a result state; exported for non-canvas displays too. */
export function hudText(state: ResultState, drawing: boolean): string {
  switch (state.kind) {
    case "idle":
      return "";
    case "pending":
      return drawing ? "…" : "waiting for result…";
    case "tap":
      return "tap";
    case "no-match":
      return state.final ? "no match" : "no match yet…";
    case "match": {
      const m = state.match;
      const score = m.normalized_metric.toFixed(4);
      const suffix = state.final ? "" : " (drawing…)";
      return `${m.template}  ·  score ${score}${suffix}`;
    }
  }
}
