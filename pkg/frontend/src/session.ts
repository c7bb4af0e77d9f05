/**
 * Single-threaded drawing session: turns pointer events into the stroke
 * protocol and server frames into view state.
 *
 * Batching: ink is echoed locally on every pointer event, but points go to
 * the network at frame cadence — one stroke_points batch per animation
 * frame while drawing, with whatever accumulated since the last frame.
 *
 * Supersession: replies are applied in sequence order. A reply older than
 * the newest applied one, or from before the current stroke began, is
 * dropped — the screen never goes backwards, no matter how replies
 * interleave with reconnects.
 */

import { StreamClient } from "./client.js";
import { InputPoint, MatchPayload, Seq, ServerFrame, XY } from "./protocol.js";

export type ResultState =
  | { kind: "idle" }
  | { kind: "pending" }
  | { kind: "match"; match: MatchPayload; final: boolean }
  | { kind: "no-match"; final: boolean }
  | { kind: "tap" };

export interface SessionCallbacks {
  /** Local ink changed (fires immediately on pointer events). */
  onInk: (points: readonly XY[], drawing: boolean) => void;
  /** A server reply was applied (fires synchronously on arrival). */
  onResult: (state: ResultState) => void;
  onError?: (message: string) => void;
}

/** Schedules one callback before the next frame; requestAnimationFrame-like. */
export type FrameScheduler = (callback: () => void) => void;

export interface StrokeSender {
  beginStroke(): Seq;
  sendPoints(points: readonly InputPoint[]): Seq;
  endStroke(points?: readonly InputPoint[]): Seq;
  peekNextSeq(): Seq;
}

const browserScheduler: FrameScheduler = (cb) => requestAnimationFrame(() => cb());

export class StrokeSession {
  private ink: XY[] = [];
  private pending: InputPoint[] = [];
  private drawing = false;
  private flushScheduled = false;
  private minSeq: Seq = 0;
  private appliedSeq: Seq = -1;
  private lastStroke: XY[] = [];
  private state: ResultState = { kind: "idle" };

  constructor(
    private readonly client: StrokeSender,
    private readonly callbacks: SessionCallbacks,
    private readonly schedule: FrameScheduler = browserScheduler,
  ) {}

  /** The most recently completed stroke (for add-as-template). */
  get lastCompletedStroke(): readonly XY[] {
    return this.lastStroke;
  }

  get resultState(): ResultState {
    return this.state;
  }

  pointerDown(x: number, y: number): void {
    if (this.drawing) return;
    this.drawing = true;
    this.ink = [[x, y]];
    this.pending = [[x, y]];
    this.minSeq = this.client.peekNextSeq();
    this.client.beginStroke();
    this.setState({ kind: "pending" });
    this.callbacks.onInk(this.ink, true);
    this.scheduleFlush();
  }

  pointerMove(x: number, y: number): void {
    if (!this.drawing) return;
    this.ink.push([x, y]);
    this.pending.push([x, y]);
    this.callbacks.onInk(this.ink, true);
    this.scheduleFlush();
  }

  pointerUp(): void {
    if (!this.drawing) return;
    this.drawing = false;
    const trailing = this.pending;
    this.pending = [];
    this.client.endStroke(trailing.length > 0 ? trailing : undefined);
    this.lastStroke = this.ink;
    this.callbacks.onInk(this.ink, false);
  }

  /** Wire this to StreamClient's onFrame. */
  onServerFrame(frame: ServerFrame): void {
    if (frame.kind === "error") {
      this.callbacks.onError?.(frame.message);
      return;
    }
    const seq = frame.seq;
    if (typeof seq !== "number") return; // this UI only sends numeric seqs
    if (seq < this.minSeq || seq <= this.appliedSeq) return; // superseded
    this.appliedSeq = seq;
    if (frame.kind === "tap") {
      this.setState({ kind: "tap" });
    } else if (frame.match === null) {
      this.setState({ kind: "no-match", final: frame.final });
    } else {
      this.setState({ kind: "match", match: frame.match, final: frame.final });
    }
  }

  private scheduleFlush(): void {
    if (this.flushScheduled) return;
    this.flushScheduled = true;
    this.schedule(() => {
      this.flushScheduled = false;
      this.flush();
    });
  }

  private flush(): void {
    if (!this.drawing || this.pending.length === 0) return;
    const batch = this.pending;
    this.pending = [];
    this.client.sendPoints(batch);
    this.scheduleFlush();
  }

  private setState(state: ResultState): void {
    this.state = state;
    this.callbacks.onResult(state);
  }
}
