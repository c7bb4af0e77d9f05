/**
 * Reconnecting WebSocket client for the /stream endpoint.
 *
 * Owns transport concerns only: framing, sequence numbers, reconnection
 * with capped exponential backoff, and stroke retention — if the
 * connection drops while a stroke is in flight, every point sent so far is
 * kept and the whole stroke is re-sent on the fresh connection (as a new
 * in-progress stroke, or as a one-shot stroke_end if the stroke had
 * already ended without its final reply arriving). Streamed and one-shot
 * submissions are equivalent on the server, so a replay yields the same
 * result the lost connection would have produced.
 */

import {
  ClientFrame,
  InputPoint,
  ProtocolError,
  Seq,
  ServerFrame,
  decodeServerFrame,
  encodeFrame,
} from "./protocol.js";

/** The slice of a WebSocket this client needs; `ws` and browsers both fit. */
export interface SocketLike {
  send(data: string): void;
  close(): void;
  onopen: (() => void) | null;
  onmessage: ((ev: { data: unknown }) => void) | null;
  onclose: (() => void) | null;
  onerror: (() => void) | null;
}

export type SocketFactory = (url: string) => SocketLike;

export type ConnectionStatus = "connecting" | "open" | "retrying" | "closed";

export interface StreamClientOptions {
  url: string;
  onFrame: (frame: ServerFrame) => void;
  onStatus?: (status: ConnectionStatus) => void;
  onProtocolError?: (error: ProtocolError) => void;
  /** Reconnect delays in ms; the last entry repeats. */
  backoffMs?: readonly number[];
  socketFactory?: SocketFactory;
  setTimeoutFn?: (fn: () => void, ms: number) => unknown;
  clearTimeoutFn?: (handle: unknown) => void;
}

const DEFAULT_BACKOFF = [250, 500, 1000, 2000, 4000] as const;

const browserSocketFactory: SocketFactory = (url) =>
  new WebSocket(url) as unknown as SocketLike;

export class StreamClient {
  private readonly opts: Required<
    Pick<StreamClientOptions, "url" | "onFrame" | "backoffMs" | "socketFactory">
  > &
    StreamClientOptions;
  private socket: SocketLike | null = null;
  private nextSeq: Seq = 0;
  private retries = 0;
  private timer: unknown = null;
  private userClosed = false;
  private socketOpen = false;

  // Stroke retention. `retained` accumulates every point of the current
  // stroke; `phase` tracks what a fresh connection must replay.
  private retained: InputPoint[] = [];
  private phase: "idle" | "drawing" | "awaiting_final" = "idle";
  private pendingEndSeq: Seq | null = null;

  constructor(options: StreamClientOptions) {
    this.opts = {
      ...options,
      backoffMs: options.backoffMs ?? DEFAULT_BACKOFF,
      socketFactory: options.socketFactory ?? browserSocketFactory,
    };
  }

  /** Current stroke points sent so far (for add-from-last-stroke UIs). */
  get retainedPoints(): readonly InputPoint[] {
    return this.retained;
  }

  /** The seq the next frame will carry. */
  peekNextSeq(): Seq {
    return this.nextSeq;
  }

  connect(): void {
    if (this.userClosed) return;
    this.setStatus(this.retries > 0 ? "retrying" : "connecting");
    const socket = this.opts.socketFactory(this.opts.url);
    this.socket = socket;
    this.socketOpen = false;
    socket.onopen = () => {
      if (socket !== this.socket) return;
      this.socketOpen = true;
      this.retries = 0;
      this.setStatus("open");
      this.replayRetained();
    };
    socket.onmessage = (ev) => {
      if (socket !== this.socket) return;
      let frame: ServerFrame;
      try {
        frame = decodeServerFrame(String(ev.data));
      } catch (err) {
        if (err instanceof ProtocolError) {
          this.opts.onProtocolError?.(err);
          return;
        }
        throw err;
      }
      this.noteFrame(frame);
      this.opts.onFrame(frame);
    };
    socket.onerror = () => {
      if (socket !== this.socket) return;
      this.scheduleReconnect();
    };
    socket.onclose = () => {
      if (socket !== this.socket) return;
      this.scheduleReconnect();
    };
  }

  close(): void {
    this.userClosed = true;
    if (this.timer !== null) {
      (this.opts.clearTimeoutFn ?? clearTimeout)(this.timer as never);
      this.timer = null;
    }
    const socket = this.socket;
    this.socket = null;
    socket?.close();
    this.setStatus("closed");
  }

  /** Begin a new stroke: clears retention and announces stroke_start. */
  beginStroke(): Seq {
    this.retained = [];
    this.phase = "drawing";
    this.pendingEndSeq = null;
    const seq = this.nextSeq++;
    this.sendFrame({ kind: "stroke_start", seq });
    return seq;
  }

  /** Send one batch of points; they are retained until the stroke resolves. */
  sendPoints(points: readonly InputPoint[]): Seq {
    if (this.phase !== "drawing") {
      throw new Error("sendPoints outside an active stroke");
    }
    this.retained.push(...points);
    const seq = this.nextSeq++;
    this.sendFrame({ kind: "stroke_points", seq, points: [...points] });
    return seq;
  }

  /** Finish the stroke, optionally with a trailing batch. */
  endStroke(points?: readonly InputPoint[]): Seq {
    if (this.phase !== "drawing") {
      throw new Error("endStroke outside an active stroke");
    }
    if (points && points.length > 0) this.retained.push(...points);
    const seq = this.nextSeq++;
    this.phase = "awaiting_final";
    this.pendingEndSeq = seq;
    const frame: ClientFrame =
      points && points.length > 0
        ? { kind: "stroke_end", seq, points: [...points] }
        : { kind: "stroke_end", seq };
    this.sendFrame(frame);
    return seq;
  }

  private sendFrame(frame: ClientFrame): void {
    // Dropped sends are fine: retention replays the stroke on reconnect.
    if (this.socket && this.socketOpen) {
      try {
        this.socket.send(encodeFrame(frame));
      } catch {
        // The close/error handler owns reconnection.
      }
    }
  }

  /** Watch replies so retention can stop once the stroke is resolved. */
  private noteFrame(frame: ServerFrame): void {
    if (this.phase !== "awaiting_final") return;
    const isFinal =
      (frame.kind === "match_update" && frame.final) || frame.kind === "tap";
    if (isFinal && frame.seq === this.pendingEndSeq) {
      this.phase = "idle";
      this.pendingEndSeq = null;
      this.retained = [];
    }
  }

  /** After a reconnect, re-send whatever stroke state the old socket lost. */
  private replayRetained(): void {
    if (this.phase === "idle") return;
    if (this.retained.length === 0) {
      if (this.phase === "drawing") {
        this.sendFrame({ kind: "stroke_start", seq: this.nextSeq++ });
      }
      return;
    }
    if (this.phase === "drawing") {
      this.sendFrame({ kind: "stroke_start", seq: this.nextSeq++ });
      this.sendFrame({
        kind: "stroke_points",
        seq: this.nextSeq++,
        points: [...this.retained],
      });
    } else {
      // Stroke ended but its final reply was lost: submit it one-shot.
      this.sendFrame({ kind: "stroke_start", seq: this.nextSeq++ });
      const seq = this.nextSeq++;
      this.pendingEndSeq = seq;
      this.sendFrame({ kind: "stroke_end", seq, points: [...this.retained] });
    }
  }

  private scheduleReconnect(): void {
    if (this.userClosed || this.timer !== null) return;
    this.socketOpen = false;
    this.socket = null;
    const backoff = this.opts.backoffMs;
    const delay = backoff[Math.min(this.retries, backoff.length - 1)] ?? 1000;
    this.retries += 1;
    this.setStatus("retrying");
    const set = this.opts.setTimeoutFn ?? setTimeout;
    this.timer = set(() => {
      this.timer = null;
      this.connect();
    }, delay);
  }

  private setStatus(status: ConnectionStatus): void {
    this.opts.onStatus?.(status);
  }
}
