/**
 * Wire types for the recognition service, mirroring docs/protocol.md in the
 * parent package. The UI never does recognition math: everything below is
 * plain (de)serialization and shape validation of what the service said.
 */

/** An [x, y] sample; an optional third element is a timestamp in ms. */
export type InputPoint = readonly [number, number] | readonly [number, number, number];
export type XY = readonly [number, number];

/** Client-chosen request tag, echoed back verbatim. This UI uses counters. */
export type Seq = number;

export interface StrokeStartFrame {
  kind: "stroke_start";
  seq: Seq;
}

export interface StrokePointsFrame {
  kind: "stroke_points";
  seq: Seq;
  points: InputPoint[];
}

export interface StrokeEndFrame {
  kind: "stroke_end";
  seq: Seq;
  points?: InputPoint[];
}

export type ClientFrame = StrokeStartFrame | StrokePointsFrame | StrokeEndFrame;

export interface MatchPayload {
  /** Name of the best-matching template. */
  template: string;
  /** Summed squared residual in squared input units. */
  metric: number;
  /** metric / (input arc length)^2 — comparable across stroke sizes. */
  normalized_metric: number;
  /** Template milestones projected into input coordinates. Render as-is. */
  shadow: XY[];
  /** Milestone indices of the anchor triangle behind the winning map. */
  triangle: readonly [number, number, number];
  dimensionality: "planar" | "line";
}

export interface MatchUpdateFrame {
  kind: "match_update";
  seq: unknown;
  final: boolean;
  match: MatchPayload | null;
}

export interface TapFrame {
  kind: "tap";
  seq: unknown;
  final: true;
}

export interface ErrorFrame {
  kind: "error";
  seq: unknown;
  message: string;
}

export type ServerFrame = MatchUpdateFrame | TapFrame | ErrorFrame;

/** One library entry as the REST API reports it. */
export interface TemplateSummary {
  name: string;
  mirror_allowed: boolean;
  orientation_gate: boolean;
  line: boolean;
  milestones: XY[];
}

export interface LibraryListing {
  n: number;
  templates: TemplateSummary[];
}

export class ProtocolError extends Error {
  constructor(message: string, readonly raw?: unknown) {
    super(message);
    this.name = "ProtocolError";
  }
}

export function encodeFrame(frame: ClientFrame): string {
  return JSON.stringify(frame);
}

function isXY(value: unknown): value is XY {
  return (
    Array.isArray(value) &&
    value.length === 2 &&
    typeof value[0] === "number" &&
    typeof value[1] === "number"
  );
}

function isMatchPayload(value: unknown): value is MatchPayload {
  if (typeof value !== "object" || value === null) return false;
  const m = value as Record<string, unknown>;
  return (
    typeof m.template === "string" &&
    typeof m.metric === "number" &&
    typeof m.normalized_metric === "number" &&
    Array.isArray(m.shadow) &&
    m.shadow.every(isXY) &&
    Array.isArray(m.triangle) &&
    m.triangle.length === 3 &&
    (m.triangle as unknown[]).every((i) => typeof i === "number") &&
    (m.dimensionality === "planar" || m.dimensionality === "line")
  );
}

/** Parse one server text frame; throws ProtocolError on anything malformed. */
export function decodeServerFrame(text: string): ServerFrame {
  let doc: unknown;
  try {
    doc = JSON.parse(text);
  } catch {
    throw new ProtocolError("server frame is not JSON", text);
  }
  if (typeof doc !== "object" || doc === null || Array.isArray(doc)) {
    throw new ProtocolError("server frame is not an object", doc);
  }
  const frame = doc as Record<string, unknown>;
  switch (frame.kind) {
    case "match_update":
      if (typeof frame.final !== "boolean") {
        throw new ProtocolError("match_update without boolean final", doc);
      }
      if (frame.match !== null && !isMatchPayload(frame.match)) {
        throw new ProtocolError("match_update with malformed match", doc);
      }
      return {
        kind: "match_update",
        seq: frame.seq,
        final: frame.final,
        match: frame.match as MatchPayload | null,
      };
    case "tap":
      return { kind: "tap", seq: frame.seq, final: true };
    case "error":
      if (typeof frame.message !== "string") {
        throw new ProtocolError("error frame without message", doc);
      }
      return { kind: "error", seq: frame.seq, message: frame.message };
    default:
      throw new ProtocolError(`unknown server frame kind ${String(frame.kind)}`, doc);
  }
}

function isTemplateSummary(value: unknown): value is TemplateSummary {
  if (typeof value !== "object" || value === null) return false;
  const t = value as Record<string, unknown>;
  return (
    typeof t.name === "string" &&
    typeof t.mirror_allowed === "boolean" &&
    typeof t.orientation_gate === "boolean" &&
    typeof t.line === "boolean" &&
    Array.isArray(t.milestones) &&
    t.milestones.every(isXY)
  );
}

export function decodeTemplateSummary(doc: unknown): TemplateSummary {
  if (!isTemplateSummary(doc)) {
    throw new ProtocolError("malformed template summary", doc);
  }
  return doc;
}

export function decodeLibraryListing(doc: unknown): LibraryListing {
  if (typeof doc !== "object" || doc === null) {
    throw new ProtocolError("malformed library listing", doc);
  }
  const d = doc as Record<string, unknown>;
  if (typeof d.n !== "number" || !Array.isArray(d.templates)) {
    throw new ProtocolError("malformed library listing", doc);
  }
  return { n: d.n, templates: d.templates.map(decodeTemplateSummary) };
}
