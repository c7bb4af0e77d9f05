/**
 * REST client for the service's library endpoints. All template mutation
 * flows in the UI (list, add the stroke just drawn, remove, toggle mirror
 * matching) go through here; nothing is computed client-side.
 */

import {
  InputPoint,
  LibraryListing,
  ProtocolError,
  TemplateSummary,
  decodeLibraryListing,
  decodeTemplateSummary,
} from "./protocol.js";

export class LibraryRequestError extends Error {
  constructor(
    readonly status: number,
    message: string,
  ) {
    super(message);
    this.name = "LibraryRequestError";
  }
}

export interface FetchResponseLike {
  status: number;
  json(): Promise<unknown>;
}

export type FetchLike = (
  url: string,
  init?: {
    method?: string;
    headers?: Record<string, string>;
    body?: string;
  },
) => Promise<FetchResponseLike>;

export interface AddTemplateOptions {
  mirror_allowed?: boolean;
  orientation_gate?: boolean;
}

async function errorOf(response: FetchResponseLike): Promise<LibraryRequestError> {
  let message = `request failed with status ${response.status}`;
  try {
    const body = (await response.json()) as Record<string, unknown>;
    if (typeof body?.error === "string") message = body.error;
  } catch {
    // keep the generic message
  }
  return new LibraryRequestError(response.status, message);
}

export class LibraryClient {
  private readonly fetchFn: FetchLike;

  constructor(
    private readonly baseUrl: string,
    fetchFn?: FetchLike,
  ) {
    this.fetchFn = fetchFn ?? (fetch.bind(globalThis) as unknown as FetchLike);
  }

  private url(path: string): string {
    return this.baseUrl.replace(/\/$/, "") + path;
  }

  async list(): Promise<LibraryListing> {
    const response = await this.fetchFn(this.url("/library"));
    if (response.status !== 200) throw await errorOf(response);
    return decodeLibraryListing(await response.json());
  }

  async add(
    name: string,
    points: readonly InputPoint[],
    options: AddTemplateOptions = {},
  ): Promise<TemplateSummary> {
    const response = await this.fetchFn(this.url("/library"), {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ name, points, ...options }),
    });
    if (response.status !== 201) throw await errorOf(response);
    return decodeTemplateSummary(await response.json());
  }

  async remove(name: string): Promise<void> {
    const response = await this.fetchFn(
      this.url(`/library/${encodeURIComponent(name)}`),
      { method: "DELETE" },
    );
    if (response.status !== 204) throw await errorOf(response);
  }

  async setFlags(
    name: string,
    flags: AddTemplateOptions,
  ): Promise<TemplateSummary> {
    const response = await this.fetchFn(
      this.url(`/library/${encodeURIComponent(name)}`),
      {
        method: "PATCH",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify(flags),
      },
    );
    if (response.status !== 200) throw await errorOf(response);
    return decodeTemplateSummary(await response.json());
  }

  /** Flip whether mirrored drawings may match *template*. */
  async toggleMirror(template: TemplateSummary): Promise<TemplateSummary> {
    return this.setFlags(template.name, {
      mirror_allowed: !template.mirror_allowed,
    });
  }
}

export { ProtocolError };
