/**
 * Page wiring: canvas pointer events → StrokeSession, server frames →
 * CanvasRenderer, and a template side panel backed by the REST API.
 * Keyboard: "t" toggles the anchor-triangle overlay.
 */

import { StreamClient } from "./client.js";
import { LibraryClient, LibraryRequestError } from "./library.js";
import { TemplateSummary } from "./protocol.js";
import { CanvasRenderer } from "./render.js";
import { StrokeSession } from "./session.js";

export interface AppHandles {
  session: StrokeSession;
  renderer: CanvasRenderer;
  client: StreamClient;
  library: LibraryClient;
  refreshTemplates: () => Promise<void>;
}

export interface AppConfig {
  /** Service origin, e.g. "http://127.0.0.1:8765". Default: page origin. */
  serviceOrigin?: string;
  /** Test seams; real pages use the browser's WebSocket/fetch/rAF. */
  socketFactory?: ConstructorParameters<typeof StreamClient>[0]["socketFactory"];
  fetchFn?: ConstructorParameters<typeof LibraryClient>[1];
  scheduler?: ConstructorParameters<typeof StrokeSession>[2];
}

function serviceUrls(config: AppConfig): { http: string; ws: string } {
  const http = (config.serviceOrigin ?? window.location.origin).replace(/\/$/, "");
  return { http, ws: http.replace(/^http/, "ws") + "/stream" };
}

export function setupApp(root: Document, config: AppConfig = {}): AppHandles {
  const canvas = root.getElementById("canvas") as HTMLCanvasElement;
  const statusEl = root.getElementById("status")!;
  const resultEl = root.getElementById("result")!;
  const templatesEl = root.getElementById("templates")!;
  const nameInput = root.getElementById("template-name") as HTMLInputElement;
  const addButton = root.getElementById("add-template") as HTMLButtonElement;

  const { http, ws } = serviceUrls(config);
  const ctx = canvas.getContext("2d")!;
  const renderer = new CanvasRenderer(ctx, {
    width: canvas.width,
    height: canvas.height,
  });

  const client = new StreamClient({
    url: ws,
    socketFactory: config.socketFactory,
    onFrame: (frame) => session.onServerFrame(frame),
    onStatus: (status) => {
      statusEl.textContent = status;
      statusEl.className = `status status-${status}`;
    },
    onProtocolError: (err) => {
      statusEl.textContent = `protocol error: ${err.message}`;
    },
  });

  const session = new StrokeSession(client, {
    onInk: (points, drawing) => renderer.setInk(points, drawing),
    onResult: (state) => {
      renderer.setResult(state);
      resultEl.textContent =
        state.kind === "match"
          ? `${state.match.template} — score ${state.match.normalized_metric.toFixed(4)}`
          : state.kind === "tap"
            ? "tap"
            : state.kind === "no-match" && state.final
              ? "no match"
              : "";
    },
    onError: (message) => {
      statusEl.textContent = `service error: ${message}`;
    },
  }, config.scheduler);

  const library = new LibraryClient(http, config.fetchFn);

  canvas.addEventListener("pointerdown", (ev) => {
    if (typeof canvas.setPointerCapture === "function" && ev.pointerId !== undefined) {
      canvas.setPointerCapture(ev.pointerId);
    }
    const rect = canvas.getBoundingClientRect();
    session.pointerDown(ev.clientX - rect.left, ev.clientY - rect.top);
  });
  canvas.addEventListener("pointermove", (ev) => {
    const rect = canvas.getBoundingClientRect();
    session.pointerMove(ev.clientX - rect.left, ev.clientY - rect.top);
  });
  canvas.addEventListener("pointerup", () => session.pointerUp());
  canvas.addEventListener("pointercancel", () => session.pointerUp());

  root.addEventListener("keydown", (ev) => {
    if ((ev as KeyboardEvent).key === "t") renderer.toggleTriangle();
  });

  async function refreshTemplates(): Promise<void> {
    try {
      const listing = await library.list();
      templatesEl.replaceChildren(
        ...listing.templates.map((t) => templateRow(root, t)),
      );
    } catch (err) {
      templatesEl.replaceChildren();
      statusEl.textContent =
        err instanceof LibraryRequestError
          ? `library error: ${err.message}`
          : "library unreachable";
    }
  }

  function templateRow(doc: Document, template: TemplateSummary): HTMLElement {
    const row = doc.createElement("li");
    row.className = "template-row";
    row.dataset.name = template.name;

    const label = doc.createElement("span");
    label.textContent = template.name + (template.line ? " (line)" : "");
    row.appendChild(label);

    const mirror = doc.createElement("label");
    const mirrorBox = doc.createElement("input");
    mirrorBox.type = "checkbox";
    mirrorBox.checked = template.mirror_allowed;
    mirrorBox.className = "mirror-toggle";
    mirrorBox.addEventListener("change", () => {
      void library
        .setFlags(template.name, { mirror_allowed: mirrorBox.checked })
        .then(refreshTemplates)
        .catch(() => refreshTemplates());
    });
    mirror.append(mirrorBox, doc.createTextNode(" mirror"));
    row.appendChild(mirror);

    const removeButton = doc.createElement("button");
    removeButton.textContent = "remove";
    removeButton.className = "remove-template";
    removeButton.addEventListener("click", () => {
      void library.remove(template.name).then(refreshTemplates);
    });
    row.appendChild(removeButton);
    return row;
  }

  addButton.addEventListener("click", () => {
    const name = nameInput.value.trim();
    const stroke = session.lastCompletedStroke;
    if (!name || stroke.length === 0) return;
    void library
      .add(name, stroke)
      .then(() => {
        nameInput.value = "";
        return refreshTemplates();
      })
      .catch((err: unknown) => {
        statusEl.textContent =
          err instanceof LibraryRequestError
            ? `add failed: ${err.message}`
            : "add failed";
      });
  });

  client.connect();
  void refreshTemplates();
  return { session, renderer, client, library, refreshTemplates };
}

declare global {
  interface Window {
    __squiggleApp?: AppHandles;
    /** Optional page-provided overrides, read once at auto-start. */
    __squiggleConfig?: AppConfig;
  }
}

// Auto-start on a real page load (tests call setupApp themselves).
if (typeof window !== "undefined" && typeof document !== "undefined") {
  if (document.getElementById("canvas")) {
    window.__squiggleApp = setupApp(document, window.__squiggleConfig ?? {});
  }
}
