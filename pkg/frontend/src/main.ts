import { httpFetcher, QueryController } from "./controller.js";
import { hitTest, interpolateLayouts, type Viewport } from "./geometry.js";
import { buildFrame, drawScene, HIT_RADIUS, type Frame } from "./render.js";
import { formatQ, mapSlider } from "./slider.js";
import type { ConceptHit, LayoutPoint, QueryResponse, UiQueryState } from "./types.js";

const ANIMATION_MS = 250;
const SUGGEST_LIMIT = 8;

function mustGet<T extends HTMLElement>(id: string): T {
  const el = document.getElementById(id);
  if (el === null) {
    throw new Error(`missing element #${id}`);
  }
  return el as T;
}

function viewportOf(canvas: HTMLCanvasElement): Viewport {
  return { width: canvas.width, height: canvas.height, margin: 40 };
}

function main(): void {
  const canvas = mustGet<HTMLCanvasElement>("map");
  const ctx = canvas.getContext("2d");
  if (ctx === null) {
    throw new Error("canvas 2d context unavailable");
  }
  const chipBox = mustGet<HTMLDivElement>("chips");
  const conceptInput = mustGet<HTMLInputElement>("concept-input");
  const suggestBox = mustGet<HTMLUListElement>("suggestions");
  const slider = mustGet<HTMLInputElement>("q-slider");
  const qReadout = mustGet<HTMLSpanElement>("q-readout");
  const thresholdInput = mustGet<HTMLInputElement>("threshold");
  const limitInput = mustGet<HTMLInputElement>("limit");
  const banner = mustGet<HTMLDivElement>("banner");
  const bannerText = mustGet<HTMLSpanElement>("banner-text");
  const bannerDismiss = mustGet<HTMLButtonElement>("banner-dismiss");
  const detail = mustGet<HTMLDivElement>("detail");
  const status = mustGet<HTMLSpanElement>("status");

  let frame: Frame | null = null;
  let animationFrom: Map<string, { x: number; y: number }> | null = null;
  let animationStart = 0;
  let animatedResponse: QueryResponse | null = null;
  let hoverDocId: string | null = null;
  let cursor: { x: number; y: number } | null = null;
  let rafPending = false;

  const controller = new QueryController({
    fetcher: httpFetcher(),
    onRender: (state) => {
      syncChrome(state);
      if (state.lastResponse !== animatedResponse) {
        beginAnimation(state.lastResponse);
      }
      scheduleDraw(state);
    },
  });

  function beginAnimation(response: QueryResponse | null): void {
    animationFrom = frame === null ? null : currentPositions();
    animationStart = performance.now();
    animatedResponse = response;
  }

  function currentPositions(): Map<string, { x: number; y: number }> {
    const out = new Map<string, { x: number; y: number }>();
    const response = animatedResponse;
    if (response === null) {
      return out;
    }
    for (const r of response.results) {
      out.set(r.docId, { x: r.layout.x, y: r.layout.y });
    }
    return out;
  }

  function scheduleDraw(state: Readonly<UiQueryState>): void {
    if (rafPending) {
      return;
    }
    rafPending = true;
    requestAnimationFrame(function step(now: number) {
      rafPending = false;
      const response = state.lastResponse;
      const viewport = viewportOf(canvas);
      if (response !== null) {
        const t = animationFrom === null ? 1 : (now - animationStart) / ANIMATION_MS;
        const layout: LayoutPoint[] = response.results.map((r) => r.layout);
        const positions = interpolateLayouts(animationFrom, layout, t);
        frame = buildFrame(response.results, positions, viewport);
        if (t < 1) {
          rafPending = true;
          requestAnimationFrame(step);
        } else {
          animationFrom = null;
        }
      } else {
        frame = null;
      }
      drawScene(ctx as CanvasRenderingContext2D, controller.state, frame, viewport, hoverDocId, cursor);
    });
  }

  function syncChrome(state: Readonly<UiQueryState>): void {
    // chips
    chipBox.textContent = "";
    for (const chip of state.conceptChips) {
      const el = document.createElement("span");
      el.className = "chip";
      el.textContent = `${chip.label} (${chip.id})`;
      const x = document.createElement("button");
      x.textContent = "×";
      x.title = `remove ${chip.id}`;
      x.addEventListener("click", () => controller.removeChip(chip.id));
      el.appendChild(x);
      chipBox.appendChild(el);
    }
    // banner
    if (state.errorBanner !== null) {
      bannerText.textContent = state.errorBanner;
      banner.classList.remove("hidden");
    } else {
      banner.classList.add("hidden");
    }
    // status line
    if (state.pending) {
      status.textContent = "querying…";
    } else if (state.lastResponse !== null) {
      const n = state.lastResponse.results.length;
      status.textContent = `${n} document${n === 1 ? "" : "s"} · ${state.lastResponse.timingMs.toFixed(1)} ms`;
    } else {
      status.textContent = "";
    }
    syncDetail(state);
  }

  function syncDetail(state: Readonly<UiQueryState>): void {
    detail.textContent = "";
    const response = state.lastResponse;
    if (response === null || state.selectedDocId === null) {
      return;
    }
    const result = response.results.find((r) => r.docId === state.selectedDocId);
    if (result === undefined) {
      return;
    }
    const head = document.createElement("h3");
    head.textContent = `${result.title} — rsv ${result.rsv.toFixed(4)} (rank ${result.rank})`;
    detail.appendChild(head);
    const table = document.createElement("table");
    const header = document.createElement("tr");
    for (const label of ["query concept", "best match", "score", "kind"]) {
      const th = document.createElement("th");
      th.textContent = label;
      header.appendChild(th);
    }
    table.appendChild(header);
    for (const entry of result.elementary) {
      const row = document.createElement("tr");
      const cells = [
        entry.queryConcept,
        entry.bestDocConcept ?? "—",
        entry.score.toFixed(4),
        entry.kind,
      ];
      for (const text of cells) {
        const td = document.createElement("td");
        td.textContent = text;
        row.appendChild(td);
      }
      table.appendChild(row);
    }
    detail.appendChild(table);
  }

  // --- concept autocomplete -------------------------------------------
  let suggestToken = 0;
  conceptInput.addEventListener("input", () => {
    const prefix = conceptInput.value.trim();
    const token = ++suggestToken;
    if (prefix === "") {
      suggestBox.textContent = "";
      return;
    }
    void fetchSuggestions(prefix).then((hits) => {
      if (token !== suggestToken) {
        return;
      }
      suggestBox.textContent = "";
      for (const hit of hits) {
        const li = document.createElement("li");
        li.textContent = `${hit.label} (${hit.id})`;
        li.addEventListener("mousedown", (ev) => {
          ev.preventDefault();
          controller.addChip({ id: hit.id, label: hit.label });
          conceptInput.value = "";
          suggestBox.textContent = "";
        });
        suggestBox.appendChild(li);
      }
    });
  });
  conceptInput.addEventListener("blur", () => {
    setTimeout(() => {
      suggestBox.textContent = "";
    }, 150);
  });

  async function fetchSuggestions(prefix: string): Promise<ConceptHit[]> {
    try {
      const resp = await fetch(
        `/api/concepts?prefix=${encodeURIComponent(prefix)}&limit=${SUGGEST_LIMIT}`,
      );
      if (!resp.ok) {
        return [];
      }
      return (await resp.json()) as ConceptHit[];
    } catch {
      return [];
    }
  }

  // --- controls --------------------------------------------------------
  function syncQReadout(): void {
    qReadout.textContent = `q = ${formatQ(mapSlider(Number(slider.value)))}`;
  }
  slider.addEventListener("input", () => {
    syncQReadout();
    controller.setSlider(Number(slider.value));
  });
  thresholdInput.addEventListener("change", () => {
    controller.setThreshold(Number(thresholdInput.value));
  });
  limitInput.addEventListener("change", () => {
    controller.setLimit(Number(limitInput.value));
  });
  bannerDismiss.addEventListener("click", () => controller.dismissBanner());

  canvas.addEventListener("mousemove", (ev) => {
    const rect = canvas.getBoundingClientRect();
    cursor = { x: ev.clientX - rect.left, y: ev.clientY - rect.top };
    hoverDocId = frame === null ? null : hitTest(frame.placed, cursor, HIT_RADIUS);
    canvas.style.cursor = hoverDocId === null ? "default" : "pointer";
    scheduleDraw(controller.state);
  });
  canvas.addEventListener("mouseleave", () => {
    cursor = null;
    hoverDocId = null;
    scheduleDraw(controller.state);
  });
  canvas.addEventListener("click", () => {
    controller.selectDoc(hoverDocId);
  });

  syncQReadout();
  drawScene(ctx, controller.state, null, viewportOf(canvas), null, null);
}

main();
