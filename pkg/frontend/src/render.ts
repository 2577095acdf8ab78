import { QUERY_MARKER_COLOR } from "./colors.js";
import {
  center,
  discScale,
  placeLayout,
  queryMarkerPosition,
  type PlacedDoc,
  type ScreenPoint,
  type Viewport,
} from "./geometry.js";
import { barRects, buildPictogram, type Pictogram, type Rect } from "./pictogram.js";
import type { ResultEntry, UiQueryState } from "./types.js";

/** Pictogram footprint on the map, in pixels. */
export const DOC_BOX = { width: 26, height: 22 };
/** Enlarged pictogram inside the hover lens. */
export const LENS_BOX = { width: 120, height: 90 };
export const QUERY_MARKER_SIZE = 14;
export const HIT_RADIUS = 18;

export interface Frame {
  placed: PlacedDoc[];
  pictograms: Map<string, Pictogram>;
}

export function buildFrame(
  results: readonly ResultEntry[],
  positions: ReadonlyArray<{ docId: string; x: number; y: number }>,
  viewport: Viewport,
): Frame {
  const byId = new Map(results.map((r) => [r.docId, r]));
  const layoutLike = positions.map((p) => {
    const full = byId.get(p.docId);
    return { docId: p.docId, x: p.x, y: p.y, radius: 0, angleDeg: 0, result: full };
  });
  const placed = placeLayout(layoutLike, viewport);
  const pictograms = new Map<string, Pictogram>();
  for (const r of results) {
    pictograms.set(r.docId, buildPictogram(r));
  }
  return { placed, pictograms };
}

export function drawScene(
  ctx: CanvasRenderingContext2D,
  state: Readonly<UiQueryState>,
  frame: Frame | null,
  viewport: Viewport,
  hoverDocId: string | null,
  cursor: ScreenPoint | null,
): void {
  ctx.clearRect(0, 0, viewport.width, viewport.height);
  drawDisc(ctx, viewport);

  if (state.emptyPrompt) {
    drawMessage(ctx, viewport, "Add a concept to start querying.");
    return;
  }
  const response = state.lastResponse;
  if (response === null || frame === null) {
    if (state.pending) {
      drawMessage(ctx, viewport, "Running query…");
    }
    return;
  }
  if (response.results.length === 0) {
    drawQueryMarker(ctx, viewport);
    drawMessage(ctx, viewport, "No documents above the threshold.");
    return;
  }

  for (const doc of frame.placed) {
    const pictogram = frame.pictograms.get(doc.docId);
    if (pictogram === undefined) {
      continue;
    }
    const box: Rect = {
      x: doc.screen.x - DOC_BOX.width / 2,
      y: doc.screen.y - DOC_BOX.height / 2,
      width: DOC_BOX.width,
      height: DOC_BOX.height,
    };
    drawPictogram(ctx, pictogram, box, doc.docId === state.selectedDocId);
  }
  drawQueryMarker(ctx, viewport);

  if (hoverDocId !== null && cursor !== null) {
    const pictogram = frame.pictograms.get(hoverDocId);
    if (pictogram !== undefined) {
      drawLens(ctx, pictogram, cursor, viewport);
    }
  }
}

function drawDisc(ctx: CanvasRenderingContext2D, viewport: Viewport): void {
  const c = center(viewport);
  const scale = discScale(viewport);
  ctx.save();
  ctx.strokeStyle = "#d7dce2";
  ctx.fillStyle = "#fbfcfe";
  ctx.beginPath();
  ctx.arc(c.x, c.y, scale, 0, Math.PI * 2);
  ctx.fill();
  ctx.stroke();
  ctx.restore();
}

function drawQueryMarker(ctx: CanvasRenderingContext2D, viewport: Viewport): void {
  const pos = queryMarkerPosition(viewport);
  const half = QUERY_MARKER_SIZE / 2;
  ctx.save();
  ctx.fillStyle = QUERY_MARKER_COLOR;
  ctx.strokeStyle = "#1b4f72";
  ctx.fillRect(pos.x - half, pos.y - half, QUERY_MARKER_SIZE, QUERY_MARKER_SIZE);
  ctx.strokeRect(pos.x - half, pos.y - half, QUERY_MARKER_SIZE, QUERY_MARKER_SIZE);
  ctx.restore();
}

function drawPictogram(
  ctx: CanvasRenderingContext2D,
  pictogram: Pictogram,
  box: Rect,
  selected: boolean,
): void {
  ctx.save();
  ctx.fillStyle = "#ffffff";
  ctx.strokeStyle = selected ? "#1b4f72" : "#aab4bf";
  ctx.lineWidth = selected ? 2 : 1;
  ctx.fillRect(box.x, box.y, box.width, box.height);
  for (const rect of barRects(pictogram, box)) {
    if (rect.color !== null && rect.height > 0) {
      ctx.fillStyle = rect.color;
      ctx.fillRect(rect.x, rect.y, rect.width, rect.height);
    }
  }
  ctx.strokeRect(box.x, box.y, box.width, box.height);
  ctx.restore();
}

function drawLens(
  ctx: CanvasRenderingContext2D,
  pictogram: Pictogram,
  cursor: ScreenPoint,
  viewport: Viewport,
): void {
  const pad = 10;
  const titleHeight = 18;
  const width = LENS_BOX.width + pad * 2;
  const height = LENS_BOX.height + titleHeight + pad * 2;
  let x = cursor.x + 16;
  let y = cursor.y - height - 8;
  if (x + width > viewport.width) {
    x = cursor.x - width - 16;
  }
  if (y < 0) {
    y = cursor.y + 16;
  }
  ctx.save();
  ctx.fillStyle = "#ffffff";
  ctx.strokeStyle = "#5d6d7e";
  ctx.shadowColor = "rgba(0,0,0,0.25)";
  ctx.shadowBlur = 8;
  ctx.fillRect(x, y, width, height);
  ctx.shadowBlur = 0;
  ctx.strokeRect(x, y, width, height);
  ctx.fillStyle = "#2c3e50";
  ctx.font = "12px sans-serif";
  ctx.textBaseline = "top";
  ctx.fillText(truncate(ctx, pictogram.title, width - pad * 2), x + pad, y + pad / 2);
  const box: Rect = {
    x: x + pad,
    y: y + titleHeight + pad / 2,
    width: LENS_BOX.width,
    height: LENS_BOX.height,
  };
  drawPictogram(ctx, pictogram, box, false);
  ctx.restore();
}

function truncate(ctx: CanvasRenderingContext2D, text: string, maxWidth: number): string {
  if (ctx.measureText(text).width <= maxWidth) {
    return text;
  }
  let t = text;
  while (t.length > 1 && ctx.measureText(`${t}…`).width > maxWidth) {
    t = t.slice(0, -1);
  }
  return `${t}…`;
}

function drawMessage(ctx: CanvasRenderingContext2D, viewport: Viewport, text: string): void {
  const c = center(viewport);
  ctx.save();
  ctx.fillStyle = "#7f8c8d";
  ctx.font = "14px sans-serif";
  ctx.textAlign = "center";
  ctx.textBaseline = "middle";
  ctx.fillText(text, c.x, viewport.height - 24);
  ctx.restore();
}
