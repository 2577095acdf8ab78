import type { LayoutPoint } from "./types.js";

/**
 * The server lays documents out on a unit disc around the query
 * (radius = 1 - rsv).  The screen projection is a similarity transform:
 * uniform scale plus translation to the canvas center, y flipped so
 * positive y points up.  Because the scale is positive and uniform,
 * screen distance from the center preserves the radius ordering, i.e.
 * better-matching documents always land closer to the query symbol.
 */

export interface Viewport {
  width: number;
  height: number;
  /** Pixels kept free around the disc for pictograms and labels. */
  margin: number;
}

export interface ScreenPoint {
  x: number;
  y: number;
}

export function discScale(viewport: Viewport): number {
  return Math.max(1, Math.min(viewport.width, viewport.height) / 2 - viewport.margin);
}

export function center(viewport: Viewport): ScreenPoint {
  return { x: viewport.width / 2, y: viewport.height / 2 };
}

export function project(point: { x: number; y: number }, viewport: Viewport): ScreenPoint {
  const c = center(viewport);
  const scale = discScale(viewport);
  return { x: c.x + point.x * scale, y: c.y - point.y * scale };
}

/** Screen position of the query symbol: the projected origin. */
export function queryMarkerPosition(viewport: Viewport): ScreenPoint {
  return project({ x: 0, y: 0 }, viewport);
}

export function distance(a: ScreenPoint, b: ScreenPoint): number {
  return Math.hypot(a.x - b.x, a.y - b.y);
}

export interface PlacedDoc {
  docId: string;
  screen: ScreenPoint;
}

export function placeLayout(points: readonly LayoutPoint[], viewport: Viewport): PlacedDoc[] {
  return points.map((p) => ({ docId: p.docId, screen: project(p, viewport) }));
}

/** Topmost document whose marker covers the cursor, or null. */
export function hitTest(
  placed: readonly PlacedDoc[],
  cursor: ScreenPoint,
  hitRadius: number,
): string | null {
  let best: string | null = null;
  let bestDist = Infinity;
  for (const doc of placed) {
    const d = distance(doc.screen, cursor);
    if (d <= hitRadius && d < bestDist) {
      best = doc.docId;
      bestDist = d;
    }
  }
  return best;
}

/**
 * Linear interpolation between two layouts for the transition
 * animation.  Documents present in both frames travel between their
 * positions; documents only in the target frame grow out of the origin.
 */
export function interpolateLayouts(
  prev: ReadonlyMap<string, { x: number; y: number }> | null,
  next: readonly LayoutPoint[],
  t: number,
): Array<{ docId: string; x: number; y: number }> {
  const u = Math.min(1, Math.max(0, t));
  if (u === 1) {
    // land exactly on the server layout, free of lerp rounding
    return next.map((point) => ({ docId: point.docId, x: point.x, y: point.y }));
  }
  return next.map((point) => {
    const from = prev?.get(point.docId) ?? { x: 0, y: 0 };
    return {
      docId: point.docId,
      x: from.x + (point.x - from.x) * u,
      y: from.y + (point.y - from.y) * u,
    };
  });
}
