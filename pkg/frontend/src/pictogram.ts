import { barColor } from "./colors.js";
import type { ElementaryEntry, ResultEntry } from "./types.js";

/**
 * A document pictogram is one bar slot per query concept, in the order
 * the concepts were queried.  Bar height is the elementary score in
 * [0, 1]; slots whose kind carries no color stay empty.
 */

export interface PictogramBar {
  queryConcept: string;
  /** Elementary relevance in [0, 1]; drawn as a fraction of full height. */
  heightFraction: number;
  /** Fill color, or null for an empty slot. */
  color: string | null;
  kind: ElementaryEntry["kind"];
  bestDocConcept: string | null;
}

export interface Pictogram {
  docId: string;
  title: string;
  rsv: number;
  bars: PictogramBar[];
}

export function buildPictogram(result: ResultEntry): Pictogram {
  const bars = result.elementary.map((entry) => {
    const color = barColor(entry.kind);
    return {
      queryConcept: entry.queryConcept,
      heightFraction: color === null ? 0 : clamp01(entry.score),
      color,
      kind: entry.kind,
      bestDocConcept: entry.bestDocConcept,
    };
  });
  return { docId: result.docId, title: result.title, rsv: result.rsv, bars };
}

function clamp01(x: number): number {
  return Math.min(1, Math.max(0, x));
}

export interface Rect {
  x: number;
  y: number;
  width: number;
  height: number;
}

export interface BarRect extends Rect {
  color: string | null;
}

/**
 * Lay the bars out inside a pixel box.  Heights are rounded to whole
 * pixels, so a drawn bar is within one pixel of score * box height.
 * The slot outline (the full-height frame) is left to the renderer.
 */
export function barRects(pictogram: Pictogram, box: Rect): BarRect[] {
  const n = pictogram.bars.length;
  if (n === 0) {
    return [];
  }
  const slotWidth = box.width / n;
  const gap = Math.min(2, slotWidth / 4);
  return pictogram.bars.map((bar, i) => {
    const height = Math.round(bar.heightFraction * box.height);
    const x = Math.round(box.x + i * slotWidth + gap / 2);
    const width = Math.max(1, Math.round(slotWidth - gap));
    return {
      x,
      y: box.y + box.height - height,
      width,
      height,
      color: bar.color,
    };
  });
}
