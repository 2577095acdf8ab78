import type { MatchKind } from "./types.js";

/**
 * Bar colors for the match pictograms.  Every kind gets a deterministic
 * treatment: the three informative kinds get a fill color, everything
 * else ("None", defensive "Other") renders as an empty slot.
 */

export const EXACT_COLOR = "#27ae60"; // green
export const HYPONYM_COLOR = "#e74c3c"; // red
export const HYPERNYM_COLOR = "#2980b9"; // blue

export const QUERY_MARKER_COLOR = HYPERNYM_COLOR;

/** Fill color for a bar, or null for an empty slot. Total over MatchKind. */
export function barColor(kind: MatchKind): string | null {
  switch (kind) {
    case "Exact":
      return EXACT_COLOR;
    case "Hyponym":
      return HYPONYM_COLOR;
    case "Hypernym":
      return HYPERNYM_COLOR;
    default:
      return null;
  }
}
