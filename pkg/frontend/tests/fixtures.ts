import type {
  ElementaryEntry,
  LayoutPoint,
  QueryResponse,
  ResultEntry,
} from "../src/types.js";

/**
 * Fabricate responses with the same geometry the service produces:
 * radius = 1 - rsv, golden-angle spiral in rank order, cartesian
 * coordinates derived from the polar pair.
 */

const GOLDEN_ANGLE_DEG = 137.508;

export interface DocSpec {
  docId: string;
  title?: string;
  rsv: number;
  elementary: ElementaryEntry[];
}

export function layoutFor(rsv: number, index: number, docId: string): LayoutPoint {
  const radius = 1 - rsv;
  const angleDeg = (index * GOLDEN_ANGLE_DEG) % 360;
  const rad = (angleDeg * Math.PI) / 180;
  return {
    docId,
    radius,
    angleDeg,
    x: radius * Math.cos(rad),
    y: radius * Math.sin(rad),
  };
}

export function makeResponse(concepts: string[], docs: DocSpec[], q = 1.0): QueryResponse {
  const ordered = [...docs].sort((a, b) => b.rsv - a.rsv || (a.docId < b.docId ? -1 : 1));
  const results: ResultEntry[] = ordered.map((doc, i) => ({
    docId: doc.docId,
    title: doc.title ?? `title of ${doc.docId}`,
    rsv: doc.rsv,
    rank: i + 1,
    layout: layoutFor(doc.rsv, i, doc.docId),
    elementary: doc.elementary,
  }));
  return {
    query: { concepts, q, threshold: 0.1, limit: 50, measure: "jd", weights: null },
    results,
    timingMs: 1.5,
  };
}

export function entry(
  queryConcept: string,
  score: number,
  kind: ElementaryEntry["kind"],
  bestDocConcept: string | null = null,
): ElementaryEntry {
  return {
    queryConcept,
    score,
    kind,
    bestDocConcept: bestDocConcept ?? (kind === "None" ? null : `${queryConcept}-match`),
  };
}

export class Deferred<T> {
  readonly promise: Promise<T>;
  resolve!: (value: T) => void;
  reject!: (err: unknown) => void;

  constructor() {
    this.promise = new Promise<T>((resolve, reject) => {
      this.resolve = resolve;
      this.reject = reject;
    });
  }
}

/** Drain pending microtasks so settled promises run their callbacks. */
export async function flushMicrotasks(rounds = 4): Promise<void> {
  for (let i = 0; i < rounds; i += 1) {
    await Promise.resolve();
  }
}
