/** Wire types for the query service plus the client-side view state. */

export type MatchKind = "Exact" | "Hyponym" | "Hypernym" | "None" | "Other";

export interface ElementaryEntry {
  queryConcept: string;
  bestDocConcept: string | null;
  score: number;
  kind: MatchKind;
}

export interface LayoutPoint {
  docId: string;
  x: number;
  y: number;
  radius: number;
  angleDeg: number;
}

export interface ResultEntry {
  docId: string;
  title: string;
  rsv: number;
  rank: number;
  layout: LayoutPoint;
  elementary: ElementaryEntry[];
}

export interface QueryEcho {
  concepts: string[];
  q: number;
  threshold: number;
  limit: number;
  measure: string;
  weights: number[] | null;
}

export interface QueryResponse {
  query: QueryEcho;
  results: ResultEntry[];
  timingMs: number;
}

export interface ConceptHit {
  id: string;
  label: string;
}

export interface DocumentInfo {
  docId: string;
  title: string;
  concepts: string[];
}

export interface ConceptChip {
  id: string;
  label: string;
}

/** Everything the widgets need to redraw; owned by the controller. */
export interface UiQueryState {
  conceptChips: ConceptChip[];
  /** Slider position in [-1, 1]; q is derived via mapSlider. */
  sliderValue: number;
  threshold: number;
  limit: number;
  lastResponse: QueryResponse | null;
  selectedDocId: string | null;
  /** Message shown in a dismissible banner; null when healthy. */
  errorBanner: string | null;
  /** True when there are no chips, so no query can be issued. */
  emptyPrompt: boolean;
  /** True while a request is outstanding. */
  pending: boolean;
}
