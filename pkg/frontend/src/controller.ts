import { mapSlider } from "./slider.js";
import type { ConceptChip, QueryResponse, UiQueryState } from "./types.js";

/**
 * View-state owner.  Control changes are debounced into at most one
 * outstanding query; responses are sequenced by a monotonically
 * increasing token so a late response for an old request can never
 * overwrite a newer map.
 */

export interface QueryPayload {
  concepts: string[];
  q: number;
  threshold: number;
  limit: number;
}

export interface AbortHandle {
  aborted: boolean;
}

export type QueryFetcher = (payload: QueryPayload, handle: AbortHandle) => Promise<QueryResponse>;

type TimerFn = (fn: () => void, ms: number) => unknown;
type ClearFn = (timer: unknown) => void;

export interface ControllerOptions {
  fetcher: QueryFetcher;
  onRender: (state: Readonly<UiQueryState>) => void;
  debounceMs?: number;
  setTimer?: TimerFn;
  clearTimer?: ClearFn;
}

const DEFAULT_DEBOUNCE_MS = 250;

export class QueryController {
  readonly state: UiQueryState;

  private readonly fetcher: QueryFetcher;
  private readonly onRender: (state: Readonly<UiQueryState>) => void;
  private readonly debounceMs: number;
  private readonly setTimer: TimerFn;
  private readonly clearTimer: ClearFn;

  private timer: unknown = null;
  private tokenCounter = 0;
  private latestToken = 0;
  private inFlight: AbortHandle | null = null;

  constructor(options: ControllerOptions) {
    this.fetcher = options.fetcher;
    this.onRender = options.onRender;
    this.debounceMs = options.debounceMs ?? DEFAULT_DEBOUNCE_MS;
    this.setTimer = options.setTimer ?? ((fn, ms) => setTimeout(fn, ms));
    this.clearTimer = options.clearTimer ?? ((t) => clearTimeout(t as Parameters<typeof clearTimeout>[0]));
    this.state = {
      conceptChips: [],
      sliderValue: 0,
      threshold: 0.1,
      limit: 50,
      lastResponse: null,
      selectedDocId: null,
      errorBanner: null,
      emptyPrompt: true,
      pending: false,
    };
  }

  addChip(chip: ConceptChip): void {
    if (this.state.conceptChips.some((c) => c.id === chip.id)) {
      return;
    }
    this.state.conceptChips = [...this.state.conceptChips, chip];
    this.controlChanged();
  }

  removeChip(id: string): void {
    const before = this.state.conceptChips.length;
    this.state.conceptChips = this.state.conceptChips.filter((c) => c.id !== id);
    if (this.state.conceptChips.length !== before) {
      this.controlChanged();
    }
  }

  setSlider(value: number): void {
    this.state.sliderValue = Math.min(1, Math.max(-1, value));
    this.controlChanged();
  }

  setThreshold(value: number): void {
    this.state.threshold = Math.min(1, Math.max(0, value));
    this.controlChanged();
  }

  setLimit(value: number): void {
    this.state.limit = Math.max(1, Math.round(value));
    this.controlChanged();
  }

  selectDoc(docId: string | null): void {
    this.state.selectedDocId = docId;
    this.render();
  }

  dismissBanner(): void {
    this.state.errorBanner = null;
    this.render();
  }

  /** Current q derived from the slider. */
  currentQ(): number {
    return mapSlider(this.state.sliderValue);
  }

  /**
   * Any change that affects the result set lands here: restart the
   * debounce window so a burst of adjustments issues one query.
   */
  private controlChanged(): void {
    if (this.timer !== null) {
      this.clearTimer(this.timer);
      this.timer = null;
    }
    if (this.state.conceptChips.length === 0) {
      this.cancelInFlight();
      this.state.emptyPrompt = true;
      this.state.pending = false;
      this.render();
      return;
    }
    this.state.emptyPrompt = false;
    this.state.pending = true;
    this.render();
    this.timer = this.setTimer(() => {
      this.timer = null;
      this.issue();
    }, this.debounceMs);
  }

  private cancelInFlight(): void {
    if (this.inFlight !== null) {
      this.inFlight.aborted = true;
      this.inFlight = null;
    }
  }

  private issue(): void {
    if (this.state.conceptChips.length === 0) {
      return;
    }
    this.cancelInFlight();
    const token = ++this.tokenCounter;
    this.latestToken = token;
    const handle: AbortHandle = { aborted: false };
    this.inFlight = handle;
    const payload: QueryPayload = {
      concepts: this.state.conceptChips.map((c) => c.id),
      q: this.currentQ(),
      threshold: this.state.threshold,
      limit: this.state.limit,
    };
    this.fetcher(payload, handle).then(
      (response) => this.settle(token, handle, response, null),
      (err) => this.settle(token, handle, null, describeError(err)),
    );
  }

  private settle(
    token: number,
    handle: AbortHandle,
    response: QueryResponse | null,
    error: string | null,
  ): void {
    if (handle.aborted || token !== this.latestToken) {
      return; // stale: a newer request owns the screen
    }
    this.inFlight = null;
    this.state.pending = false;
    if (response !== null) {
      this.state.lastResponse = response;
      this.state.errorBanner = null;
      if (
        this.state.selectedDocId !== null &&
        !response.results.some((r) => r.docId === this.state.selectedDocId)
      ) {
        this.state.selectedDocId = null;
      }
    } else {
      // keep the previous map on screen; just surface the failure
      this.state.errorBanner = error ?? "query failed";
    }
    this.render();
  }

  private render(): void {
    this.onRender(this.state);
  }
}

function describeError(err: unknown): string {
  if (err instanceof Error) {
    return err.message;
  }
  return String(err);
}

/** POST /api/query adapter for the browser. */
export function httpFetcher(baseUrl = ""): QueryFetcher {
  return async (payload, handle) => {
    const controller = new AbortController();
    const watchdog = setInterval(() => {
      if (handle.aborted) {
        controller.abort();
      }
    }, 50);
    try {
      const resp = await fetch(`${baseUrl}/api/query`, {
        method: "POST",
        headers: { "content-type": "application/json" },
        body: JSON.stringify(payload),
        signal: controller.signal,
      });
      const body: unknown = await resp.json();
      if (!resp.ok) {
        throw new Error(extractErrorMessage(body, resp.status));
      }
      return body as QueryResponse;
    } finally {
      clearInterval(watchdog);
    }
  };
}

function extractErrorMessage(body: unknown, status: number): string {
  if (typeof body === "object" && body !== null && "error" in body) {
    const error = (body as { error: unknown }).error;
    if (typeof error === "object" && error !== null && "message" in error) {
      return String((error as { message: unknown }).message);
    }
  }
  return `query failed with status ${status}`;
}
