/** View controller for the search workflow: type a query, pick among live
 * expansion suggestions, browse a two-sided concordance, re-size contexts
 * in real time.
 *
 * All service traffic flows through an injected fetch, and all state lives
 * in a plain object handed to an onChange callback, so the controller is
 * fully testable without a DOM. Request discipline:
 *
 * - typing debounces (default 300 ms) into at most one expansion request;
 *   newer input cancels both the pending timer and the in-flight request;
 * - an empty query issues no request at all;
 * - selecting a suggestion replaces the query and issues one concordance
 *   request; every width or page change issues exactly one more;
 * - a failed request raises a banner with a retry action that re-issues
 *   exactly the operation that failed.
 */

import { ApiClient, ConcordanceHit, ExpandItem, FetchLike, StatsResponse } from "./api.js";

export interface ViewState {
  query: string;
  suggestions: ExpandItem[];
  suggestionsLoading: boolean;
  /** Suggestion the concordance is showing; contains the typed query. */
  selected: string | null;
  left: number;
  right: number;
  page: number;
  pageSize: number;
  hits: ConcordanceHit[];
  /** Total occurrences as reported by the service. */
  total: number;
  concordanceLoading: boolean;
  /** Error banner text, or null when the last request succeeded. */
  error: string | null;
  stats: StatsResponse | null;
}

export interface ControllerOptions {
  fetchImpl: FetchLike;
  baseUrl?: string;
  debounceMs?: number;
  pageSize?: number;
  suggestionLimit?: number;
  onChange?: (state: Readonly<ViewState>) => void;
}

export class SearchController {
  readonly state: ViewState;
  private readonly api: ApiClient;
  private readonly debounceMs: number;
  private readonly suggestionLimit: number;
  private readonly onChange: (state: Readonly<ViewState>) => void;

  private debounceTimer: ReturnType<typeof setTimeout> | null = null;
  private expandAbort: AbortController | null = null;
  private concAbort: AbortController | null = null;
  private expandGen = 0;
  private concGen = 0;
  private retryAction: (() => void) | null = null;

  constructor(opts: ControllerOptions) {
    this.api = new ApiClient(opts.fetchImpl, opts.baseUrl ?? "");
    this.debounceMs = opts.debounceMs ?? 300;
    this.suggestionLimit = opts.suggestionLimit ?? 20;
    this.onChange = opts.onChange ?? (() => {});
    this.state = {
      query: "",
      suggestions: [],
      suggestionsLoading: false,
      selected: null,
      left: 20,
      right: 20,
      page: 0,
      pageSize: opts.pageSize ?? 50,
      hits: [],
      total: 0,
      concordanceLoading: false,
      error: null,
      stats: null,
    };
  }

  private emit(): void {
    this.onChange(this.state);
  }

  private cancelExpand(): void {
    if (this.debounceTimer !== null) {
      clearTimeout(this.debounceTimer);
      this.debounceTimer = null;
    }
    this.expandGen++;
    if (this.expandAbort !== null) {
      this.expandAbort.abort();
      this.expandAbort = null;
    }
  }

  private static isAbort(err: unknown): boolean {
    return err instanceof Error && err.name === "AbortError";
  }

  /** Update the query text. Schedules at most one expansion request after
   * the debounce window; the empty query clears suggestions silently. */
  setQuery(q: string): void {
    this.state.query = q;
    this.cancelExpand();
    if (q === "") {
      this.state.suggestions = [];
      this.state.suggestionsLoading = false;
      this.emit();
      return;
    }
    this.state.suggestionsLoading = true;
    this.debounceTimer = setTimeout(() => {
      this.debounceTimer = null;
      void this.fetchSuggestions();
    }, this.debounceMs);
    this.emit();
  }

  private async fetchSuggestions(): Promise<void> {
    const q = this.state.query;
    const gen = ++this.expandGen;
    this.expandAbort = new AbortController();
    try {
      const res = await this.api.expand(q, this.suggestionLimit, this.expandAbort.signal);
      if (gen !== this.expandGen) return; // superseded by newer input
      this.state.suggestions = res.results;
      this.state.suggestionsLoading = false;
      this.state.error = null;
      this.emit();
    } catch (err) {
      if (gen !== this.expandGen || SearchController.isAbort(err)) return;
      this.state.suggestionsLoading = false;
      this.fail(err, () => {
        this.state.suggestionsLoading = true;
        this.emit();
        void this.fetchSuggestions();
      });
    }
  }

  /** Adopt a suggestion: it replaces the query text and the concordance
   * loads its occurrences from the first page. */
  selectSuggestion(text: string): void {
    this.cancelExpand();
    this.state.query = text;
    this.state.selected = text;
    this.state.suggestions = [];
    this.state.suggestionsLoading = false;
    this.state.page = 0;
    this.fetchConcordance();
  }

  /** Change the context widths. Issues exactly one concordance request when
   * a selection exists (widths clamp to >= 0). */
  setWidths(left: number, right: number): void {
    this.state.left = Math.max(0, Math.floor(left));
    this.state.right = Math.max(0, Math.floor(right));
    if (this.state.selected === null) {
      this.emit();
      return;
    }
    this.fetchConcordance();
  }

  /** Flip to another page of the concordance; out-of-range pages clamp. */
  setPage(page: number): void {
    let p = Math.max(0, Math.floor(page));
    if (this.state.total > 0) {
      const last = Math.floor((this.state.total - 1) / this.state.pageSize);
      p = Math.min(p, last);
    }
    if (this.state.selected === null || p === this.state.page) return;
    this.state.page = p;
    this.fetchConcordance();
  }

  hasPrev(): boolean {
    return this.state.page > 0;
  }

  hasNext(): boolean {
    return this.state.page * this.state.pageSize + this.state.hits.length < this.state.total;
  }

  private fetchConcordance(): void {
    const { selected } = this.state;
    if (selected === null) return;
    const gen = ++this.concGen;
    if (this.concAbort !== null) this.concAbort.abort();
    this.concAbort = new AbortController();
    this.state.concordanceLoading = true;
    this.emit();
    const { left, right, pageSize, page } = this.state;
    this.api
      .concordance(selected, left, right, pageSize, page * pageSize, this.concAbort.signal)
      .then((res) => {
        if (gen !== this.concGen) return;
        this.state.hits = res.hits;
        this.state.total = res.total;
        this.state.concordanceLoading = false;
        this.state.error = null;
        this.emit();
      })
      .catch((err: unknown) => {
        if (gen !== this.concGen || SearchController.isAbort(err)) return;
        this.state.concordanceLoading = false;
        this.fail(err, () => this.fetchConcordance());
      });
  }

  /** Load the corpus summary shown in the header. */
  loadStats(): void {
    this.api
      .stats()
      .then((s) => {
        this.state.stats = s;
        this.state.error = null;
        this.emit();
      })
      .catch((err: unknown) => {
        if (SearchController.isAbort(err)) return;
        this.fail(err, () => this.loadStats());
      });
  }

  /** Re-issue the operation behind the current error banner. */
  retry(): void {
    const action = this.retryAction;
    if (action === null) return;
    this.retryAction = null;
    this.state.error = null;
    action();
  }

  private fail(err: unknown, retryAction: () => void): void {
    this.state.error = err instanceof Error ? err.message : String(err);
    this.retryAction = retryAction;
    this.emit();
  }
}
