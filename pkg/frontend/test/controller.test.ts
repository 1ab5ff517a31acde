import { afterEach, beforeEach, describe, expect, it, vi } from "vitest";

import { SearchController } from "../src/controller.js";
import {
  CONC_20_20_P0,
  CONC_20_20_P1,
  CONC_30_10_P0,
  EXPAND_CAT,
  EXPAND_EMPTY,
  STATS,
} from "./fixture.js";
import { flush, mockService } from "./mock.js";

function standardHandler(path: string, params: URLSearchParams): { status?: number; body: unknown } {
  if (path === "/api/expand") {
    const q = params.get("q");
    if (q === "" || q === null) return { status: 400, body: { detail: "empty query" } };
    return { body: q === "zzz" ? EXPAND_EMPTY : EXPAND_CAT };
  }
  if (path === "/api/concordance") {
    const key = `${params.get("left")}:${params.get("right")}:${params.get("offset")}`;
    if (key === "20:20:0") return { body: CONC_20_20_P0 };
    if (key === "20:20:5") return { body: CONC_20_20_P1 };
    if (key === "30:10:0") return { body: CONC_30_10_P0 };
    throw new Error(`unexpected concordance request ${key}`);
  }
  if (path === "/api/stats") return { body: STATS };
  throw new Error(`unexpected path ${path}`);
}

describe("debounce and cancellation", () => {
  beforeEach(() => vi.useFakeTimers());
  afterEach(() => vi.useRealTimers());

  it("issues no request for the empty query", async () => {
    const svc = mockService(standardHandler);
    const ctl = new SearchController({ fetchImpl: svc.fetchImpl });
    ctl.setQuery("");
    await vi.advanceTimersByTimeAsync(1000);
    expect(svc.calls.length).toBe(0);
    expect(ctl.state.suggestions).toEqual([]);
    expect(ctl.state.suggestionsLoading).toBe(false);
  });

  it("clearing the query cancels a pending debounce", async () => {
    const svc = mockService(standardHandler);
    const ctl = new SearchController({ fetchImpl: svc.fetchImpl });
    ctl.setQuery("cat");
    await vi.advanceTimersByTimeAsync(200);
    ctl.setQuery("");
    await vi.advanceTimersByTimeAsync(1000);
    expect(svc.calls.length).toBe(0);
  });

  it("a newer query aborts the in-flight expansion and its result wins", async () => {
    const svc = mockService(standardHandler, { gated: true });
    const ctl = new SearchController({ fetchImpl: svc.fetchImpl });
    ctl.setQuery("zzz");
    await vi.advanceTimersByTimeAsync(300); // first request now in flight
    expect(svc.calls.length).toBe(1);
    ctl.setQuery("cat");
    await vi.advanceTimersByTimeAsync(300); // second request in flight
    expect(svc.calls.length).toBe(2);
    svc.release(); // settle them oldest-first
    svc.release();
    await vi.advanceTimersByTimeAsync(0);
    expect(ctl.state.suggestions).toEqual(EXPAND_CAT.results);
    expect(ctl.state.error).toBeNull();
  });

  it("respects a custom debounce window", async () => {
    const svc = mockService(standardHandler);
    const ctl = new SearchController({ fetchImpl: svc.fetchImpl, debounceMs: 50 });
    ctl.setQuery("cat");
    await vi.advanceTimersByTimeAsync(49);
    expect(svc.calls.length).toBe(0);
    await vi.advanceTimersByTimeAsync(1);
    expect(svc.calls.length).toBe(1);
  });

  it("shows the empty state for a query with no expansions", async () => {
    const svc = mockService(standardHandler);
    const ctl = new SearchController({ fetchImpl: svc.fetchImpl });
    ctl.setQuery("zzz");
    await vi.advanceTimersByTimeAsync(300);
    expect(ctl.state.suggestions).toEqual([]);
    expect(ctl.state.suggestionsLoading).toBe(false);
    expect(ctl.state.error).toBeNull();
  });
});

describe("concordance", () => {
  it("selecting a suggestion replaces the query and keeps the containment invariant", async () => {
    const svc = mockService(standardHandler);
    const ctl = new SearchController({ fetchImpl: svc.fetchImpl, pageSize: 5 });
    ctl.state.query = "cat";
    ctl.selectSuggestion("cat.");
    await flush();
    expect(ctl.state.query).toBe("cat.");
    expect(ctl.state.selected).toBe("cat.");
    expect(ctl.state.selected!.includes("cat")).toBe(true);
    expect(ctl.state.suggestions).toEqual([]); // dropdown closed
    expect(ctl.state.hits).toEqual(CONC_20_20_P0.hits);
    expect(ctl.state.total).toBe(8);
  });

  it("clamps negative widths to zero and still issues exactly one request", async () => {
    const svc = mockService(standardHandler);
    const ctl = new SearchController({ fetchImpl: svc.fetchImpl, pageSize: 5 });
    ctl.selectSuggestion("cat.");
    await flush();
    const before = svc.callsTo("/api/concordance").length;
    ctl.setWidths(-7, 10);
    await flush();
    const conc = svc.callsTo("/api/concordance");
    expect(conc.length).toBe(before + 1);
    expect(ctl.state.left).toBe(0);
    expect(ctl.state.right).toBe(10);
    expect(conc[conc.length - 1]!.params.get("left")).toBe("0");
  });

  it("width changes without a selection update state but fetch nothing", () => {
    const svc = mockService(standardHandler);
    const ctl = new SearchController({ fetchImpl: svc.fetchImpl });
    ctl.setWidths(3, 4);
    expect(svc.calls.length).toBe(0);
    expect(ctl.state.left).toBe(3);
    expect(ctl.state.right).toBe(4);
  });

  it("pages forward with one request and disables next past the end", async () => {
    const svc = mockService(standardHandler);
    const ctl = new SearchController({ fetchImpl: svc.fetchImpl, pageSize: 5 });
    ctl.selectSuggestion("cat.");
    await flush();
    expect(ctl.hasPrev()).toBe(false);
    expect(ctl.hasNext()).toBe(true); // 5 of 8 shown
    ctl.setPage(1);
    await flush();
    expect(svc.callsTo("/api/concordance").length).toBe(2);
    expect(ctl.state.hits).toEqual(CONC_20_20_P1.hits);
    expect(ctl.hasPrev()).toBe(true);
    expect(ctl.hasNext()).toBe(false); // 8 of 8 shown

    // paging past the end clamps to the last page: no new request
    ctl.setPage(99);
    await flush();
    expect(svc.callsTo("/api/concordance").length).toBe(2);
    expect(ctl.state.page).toBe(1);
  });

  it("discards a stale concordance response that lost to a newer one", async () => {
    const svc = mockService(standardHandler, { gated: true });
    const ctl = new SearchController({ fetchImpl: svc.fetchImpl, pageSize: 5 });
    ctl.selectSuggestion("cat.");
    ctl.setWidths(30, 10); // supersedes the first request
    expect(svc.callsTo("/api/concordance").length).toBe(2);
    svc.release();
    svc.release();
    await flush();
    expect(ctl.state.hits).toEqual(CONC_30_10_P0.hits);
  });
});

describe("errors and retry", () => {
  function failingOnce() {
    let failed = false;
    return mockService((path, params) => {
      if (!failed) {
        failed = true;
        throw new Error("connection refused");
      }
      return standardHandler(path, params);
    });
  }

  it("raises a banner on expansion failure and retry re-issues it", async () => {
    vi.useFakeTimers();
    try {
      // throw inside the handler -> the fetch promise rejects
      const svc = mockService((path, params) => {
        if (svc.calls.length === 1) throw new Error("connection refused");
        return standardHandler(path, params);
      });
      const ctl = new SearchController({ fetchImpl: svc.fetchImpl });
      ctl.setQuery("cat");
      await vi.advanceTimersByTimeAsync(300);
      expect(ctl.state.error).toMatch(/connection refused/);
      ctl.retry();
      await vi.advanceTimersByTimeAsync(0);
      expect(ctl.state.error).toBeNull();
      expect(ctl.state.suggestions).toEqual(EXPAND_CAT.results);
      expect(svc.callsTo("/api/expand").length).toBe(2);
    } finally {
      vi.useRealTimers();
    }
  });

  it("raises a banner on a concordance failure and retry re-issues it", async () => {
    const svc = failingOnce();
    const ctl = new SearchController({ fetchImpl: svc.fetchImpl, pageSize: 5 });
    ctl.selectSuggestion("cat.");
    await flush();
    expect(ctl.state.error).toMatch(/connection refused/);
    expect(ctl.state.concordanceLoading).toBe(false);
    ctl.retry();
    await flush();
    expect(ctl.state.error).toBeNull();
    expect(ctl.state.hits).toEqual(CONC_20_20_P0.hits);
  });

  it("maps service 400s to their detail message", async () => {
    const svc = mockService(() => ({ status: 400, body: { detail: "limit must be >= 1" } }));
    const ctl = new SearchController({ fetchImpl: svc.fetchImpl });
    ctl.selectSuggestion("cat.");
    await flush();
    expect(ctl.state.error).toBe("limit must be >= 1");
  });

  it("retry with no pending failure is a no-op", () => {
    const svc = mockService(standardHandler);
    const ctl = new SearchController({ fetchImpl: svc.fetchImpl });
    ctl.retry();
    expect(svc.calls.length).toBe(0);
  });
});

describe("stats", () => {
  it("loads the corpus summary", async () => {
    const svc = mockService(standardHandler);
    const ctl = new SearchController({ fetchImpl: svc.fetchImpl });
    ctl.loadStats();
    await flush();
    expect(ctl.state.stats).toEqual(STATS);
  });
});

describe("change notification", () => {
  it("notifies the view on every state change", async () => {
    const svc = mockService(standardHandler);
    const seen: string[] = [];
    const ctl = new SearchController({
      fetchImpl: svc.fetchImpl,
      onChange: (s) => seen.push(`${s.query}|${s.suggestionsLoading}|${s.hits.length}`),
    });
    ctl.setQuery("");
    ctl.selectSuggestion("cat.");
    await flush();
    expect(seen.length).toBeGreaterThanOrEqual(3);
    expect(seen[seen.length - 1]).toBe("cat.|false|5");
  });
});
