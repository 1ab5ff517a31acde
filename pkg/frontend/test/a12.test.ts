/** Acceptance: the full search workflow against a mock of the real service.
 *
 * Typing must coalesce into ONE debounced expansion request; a width change
 * must issue EXACTLY ONE concordance request carrying the new widths; the
 * totals the view would display must equal the service's reported totals.
 */

import { afterEach, beforeEach, describe, expect, it, vi } from "vitest";

import { SearchController } from "../src/controller.js";
import { CONC_20_20_P0, CONC_30_10_P0, EXPAND_CAT } from "./fixture.js";
import { mockService } from "./mock.js";

function fixtureService() {
  return mockService((path, params) => {
    if (path === "/api/expand") {
      expect(params.get("q")).toBe("cat");
      return { body: EXPAND_CAT };
    }
    if (path === "/api/concordance") {
      expect(params.get("q")).toBe("cat.");
      const key = `${params.get("left")}:${params.get("right")}:${params.get("offset")}`;
      if (key === "20:20:0") return { body: CONC_20_20_P0 };
      if (key === "30:10:0") return { body: CONC_30_10_P0 };
      throw new Error(`unexpected concordance request ${key}`);
    }
    throw new Error(`unexpected path ${path}`);
  });
}

describe("A12 search workflow", () => {
  beforeEach(() => vi.useFakeTimers());
  afterEach(() => vi.useRealTimers());

  it("one debounced expand per typed query; one concordance per width change; totals match", async () => {
    const svc = fixtureService();
    const ctl = new SearchController({ fetchImpl: svc.fetchImpl, pageSize: 5 });

    // -- typing: three keystrokes, one request, after the debounce window
    ctl.setQuery("c");
    ctl.setQuery("ca");
    ctl.setQuery("cat");
    await vi.advanceTimersByTimeAsync(299);
    expect(svc.callsTo("/api/expand").length).toBe(0);
    await vi.advanceTimersByTimeAsync(1);
    expect(svc.callsTo("/api/expand").length).toBe(1);
    expect(svc.callsTo("/api/expand")[0]!.params.get("q")).toBe("cat");
    expect(ctl.state.suggestions).toEqual(EXPAND_CAT.results);
    // suggestions arrive ordered by occurrence count, most frequent first
    const occs = ctl.state.suggestions.map((s) => s.occ);
    expect(occs).toEqual([...occs].sort((a, b) => b - a));

    // -- selecting a suggestion replaces the query and loads page one
    ctl.selectSuggestion("cat.");
    await vi.advanceTimersByTimeAsync(0);
    expect(ctl.state.query).toBe("cat.");
    expect(ctl.state.selected).toBe("cat.");
    expect(svc.callsTo("/api/concordance").length).toBe(1);
    expect(ctl.state.hits).toEqual(CONC_20_20_P0.hits);

    // -- the width slider: exactly one request, carrying the new widths
    ctl.setWidths(30, 10);
    await vi.advanceTimersByTimeAsync(0);
    const conc = svc.callsTo("/api/concordance");
    expect(conc.length).toBe(2);
    expect(conc[1]!.params.get("left")).toBe("30");
    expect(conc[1]!.params.get("right")).toBe("10");
    expect(ctl.state.hits).toEqual(CONC_30_10_P0.hits);
    expect(svc.callsTo("/api/expand").length).toBe(1); // unchanged

    // -- displayed totals equal the service's totals
    expect(ctl.state.total).toBe(CONC_20_20_P0.total);
    expect(ctl.state.total).toBe(CONC_30_10_P0.total);

    console.log(
      `A12 PASS — 1 expand call for 3 keystrokes, 1 concordance call per width change, ` +
        `displayed total ${ctl.state.total} == service total ${CONC_30_10_P0.total}`,
    );
  });
});
