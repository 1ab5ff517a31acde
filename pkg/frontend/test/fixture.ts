/** Service responses captured verbatim from the real HTTP service running
 * on a small fitted model, so the mock used in tests speaks exactly the
 * contract the backend implements. */

import { ConcordanceResponse, ExpandResponse, StatsResponse } from "../src/api.js";

export const STATS: StatsResponse = {
  units: 80,
  symbols: 2882,
  fw_count: 29,
  phrase_count: 152,
  iterations: 3,
  rho_trace: [0.9632857897517169, 0.3839541547277937, 0.13915857605177995, 0.1553398058252427],
};

export const EXPAND_CAT: ExpandResponse = {
  query: "cat",
  results: [
    { text: "cat.", occ: 15 },
    { text: "the cat", occ: 9 },
    { text: "cat", occ: 6 },
    { text: "cat sat near", occ: 2 },
    { text: "cat slept", occ: 2 },
  ],
};

export const EXPAND_EMPTY: ExpandResponse = { query: "zzz", results: [] };

/** q="cat." left=20 right=20 limit=5 offset=0 */
export const CONC_20_20_P0: ConcordanceResponse = {
  query: "cat.",
  total: 8,
  offset: 0,
  hits: [
    { unit: 20, start: 29, end: 33, left: "od near a tool in a ", match: "cat.", right: "", left_truncated: false, right_truncated: true },
    { unit: 46, start: 26, end: 30, left: "t sat on a day in a ", match: "cat.", right: "", left_truncated: false, right_truncated: true },
    { unit: 55, start: 29, end: 33, left: "ept in the law on a ", match: "cat.", right: "", left_truncated: false, right_truncated: true },
    { unit: 57, start: 35, end: 39, left: "t on the day on the ", match: "cat.", right: "", left_truncated: false, right_truncated: true },
    { unit: 59, start: 31, end: 35, left: "ood on a day in the ", match: "cat.", right: "", left_truncated: false, right_truncated: true },
  ],
};

/** q="cat." left=20 right=20 limit=5 offset=5 */
export const CONC_20_20_P1: ConcordanceResponse = {
  query: "cat.",
  total: 8,
  offset: 5,
  hits: [
    { unit: 65, start: 32, end: 36, left: "under a law under a ", match: "cat.", right: "", left_truncated: false, right_truncated: true },
    { unit: 67, start: 29, end: 33, left: " near a rule near a ", match: "cat.", right: "", left_truncated: false, right_truncated: true },
    { unit: 71, start: 34, end: 38, left: " a garden under the ", match: "cat.", right: "", left_truncated: false, right_truncated: true },
  ],
};

/** q="cat." left=30 right=10 limit=5 offset=0 */
export const CONC_30_10_P0: ConcordanceResponse = {
  query: "cat.",
  total: 8,
  offset: 0,
  hits: [
    { unit: 20, start: 29, end: 33, left: "a law stood near a tool in a ", match: "cat.", right: "", left_truncated: true, right_truncated: true },
    { unit: 46, start: 26, end: 30, left: "the cat sat on a day in a ", match: "cat.", right: "", left_truncated: true, right_truncated: true },
    { unit: 55, start: 29, end: 33, left: "a plan slept in the law on a ", match: "cat.", right: "", left_truncated: true, right_truncated: true },
    { unit: 57, start: 35, end: 39, left: "arden slept on the day on the ", match: "cat.", right: "", left_truncated: false, right_truncated: true },
    { unit: 59, start: 31, end: 35, left: " garden stood on a day in the ", match: "cat.", right: "", left_truncated: false, right_truncated: true },
  ],
};
