/** Browser bootstrap: wire the controller to window.fetch and the page.
 *
 * The service base URL defaults to same-origin (use serve.mjs, which
 * proxies /api to the backend); ?api=http://host:port overrides it.
 */

import { SearchController } from "./controller.js";
import { buildUi } from "./render.js";

const root = document.getElementById("app");
if (root === null) throw new Error("missing #app element");

const baseUrl = new URLSearchParams(window.location.search).get("api") ?? "";

let ui: ReturnType<typeof buildUi> | null = null;
const ctl = new SearchController({
  fetchImpl: (url, init) => window.fetch(url, init),
  baseUrl,
  onChange: (s) => ui?.render(s),
});
ui = buildUi(root, ctl);
ui.render(ctl.state);
ctl.loadStats();
