/** DOM construction and rendering. Everything here is a thin projection of
 * ViewState — all behavior lives in the controller, which is what the test
 * suite drives; this module only translates state to elements and events to
 * controller calls. */

import { SearchController, ViewState } from "./controller.js";
import { suggestionLabel, visibleWhitespace } from "./format.js";

interface Ui {
  render(state: Readonly<ViewState>): void;
}

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

export function buildUi(root: HTMLElement, ctl: SearchController): Ui {
  root.textContent = "";

  // ---- header with corpus stats
  const header = el("header");
  header.append(el("h1", "", "phrasemine"));
  const statsLine = el("p", "stats", "loading corpus summary…");
  header.append(statsLine);

  // ---- error banner
  const banner = el("div", "banner hidden");
  const bannerText = el("span", "banner-text");
  const retryBtn = el("button", "", "Retry");
  retryBtn.addEventListener("click", () => ctl.retry());
  banner.append(bannerText, retryBtn);

  // ---- search box and suggestions
  const searchRow = el("div", "search-row");
  const input = el("input");
  input.type = "search";
  input.placeholder = "type a query — e.g. a frequent word";
  input.addEventListener("input", () => ctl.setQuery(input.value));
  searchRow.append(input);
  const suggBox = el("ul", "suggestions");

  // ---- width sliders
  const widths = el("div", "widths");
  const mkSlider = (label: string, value: number) => {
    const wrap = el("label", "width");
    const caption = el("span", "", `${label} `);
    const num = el("b", "", String(value));
    const slider = el("input");
    slider.type = "range";
    slider.min = "0";
    slider.max = "120";
    slider.value = String(value);
    wrap.append(caption, num, slider);
    return { wrap, slider, num };
  };
  const leftS = mkSlider("left context", ctl.state.left);
  const rightS = mkSlider("right context", ctl.state.right);
  const onWidth = () => ctl.setWidths(Number(leftS.slider.value), Number(rightS.slider.value));
  leftS.slider.addEventListener("change", onWidth);
  rightS.slider.addEventListener("change", onWidth);
  widths.append(leftS.wrap, rightS.wrap);

  // ---- concordance table and pager
  const concHead = el("div", "conc-head");
  const totalLine = el("span", "total");
  const pager = el("span", "pager");
  const prevBtn = el("button", "", "‹ prev");
  const pageLabel = el("span", "page");
  const nextBtn = el("button", "", "next ›");
  prevBtn.addEventListener("click", () => ctl.setPage(ctl.state.page - 1));
  nextBtn.addEventListener("click", () => ctl.setPage(ctl.state.page + 1));
  pager.append(prevBtn, pageLabel, nextBtn);
  concHead.append(totalLine, pager);
  const table = el("table", "concordance");
  const tbody = el("tbody");
  table.append(tbody);
  const placeholder = el("p", "placeholder", "Pick an expansion to browse its concordance.");

  root.append(header, banner, searchRow, suggBox, widths, concHead, table, placeholder);

  function renderSuggestions(state: Readonly<ViewState>): void {
    suggBox.textContent = "";
    if (state.suggestionsLoading) {
      suggBox.append(el("li", "hint", "searching…"));
      return;
    }
    if (state.query !== "" && state.selected !== state.query && state.suggestions.length === 0) {
      suggBox.append(el("li", "hint", `no expansions contain “${state.query}”`));
      return;
    }
    for (const s of state.suggestions) {
      const li = el("li");
      const btn = el("button", "sugg", suggestionLabel(s.text, s.occ));
      btn.addEventListener("click", () => ctl.selectSuggestion(s.text));
      li.append(btn);
      suggBox.append(li);
    }
  }

  function renderConcordance(state: Readonly<ViewState>): void {
    const active = state.selected !== null;
    placeholder.classList.toggle("hidden", active);
    table.classList.toggle("hidden", !active);
    concHead.classList.toggle("hidden", !active);
    if (!active) return;
    totalLine.textContent = state.concordanceLoading
      ? "loading…"
      : `${state.total} occurrences of “${visibleWhitespace(state.selected ?? "")}”`;
    const pages = Math.max(1, Math.ceil(state.total / state.pageSize));
    pageLabel.textContent = ` page ${state.page + 1} / ${pages} `;
    prevBtn.disabled = !ctl.hasPrev();
    nextBtn.disabled = !ctl.hasNext();
    tbody.textContent = "";
    for (const h of state.hits) {
      const tr = el("tr");
      const left = el("td", "ctx left");
      left.append(
        el("span", h.left_truncated ? "trunc" : "trunc hidden", "…"),
        el("span", "", visibleWhitespace(h.left)),
      );
      const match = el("td", "match", visibleWhitespace(h.match));
      match.title = `unit ${h.unit} [${h.start}, ${h.end})`;
      const right = el("td", "ctx right");
      right.append(
        el("span", "", visibleWhitespace(h.right)),
        el("span", h.right_truncated ? "trunc" : "trunc hidden", "…"),
      );
      tr.append(left, match, right);
      tbody.append(tr);
    }
  }

  function render(state: Readonly<ViewState>): void {
    if (state.stats !== null) {
      const s = state.stats;
      statsLine.textContent =
        `${s.units} units · ${s.symbols} symbols · ${s.fw_count} function words · ` +
        `${s.phrase_count} phrases · fitted in ${s.iterations} passes`;
    }
    banner.classList.toggle("hidden", state.error === null);
    bannerText.textContent = state.error === null ? "" : `Service error: ${state.error}`;
    if (input.value !== state.query) input.value = state.query;
    leftS.num.textContent = String(state.left);
    rightS.num.textContent = String(state.right);
    if (Number(leftS.slider.value) !== state.left) leftS.slider.value = String(state.left);
    if (Number(rightS.slider.value) !== state.right) rightS.slider.value = String(state.right);
    renderSuggestions(state);
    renderConcordance(state);
  }

  return { render };
}
