/** Text rendering helpers.
 *
 * The model treats whitespace as a first-class symbol, so the UI must show
 * it rather than let it collapse: spaces render as "␣", tabs as "⇥", and
 * newlines as "¶".
 */

const MAP: Record<string, string> = {
  " ": "␣", // ␣ open box
  "\t": "⇥", // ⇥ rightwards arrow to bar
  "\n": "¶", // ¶ pilcrow
  "\r": "¶",
};

export function visibleWhitespace(s: string): string {
  return s.replace(/[ \t\n\r]/g, (c) => MAP[c] ?? c);
}

/** "John McCain (356)" — suggestion label with its occurrence count. */
export function suggestionLabel(text: string, occ: number): string {
  return `${visibleWhitespace(text)} (${occ})`;
}
