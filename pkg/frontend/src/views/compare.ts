/** Comparison view: five-policy standings side by side. */

import type { SessionState } from "../state.js";
import type { MethodLabel, StandingsRowJson } from "../types.js";

const METHOD_ORDER: MethodLabel[] = ["forfeit", "annulment", "elo", "performance", "bayes"];

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  text = "",
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [key, value] of Object.entries(attrs)) node.setAttribute(key, value);
  if (text) node.textContent = text;
  return node;
}

/** Totals show one decimal; raw values never come from this formatting. */
const fmtTotal = (x: number) => x.toFixed(1);
const fmtScore = (x: number) => x.toFixed(3);

export function renderCompare(container: HTMLElement, state: SessionState): void {
  container.replaceChildren();
  const compare = state.responses.compare;
  if (!compare) {
    container.append(el("p", { class: "notice" }, "press Compare to fetch the five policies"));
    return;
  }

  // standings matrix: rows in the seating order shared by every method
  const byMethod = new Map<MethodLabel, Map<string, StandingsRowJson>>();
  for (const method of METHOD_ORDER) {
    byMethod.set(method, new Map(compare.methods[method].map((r) => [r.playerId, r])));
  }
  const players = compare.methods.bayes.map((r) => r.playerId);
  const baseline = byMethod.get("bayes")!;

  const table = el("table", { id: "compare-standings", class: "grid" });
  const head = el("tr");
  head.append(el("th", {}, "player"));
  for (const method of METHOD_ORDER) head.append(el("th", {}, method));
  table.append(head);
  for (const pid of players) {
    const row = el("tr", { "data-player": pid });
    const base = baseline.get(pid)!;
    row.append(el("td", {}, base.withdrawn ? `${base.name} (wd)` : base.name));
    for (const method of METHOD_ORDER) {
      const entry = byMethod.get(method)!.get(pid);
      if (!entry) {
        row.append(el("td", { class: "absent", "data-method": method }, "n/a"));
        continue;
      }
      const changed = entry.rank !== base.rank;
      const td = el(
        "td",
        {
          "data-method": method,
          "data-rank": String(entry.rank),
          class: changed ? "rank-changed" : "",
        },
        `${fmtTotal(entry.total)} (#${entry.rank})`,
      );
      row.append(td);
    }
    table.append(row);
  }
  container.append(el("h3", {}, "standings by policy (total, rank)"), table);

  // per-opponent imputation matrix with interval bars on the bayes column
  const intervals = new Map(
    (state.responses.impute?.imputations ?? []).map((i) => [i.opponentId, i.interval]),
  );
  const matrix = el("table", { id: "imputation-matrix", class: "grid" });
  const mhead = el("tr");
  mhead.append(el("th", {}, "unplayed opponent"));
  for (const method of METHOD_ORDER) mhead.append(el("th", {}, method));
  matrix.append(mhead);
  for (const row of compare.imputations) {
    const tr = el("tr", { "data-opponent": row.opponentId });
    tr.append(el("td", {}, row.opponentId));
    for (const method of METHOD_ORDER) {
      const value = row.perMethod[method];
      const td = el("td", { "data-method": method }, value === null ? "n/a" : fmtScore(value));
      if (method === "bayes") {
        const interval = intervals.get(row.opponentId);
        if (interval) {
          const [lo, hi] = interval;
          const bar = el("div", { class: "interval-bar" });
          const fill = el("span", { class: "interval-fill" });
          fill.style.marginLeft = `${(lo * 100).toFixed(1)}%`;
          fill.style.width = `${((hi - lo) * 100).toFixed(1)}%`;
          fill.title = `${fmtScore(lo)} to ${fmtScore(hi)}`;
          bar.append(fill);
          td.append(bar);
        }
      }
      tr.append(td);
    }
    matrix.append(tr);
  }
  container.append(el("h3", {}, "imputed scores per policy"), matrix);
}
