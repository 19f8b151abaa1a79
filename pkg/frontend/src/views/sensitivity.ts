/** Sensitivity view: prior-strength slider and per-opponent score curves. */

import { K_MAX, K_MIN } from "../state.js";
import type { SessionState } from "../state.js";

const SVG_NS = "http://www.w3.org/2000/svg";
const WIDTH = 560;
const HEIGHT = 260;
const PAD = 36;

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

function svgEl(tag: string, attrs: Record<string, string>): SVGElement {
  const node = document.createElementNS(SVG_NS, tag);
  for (const [key, value] of Object.entries(attrs)) node.setAttribute(key, value);
  return node;
}

const PALETTE = ["#0b7285", "#c2255c", "#5f3dc4", "#e8590c", "#2b8a3e", "#862e9c"];

export function renderSensitivity(
  container: HTMLElement,
  state: SessionState,
  onK: (k: number) => void,
): void {
  container.replaceChildren();

  const slider = el("input", {
    id: "k-slider",
    type: "range",
    min: String(K_MIN + 0.1),
    max: String(K_MAX),
    step: "0.1",
    value: String(state.k),
  });
  slider.addEventListener("input", () => onK(Number(slider.value)));
  const readout = el("span", { id: "k-readout" }, `k = ${state.k.toFixed(1)}`);
  const controls = el("div", { class: "toolbar" });
  controls.append(el("label", {}, "prior strength "), slider, readout);
  container.append(controls);
  container.append(
    el(
      "p",
      { class: "notice", id: "k-guidance" },
      "the default k = 3 weighs the rating prior like three games of evidence; " +
        "larger k trusts ratings more, smaller k follows observed form",
    ),
  );

  const response = state.responses.sensitivity;
  if (!response) {
    container.append(el("p", { class: "notice" }, "move the slider to query the sweep"));
    return;
  }

  // the row nearest the slider value drives the readout
  const nearest = response.rows.reduce((best, row) =>
    Math.abs(row.k - state.k) < Math.abs(best.k - state.k) ? row : best,
  );
  container.append(
    el(
      "p",
      { id: "weight-readout" },
      `w(n) = ${nearest.w.toFixed(3)} at k = ${nearest.k.toFixed(1)}; ` +
        `spread between opponents stays ${response.spread.toFixed(3)}`,
    ),
  );

  const svg = svgEl("svg", {
    id: "sensitivity-plot",
    viewBox: `0 0 ${WIDTH} ${HEIGHT}`,
    width: String(WIDTH),
    height: String(HEIGHT),
  });
  const ks = response.rows.map((r) => r.k);
  const kLo = Math.min(...ks);
  const kHi = Math.max(...ks);
  const x = (k: number) => PAD + ((k - kLo) / (kHi - kLo || 1)) * (WIDTH - 2 * PAD);
  const y = (score: number) => HEIGHT - PAD - score * (HEIGHT - 2 * PAD);

  for (const grid of [0, 0.25, 0.5, 0.75, 1]) {
    svg.append(
      svgEl("line", {
        x1: String(PAD),
        x2: String(WIDTH - PAD),
        y1: String(y(grid)),
        y2: String(y(grid)),
        class: "gridline",
      }),
    );
    const label = svgEl("text", { x: "4", y: String(y(grid) + 4), class: "axis" });
    label.textContent = grid.toFixed(2);
    svg.append(label);
  }

  response.opponents.forEach((opponent, index) => {
    const points = response.rows
      .map((row) => `${x(row.k).toFixed(1)},${y(row.scores[opponent]).toFixed(1)}`)
      .join(" ");
    svg.append(
      svgEl("polyline", {
        points,
        fill: "none",
        stroke: PALETTE[index % PALETTE.length],
        "stroke-width": "2",
        "data-opponent": opponent,
      }),
    );
    const last = response.rows[response.rows.length - 1];
    const tag = svgEl("text", {
      x: String(WIDTH - PAD + 4),
      y: String(y(last.scores[opponent]) + 4),
      class: "axis",
      fill: PALETTE[index % PALETTE.length],
    });
    tag.textContent = opponent;
    svg.append(tag);
  });

  svg.append(
    svgEl("line", {
      id: "k-marker",
      x1: String(x(state.k)),
      x2: String(x(state.k)),
      y1: String(PAD),
      y2: String(HEIGHT - PAD),
      class: "marker",
    }),
  );
  container.append(svg);

  const table = el("table", { id: "sensitivity-table", class: "grid" });
  const head = el("tr");
  for (const caption of ["k", "w(n)", ...response.opponents, "spread"]) {
    head.append(el("th", {}, caption));
  }
  table.append(head);
  for (const row of response.rows) {
    const tr = el("tr", { "data-k": String(row.k) });
    tr.append(el("td", {}, row.k.toFixed(1)));
    tr.append(el("td", {}, row.w.toFixed(3)));
    for (const opponent of response.opponents) {
      tr.append(el("td", { "data-opponent": opponent }, row.scores[opponent].toFixed(3)));
    }
    tr.append(el("td", {}, row.spread.toFixed(3)));
    table.append(tr);
  }
  container.append(table);
}
