/** Result-entry view: field grid, game grid, withdrawal selection. */

import { unplayedOpponents, validateDraft, RESULTS } from "../state.js";
import type { SessionState } from "../state.js";
import type { TournamentDoc } from "../types.js";

export interface EntryHandlers {
  onDraftChanged(draft: TournamentDoc): void;
  onLoadFixture(): void;
}

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

export function renderEntry(
  container: HTMLElement,
  state: SessionState,
  handlers: EntryHandlers,
): void {
  const draft = state.draft;
  container.replaceChildren();

  const toolbar = el("div", { class: "toolbar" });
  const loadBtn = el("button", { id: "load-fixture", type: "button" }, "Load Bucharest fixture");
  loadBtn.addEventListener("click", () => handlers.onLoadFixture());
  const nameInput = el("input", {
    id: "tournament-name",
    placeholder: "tournament name",
    value: draft.name,
  });
  nameInput.addEventListener("input", () => {
    handlers.onDraftChanged({ ...draft, name: nameInput.value });
  });
  toolbar.append(loadBtn, nameInput);
  container.append(toolbar);

  // ---- players grid ----
  const playersTable = el("table", { id: "players-grid", class: "grid" });
  const head = el("tr");
  for (const caption of ["id", "name", "rating", ""]) head.append(el("th", {}, caption));
  playersTable.append(head);
  draft.players.forEach((player, index) => {
    const row = el("tr", { class: "player-row" });
    for (const field of ["id", "name", "rating"] as const) {
      const td = el("td");
      const input = el("input", {
        value: String(player[field]),
        "data-path": `players[${index}].${field}`,
      });
      input.addEventListener("change", () => {
        const players = draft.players.map((p, i) =>
          i === index
            ? { ...p, [field]: field === "rating" ? Number(input.value) : input.value }
            : p,
        );
        handlers.onDraftChanged({ ...draft, players });
      });
      td.append(input);
      row.append(td);
    }
    const removeTd = el("td");
    const removeBtn = el("button", { type: "button" }, "x");
    removeBtn.addEventListener("click", () => {
      handlers.onDraftChanged({
        ...draft,
        players: draft.players.filter((_, i) => i !== index),
      });
    });
    removeTd.append(removeBtn);
    row.append(removeTd);
    playersTable.append(row);
  });
  const addPlayer = el("button", { id: "add-player", type: "button" }, "add player");
  addPlayer.addEventListener("click", () => {
    handlers.onDraftChanged({
      ...draft,
      players: [...draft.players, { id: `p${draft.players.length + 1}`, name: "", rating: 2500 }],
    });
  });
  container.append(el("h3", {}, `players (${draft.players.length})`), playersTable, addPlayer);

  // ---- games grid ----
  const gamesTable = el("table", { id: "games-grid", class: "grid" });
  const ghead = el("tr");
  for (const caption of ["round", "white", "black", "result", ""]) ghead.append(el("th", {}, caption));
  gamesTable.append(ghead);
  const ids = draft.players.map((p) => p.id);
  draft.games.forEach((game, index) => {
    const row = el("tr", { class: "game-row" });
    const roundInput = el("input", { value: String(game.round), size: "2" });
    roundInput.addEventListener("change", () => {
      const games = draft.games.map((g, i) =>
        i === index ? { ...g, round: Number(roundInput.value) } : g,
      );
      handlers.onDraftChanged({ ...draft, games });
    });
    const roundTd = el("td");
    roundTd.append(roundInput);
    row.append(roundTd);
    for (const side of ["white", "black"] as const) {
      const select = el("select");
      for (const id of ids) {
        const option = el("option", { value: id }, id);
        if (id === game[side]) option.setAttribute("selected", "selected");
        select.append(option);
      }
      select.addEventListener("change", () => {
        const games = draft.games.map((g, i) =>
          i === index ? { ...g, [side]: select.value } : g,
        );
        handlers.onDraftChanged({ ...draft, games });
      });
      const sideTd = el("td");
      sideTd.append(select);
      row.append(sideTd);
    }
    const resultSelect = el("select");
    for (const result of RESULTS) {
      const option = el("option", { value: result }, result);
      if (result === game.result) option.setAttribute("selected", "selected");
      resultSelect.append(option);
    }
    resultSelect.addEventListener("change", () => {
      const games = draft.games.map((g, i) =>
        i === index ? { ...g, result: resultSelect.value as typeof game.result } : g,
      );
      handlers.onDraftChanged({ ...draft, games });
    });
    const resultTd = el("td");
    resultTd.append(resultSelect);
    row.append(resultTd);
    const removeBtn = el("button", { type: "button" }, "x");
    removeBtn.addEventListener("click", () => {
      handlers.onDraftChanged({ ...draft, games: draft.games.filter((_, i) => i !== index) });
    });
    const removeGameTd = el("td");
    removeGameTd.append(removeBtn);
    row.append(removeGameTd);
    gamesTable.append(row);
  });
  const addGame = el("button", { id: "add-game", type: "button" }, "add result");
  addGame.addEventListener("click", () => {
    const fallback = ids[0] ?? "";
    handlers.onDraftChanged({
      ...draft,
      games: [
        ...draft.games,
        { white: fallback, black: ids[1] ?? fallback, result: "1/2-1/2", round: draft.games.length + 1 },
      ],
    });
  });
  container.append(el("h3", {}, `results (${draft.games.length})`), gamesTable, addGame);

  // ---- withdrawal ----
  const withdrawnSelect = el("select", { id: "withdrawn-select" });
  withdrawnSelect.append(el("option", { value: "" }, "(no withdrawal)"));
  for (const id of ids) {
    const option = el("option", { value: id }, id);
    if (id === draft.withdrawn) option.setAttribute("selected", "selected");
    withdrawnSelect.append(option);
  }
  withdrawnSelect.addEventListener("change", () => {
    handlers.onDraftChanged({ ...draft, withdrawn: withdrawnSelect.value });
  });
  const withdrawalBlock = el("div", { class: "withdrawal" });
  withdrawalBlock.append(el("label", {}, "withdrawn player: "), withdrawnSelect);
  container.append(el("h3", {}, "withdrawal"), withdrawalBlock);

  // unplayed games flagged the moment a withdrawal is selected
  const unplayed = unplayedOpponents(draft);
  const flags = el("div", { id: "unplayed-flags" });
  if (draft.withdrawn && unplayed.length > 0) {
    flags.append(
      el(
        "p",
        {},
        `unplayed games flagged: ${unplayed.map((p) => `${draft.withdrawn} vs ${p.id}`).join(", ")}`,
      ),
    );
  } else if (draft.withdrawn) {
    flags.append(el("p", { class: "notice" }, "nothing to impute: the withdrawn player faced everyone"));
  }
  container.append(flags);

  // ---- inline validation (mirrors the API's 400/422 paths) ----
  const problems = validateDraft(draft);
  const diagnostics = el("ul", { id: "diagnostics", class: problems.length ? "errors" : "" });
  for (const problem of problems) {
    diagnostics.append(el("li", { "data-path": problem.path }, `${problem.path}: ${problem.message}`));
  }
  container.append(diagnostics);
}
