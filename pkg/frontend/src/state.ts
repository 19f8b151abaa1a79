/**
 * Session state for the organizer console.
 *
 * The draft is the single source of user input; every number displayed in
 * a view comes from a stored API response, never from local computation.
 */

import type {
  CompareResponse,
  Diagnostic,
  GameEntry,
  ImputeResponse,
  PlayerEntry,
  SensitivityResponse,
  TournamentDoc,
} from "./types.js";

export const K_MIN = 0.5; // exclusive
export const K_MAX = 10; // inclusive
export const RESULTS: GameEntry["result"][] = ["1-0", "0-1", "1/2-1/2"];

export interface SessionState {
  draft: TournamentDoc;
  k: number;
  responses: {
    impute?: ImputeResponse;
    compare?: CompareResponse;
    sensitivity?: SensitivityResponse;
  };
}

export function emptyState(): SessionState {
  return {
    draft: { name: "", players: [], games: [], withdrawn: "" },
    k: 3,
    responses: {},
  };
}

export function clampK(value: number): number {
  if (!Number.isFinite(value)) return 3;
  return Math.min(K_MAX, Math.max(K_MIN + 1e-9, value));
}

/** Structural validation mirroring the API's 400 paths (no rating math). */
export function validateDraft(draft: TournamentDoc): Diagnostic[] {
  const problems: Diagnostic[] = [];
  const ids = new Set<string>();
  if (draft.players.length === 0) {
    problems.push({ path: "players", message: "add at least one player" });
  }
  draft.players.forEach((p, i) => {
    if (!p.id.trim()) problems.push({ path: `players[${i}].id`, message: "id is required" });
    if (!Number.isFinite(p.rating) || p.rating <= 0) {
      problems.push({ path: `players[${i}].rating`, message: "rating must be a positive number" });
    }
    if (ids.has(p.id)) {
      problems.push({ path: `players[${i}].id`, message: `duplicate player id ${p.id}` });
    }
    ids.add(p.id);
  });
  const pairings = new Set<string>();
  draft.games.forEach((g, i) => {
    if (!ids.has(g.white)) problems.push({ path: `games[${i}].white`, message: `unknown player ${g.white}` });
    if (!ids.has(g.black)) problems.push({ path: `games[${i}].black`, message: `unknown player ${g.black}` });
    if (g.white === g.black) {
      problems.push({ path: `games[${i}].black`, message: "players cannot face themselves" });
    }
    if (!RESULTS.includes(g.result)) {
      problems.push({ path: `games[${i}].result`, message: "result must be 1-0, 0-1 or 1/2-1/2" });
    }
    if (!Number.isInteger(g.round) || g.round < 1) {
      problems.push({ path: `games[${i}].round`, message: "round must be a positive integer" });
    }
    const key = [g.white, g.black].sort().join("|");
    if (pairings.has(key)) {
      problems.push({ path: `games[${i}]`, message: `duplicate pairing ${g.white} vs ${g.black}` });
    }
    pairings.add(key);
  });
  if (!draft.withdrawn) {
    problems.push({ path: "withdrawn", message: "select the withdrawn player" });
  } else if (!ids.has(draft.withdrawn)) {
    problems.push({ path: "withdrawn", message: `unknown player ${draft.withdrawn}` });
  }
  return problems;
}

/** Opponents of the withdrawn player with no recorded game against them. */
export function unplayedOpponents(draft: TournamentDoc): PlayerEntry[] {
  if (!draft.withdrawn) return [];
  const faced = new Set<string>();
  for (const g of draft.games) {
    if (g.white === draft.withdrawn) faced.add(g.black);
    if (g.black === draft.withdrawn) faced.add(g.white);
  }
  return draft.players.filter((p) => p.id !== draft.withdrawn && !faced.has(p.id));
}

/** Audit bundle written by the export action and read back on import. */
export interface AuditBundle {
  tournament: TournamentDoc;
  k: number;
  responses: SessionState["responses"];
  exportedAt: string;
}

export function toAuditBundle(state: SessionState, now: () => string = () => new Date().toISOString()): AuditBundle {
  return {
    tournament: state.draft,
    k: state.k,
    responses: state.responses,
    exportedAt: now(),
  };
}

export function fromAuditBundle(bundle: AuditBundle): SessionState {
  return {
    draft: bundle.tournament,
    k: clampK(bundle.k),
    responses: bundle.responses ?? {},
  };
}

export function bundleRoundTripsIdentically(state: SessionState): boolean {
  const restored = fromAuditBundle(JSON.parse(JSON.stringify(toAuditBundle(state))) as AuditBundle);
  return (
    JSON.stringify({ d: restored.draft, k: restored.k, r: restored.responses }) ===
    JSON.stringify({ d: state.draft, k: state.k, r: state.responses })
  );
}
