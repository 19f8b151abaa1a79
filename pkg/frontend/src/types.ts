/** Shared wire types matching the fairplay JSON API. */

export interface PlayerEntry {
  id: string;
  name: string;
  rating: number;
}

export interface GameEntry {
  white: string;
  black: string;
  result: "1-0" | "0-1" | "1/2-1/2";
  round: number;
}

export interface TournamentDoc {
  name: string;
  players: PlayerEntry[];
  games: GameEntry[];
  withdrawn: string;
  k?: number;
  sigma2?: number;
}

export interface StandingsRowJson {
  playerId: string;
  name: string;
  rating: number;
  playedPoints: number;
  imputedPoints: number;
  total: number;
  sonnebornBerger: number;
  rank: number;
  withdrawn: boolean;
}

export interface ImputationJson {
  opponentId: string;
  eloExpectation: number | null;
  score: number;
  interval: [number, number] | null;
}

export interface ImputeResponse {
  imputations: ImputationJson[];
  standings: StandingsRowJson[];
  adjustment: number;
  weight: number;
  posterior: { alpha: number; beta: number; mean: number };
}

export type MethodLabel = "forfeit" | "annulment" | "elo" | "performance" | "bayes";

export interface CompareResponse {
  methods: Record<MethodLabel, StandingsRowJson[]>;
  imputations: { opponentId: string; perMethod: Record<MethodLabel, number | null> }[];
  k: number;
}

export interface SensitivityRow {
  k: number;
  w: number;
  scores: Record<string, number>;
  spread: number;
}

export interface SensitivityResponse {
  rows: SensitivityRow[];
  spread: number;
  opponents: string[];
}

export interface ApiError {
  error: string;
  path?: string;
}

/** One field-level problem found while assembling a tournament document. */
export interface Diagnostic {
  path: string;
  message: string;
}
