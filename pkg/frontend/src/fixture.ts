/** The bundled Bucharest 2026 case: ten players, five completed games. */

import type { TournamentDoc } from "./types.js";

export const BUCHAREST: TournamentDoc = {
  name: "Grand Chess Tour Bucharest 2026",
  players: [
    { id: "firouzja", name: "Alireza Firouzja", rating: 2759 },
    { id: "caruana", name: "Fabiano Caruana", rating: 2793 },
    { id: "keymer", name: "Vincent Keymer", rating: 2762 },
    { id: "so", name: "Wesley So", rating: 2754 },
    { id: "giri", name: "Anish Giri", rating: 2753 },
    { id: "sindarov", name: "Javokhir Sindarov", rating: 2745 },
    { id: "pragg", name: "R Praggnanandhaa", rating: 2741 },
    { id: "vanforeest", name: "Jorden van Foreest", rating: 2736 },
    { id: "mvl", name: "Maxime Vachier-Lagrave", rating: 2717 },
    { id: "deac", name: "Bogdan-Daniel Deac", rating: 2655 },
  ],
  games: [
    { white: "caruana", black: "firouzja", result: "1-0", round: 1 },
    { white: "firouzja", black: "pragg", result: "1/2-1/2", round: 2 },
    { white: "mvl", black: "firouzja", result: "1-0", round: 3 },
    { white: "firouzja", black: "giri", result: "0-1", round: 4 },
    { white: "sindarov", black: "firouzja", result: "1/2-1/2", round: 5 },
  ],
  withdrawn: "firouzja",
  k: 3,
};
