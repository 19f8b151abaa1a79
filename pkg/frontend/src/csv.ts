/** CSV rendering of API standings (raw values, no display rounding). */

import type { StandingsRowJson } from "./types.js";

function cell(value: string | number | boolean): string {
  const text = String(value);
  return /[",\n]/.test(text) ? `"${text.replace(/"/g, '""')}"` : text;
}

export function standingsToCsv(rows: StandingsRowJson[]): string {
  const header = "rank,id,name,rating,played,imputed,total,sonnebornBerger,withdrawn";
  const body = [...rows]
    .sort((a, b) => a.rank - b.rank)
    .map((r) =>
      [r.rank, r.playerId, r.name, r.rating, r.playedPoints, r.imputedPoints, r.total, r.sonnebornBerger, r.withdrawn]
        .map(cell)
        .join(","),
    );
  return [header, ...body].join("\n") + "\n";
}

export function downloadText(filename: string, text: string, mime = "text/csv"): void {
  const blob = new Blob([text], { type: `${mime};charset=utf-8` });
  const url = URL.createObjectURL(blob);
  const anchor = document.createElement("a");
  anchor.href = url;
  anchor.download = filename;
  anchor.click();
  URL.revokeObjectURL(url);
}
