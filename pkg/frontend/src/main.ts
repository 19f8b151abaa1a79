/** Application shell: three tabs, one session, API-backed numbers only. */

import { ApiClient } from "./api.js";
import { standingsToCsv, downloadText } from "./csv.js";
import { debounce, StaleGuard } from "./debounce.js";
import { BUCHAREST } from "./fixture.js";
import {
  clampK,
  emptyState,
  fromAuditBundle,
  toAuditBundle,
  validateDraft,
} from "./state.js";
import type { AuditBundle, SessionState } from "./state.js";
import { renderCompare } from "./views/compare.js";
import { renderEntry } from "./views/entry.js";
import { renderSensitivity } from "./views/sensitivity.js";

const TABS = ["entry", "compare", "sensitivity"] as const;
type Tab = (typeof TABS)[number];

/** k grid for the sweep curves; the slider value is merged in per query. */
const CURVE_KS = [0.6, 1, 1.5, 2, 2.5, 3, 3.5, 4, 5, 6, 7, 8, 9, 10];

export class App {
  state: SessionState = emptyState();
  activeTab: Tab = "entry";
  private readonly sensitivityGuard = new StaleGuard();
  private readonly queueSensitivity: (k: number) => void;

  constructor(
    readonly root: HTMLElement,
    readonly client: ApiClient,
    debounceMs = 150,
  ) {
    this.queueSensitivity = debounce((k: number) => {
      void this.fetchSensitivity(k);
    }, debounceMs);
  }

  boot(): void {
    for (const tab of TABS) {
      this.root
        .querySelector(`#tab-${tab}`)!
        .addEventListener("click", () => this.showTab(tab));
    }
    this.root.querySelector("#run-compare")!.addEventListener("click", () => {
      void this.runCompare();
    });
    this.root.querySelector("#export-csv")!.addEventListener("click", () => this.exportCsv());
    this.root.querySelector("#export-audit")!.addEventListener("click", () => this.exportAudit());
    const importInput = this.root.querySelector<HTMLInputElement>("#import-audit")!;
    importInput.addEventListener("change", () => {
      const file = importInput.files?.[0];
      if (!file) return;
      void file.text().then((text) => this.importAudit(text));
    });
    this.renderAll();
  }

  showTab(tab: Tab): void {
    this.activeTab = tab;
    for (const name of TABS) {
      this.root
        .querySelector(`#view-${name}`)!
        .classList.toggle("hidden", name !== tab);
      this.root
        .querySelector(`#tab-${name}`)!
        .classList.toggle("active", name === tab);
    }
  }

  setDraft(draft: SessionState["draft"]): void {
    // editing invalidates previous responses: they no longer describe the draft
    this.state = { ...this.state, draft, responses: {} };
    this.renderAll();
  }

  loadFixture(): void {
    this.setDraft(JSON.parse(JSON.stringify(BUCHAREST)) as SessionState["draft"]);
  }

  get draftValid(): boolean {
    return validateDraft(this.state.draft).length === 0;
  }

  async runCompare(): Promise<void> {
    if (!this.draftValid) {
      this.showTab("entry");
      return;
    }
    const doc = { ...this.state.draft, k: this.state.k };
    const [compare, impute] = await Promise.all([
      this.client.compare(doc, this.state.k),
      this.client.impute(doc, { method: "bayes", level: 0.95 }),
    ]);
    this.state = {
      ...this.state,
      responses: { ...this.state.responses, compare, impute },
    };
    this.showTab("compare");
    this.renderAll();
  }

  setK(k: number): void {
    this.state = { ...this.state, k: clampK(k) };
    const readout = this.root.querySelector("#k-readout");
    if (readout) readout.textContent = `k = ${this.state.k.toFixed(1)}`;
    this.queueSensitivity(this.state.k);
  }

  async fetchSensitivity(k: number): Promise<void> {
    if (!this.draftValid) return;
    const token = this.sensitivityGuard.issue();
    const kValues = [...new Set([...CURVE_KS, k])].sort((a, b) => a - b);
    const response = await this.client.sensitivity(this.state.draft, kValues);
    if (!this.sensitivityGuard.isCurrent(token)) return; // stale: a newer query superseded it
    this.state = {
      ...this.state,
      responses: { ...this.state.responses, sensitivity: response },
    };
    this.renderAll();
  }

  exportCsv(): void {
    const standings = this.state.responses.compare?.methods.bayes;
    if (!standings) return;
    downloadText("standings.csv", standingsToCsv(standings));
  }

  exportAudit(): void {
    if (!this.state.responses.compare) return;
    downloadText(
      "fairplay-audit.json",
      JSON.stringify(toAuditBundle(this.state), null, 2),
      "application/json",
    );
  }

  importAudit(text: string): void {
    const bundle = JSON.parse(text) as AuditBundle;
    this.state = fromAuditBundle(bundle);
    this.showTab("compare");
    this.renderAll();
  }

  renderAll(): void {
    renderEntry(this.root.querySelector("#view-entry")!, this.state, {
      onDraftChanged: (draft) => this.setDraft(draft),
      onLoadFixture: () => this.loadFixture(),
    });
    renderCompare(this.root.querySelector("#view-compare")!, this.state);
    renderSensitivity(this.root.querySelector("#view-sensitivity")!, this.state, (k) =>
      this.setK(k),
    );
    const exportable = Boolean(this.state.responses.compare);
    this.root.querySelector<HTMLButtonElement>("#export-csv")!.disabled = !exportable;
    this.root.querySelector<HTMLButtonElement>("#export-audit")!.disabled = !exportable;
    this.root.querySelector<HTMLButtonElement>("#run-compare")!.disabled = !this.draftValid;
  }
}

export function mount(root: HTMLElement, baseUrl = ""): App {
  const app = new App(root, new ApiClient(baseUrl));
  app.boot();
  return app;
}

declare global {
  interface Window {
    fairplayApp?: App;
  }
}

if (typeof document !== "undefined" && document.getElementById("app")) {
  window.fairplayApp = mount(document.getElementById("app")!);
}
