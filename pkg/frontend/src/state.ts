// Workbench state: everything renderable is either a verbatim service
// response or a pending (not yet submitted) verdict edit. After a submit is
// acknowledged the service response replaces local state wholesale, so a
// page reload always reproduces exactly what the service holds.

import { ApiClient } from "./api.js";
import type {
  ConceptRow,
  Expansion,
  LatticeData,
  ReportRow,
  SeedView,
  Summary,
  Verdict,
} from "./types.js";

export interface WorkbenchState {
  summary: Summary | null;
  seeds: SeedView[];
  selectedSeedId: string | null;
  pendingVerdicts: Record<string, Record<string, Verdict>>; // seedId -> edits
  latticeSource: "ident" | "dyn";
  lattice: LatticeData | null;
  concepts: ConceptRow[];
  report: ReportRow[];
  error: string | null;
}

export function initialState(): WorkbenchState {
  return {
    summary: null,
    seeds: [],
    selectedSeedId: null,
    pendingVerdicts: {},
    latticeSource: "ident",
    lattice: null,
    concepts: [],
    report: [],
    error: null,
  };
}

export function seedById(state: WorkbenchState, seedId: string): SeedView | undefined {
  return state.seeds.find((s) => s.id === seedId);
}

/** Verdict shown for a member: pending edit if staged, else the last
 * service-acknowledged verdict. */
export function shownVerdict(
  state: WorkbenchState,
  seedId: string,
  methodId: string,
): Verdict {
  const pending = state.pendingVerdicts[seedId]?.[methodId];
  if (pending !== undefined) return pending;
  return seedById(state, seedId)?.verdicts[methodId] ?? "unreviewed";
}

export function stageVerdict(
  state: WorkbenchState,
  seedId: string,
  methodId: string,
  verdict: Verdict,
): WorkbenchState {
  const seed = seedById(state, seedId);
  if (!seed || !seed.methods.includes(methodId)) return state;
  const acked = seed.verdicts[methodId] ?? "unreviewed";
  const forSeed = { ...(state.pendingVerdicts[seedId] ?? {}) };
  if (verdict === acked) {
    delete forSeed[methodId]; // staging back to the acknowledged value is a no-op
  } else {
    forSeed[methodId] = verdict;
  }
  const pendingVerdicts = { ...state.pendingVerdicts };
  if (Object.keys(forSeed).length) {
    pendingVerdicts[seedId] = forSeed;
  } else {
    delete pendingVerdicts[seedId];
  }
  return { ...state, pendingVerdicts };
}

export function pendingCount(state: WorkbenchState, seedId: string): number {
  return Object.keys(state.pendingVerdicts[seedId] ?? {}).length;
}

/** Replace a seed with the service's acknowledged view and drop its staged
 * edits; the response is the single source of truth. */
export function acknowledgeSeed(
  state: WorkbenchState,
  seed: SeedView,
): WorkbenchState {
  const seeds = state.seeds.some((s) => s.id === seed.id)
    ? state.seeds.map((s) => (s.id === seed.id ? seed : s))
    : [...state.seeds, seed];
  const pendingVerdicts = { ...state.pendingVerdicts };
  delete pendingVerdicts[seed.id];
  return { ...state, seeds, pendingVerdicts };
}

export function selectSeed(state: WorkbenchState, seedId: string | null): WorkbenchState {
  return { ...state, selectedSeedId: seedId };
}

/** Expansion diff for the selected seed: origin members vs added members. */
export function expansionDiff(
  expansion: Expansion,
): { origin: string[]; added: string[] } {
  return { origin: [...expansion.originMethods].sort(), added: [...expansion.addedMethods].sort() };
}

export class WorkbenchStore {
  state: WorkbenchState = initialState();
  private listeners: Array<(s: WorkbenchState) => void> = [];

  constructor(private readonly api: ApiClient) {}

  subscribe(listener: (s: WorkbenchState) => void): void {
    this.listeners.push(listener);
  }

  private commit(next: WorkbenchState): void {
    this.state = next;
    for (const listener of this.listeners) listener(next);
  }

  /** Full hydration from the service; called at page load and after reload. */
  async load(): Promise<void> {
    const summary = await this.api.summary();
    const seeds = await this.api.seeds();
    const source = this.state.latticeSource;
    let lattice: LatticeData | null = null;
    let concepts: ConceptRow[] = [];
    try {
      lattice = await this.api.lattice(source);
      concepts = await this.api.concepts(source);
    } catch {
      // workspace may lack traces for the dyn source; keep the views empty
    }
    let report: ReportRow[] = [];
    try {
      report = await this.api.report();
    } catch {
      report = [];
    }
    this.commit({
      ...this.state,
      summary,
      seeds,
      lattice,
      concepts,
      report,
      error: null,
    });
  }

  async switchLattice(source: "ident" | "dyn"): Promise<void> {
    const lattice = await this.api.lattice(source);
    const concepts = await this.api.concepts(source);
    this.commit({ ...this.state, latticeSource: source, lattice, concepts });
  }

  stage(seedId: string, methodId: string, verdict: Verdict): void {
    this.commit(stageVerdict(this.state, seedId, methodId, verdict));
  }

  select(seedId: string | null): void {
    this.commit(selectSeed(this.state, seedId));
  }

  /** Submit staged verdicts; on success the service response wins. */
  async submitVerdicts(seedId: string): Promise<void> {
    const staged = this.state.pendingVerdicts[seedId];
    if (!staged || !Object.keys(staged).length) return;
    try {
      const seed = await this.api.triage(seedId, staged);
      const next = acknowledgeSeed(this.state, seed);
      this.commit({ ...next, error: null });
      await this.refreshReport();
    } catch (err) {
      this.commit({ ...this.state, error: String(err) });
      throw err;
    }
  }

  /** Trigger expansion, then re-fetch the seed list so the combined seed
   * appears exactly as the service sees it. */
  async expand(seedId: string): Promise<Expansion> {
    const expansion = await this.api.expand(seedId);
    const seeds = await this.api.seeds();
    this.commit({ ...this.state, seeds, error: null });
    await this.refreshReport();
    return expansion;
  }

  private async refreshReport(): Promise<void> {
    try {
      const report = await this.api.report();
      this.commit({ ...this.state, report });
    } catch {
      // no truth file loaded; scores stay absent
    }
  }
}
