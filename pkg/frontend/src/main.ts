// Page wiring: one store, event delegation, re-render on every commit.
// All state flows service -> store -> DOM; reloading the page rebuilds the
// identical view from the service alone.

import { ApiClient } from "./api.js";
import {
  reconstructExtent,
  reconstructIntent,
  renderLatticeSvg,
} from "./lattice.js";
import {
  renderNodeDetails,
  renderReport,
  renderSeedDetail,
  renderSeedTable,
  renderSummary,
} from "./seeds.js";
import { WorkbenchStore } from "./state.js";
import type { Verdict } from "./types.js";

const api = new ApiClient("");
const store = new WorkbenchStore(api);
const expandedLevels = new Set<number>();

function el(id: string): HTMLElement {
  const found = document.getElementById(id);
  if (!found) throw new Error(`missing #${id}`);
  return found;
}

function render(): void {
  const state = store.state;
  el("summary").innerHTML = renderSummary(state);
  el("seed-table").innerHTML = renderSeedTable(state);
  el("seed-detail").innerHTML = renderSeedDetail(state);
  el("report").innerHTML = renderReport(state);
  el("lattice-box").innerHTML = state.lattice
    ? renderLatticeSvg(state.lattice, expandedLevels)
    : `<p class="empty">No lattice for this source.</p>`;
  const sourceButton = el("lattice-source") as HTMLButtonElement;
  sourceButton.textContent = `source: ${state.latticeSource}`;
}

store.subscribe(render);

el("seed-table").addEventListener("click", (event) => {
  const row = (event.target as HTMLElement).closest<HTMLElement>(".seed-row");
  if (row?.dataset.seed) store.select(row.dataset.seed);
});

el("seed-detail").addEventListener("click", async (event) => {
  const target = event.target as HTMLElement;
  if (target.matches("button.verdict")) {
    const { seed, method, verdict } = target.dataset;
    if (seed && method && verdict) store.stage(seed, method, verdict as Verdict);
    return;
  }
  if (target.id === "save-verdicts" && target.dataset.seed) {
    await store.submitVerdicts(target.dataset.seed).catch(() => undefined);
    return;
  }
  if (target.id === "expand-seed" && target.dataset.seed) {
    await store.expand(target.dataset.seed).catch(() => undefined);
  }
});

el("lattice-box").addEventListener("click", (event) => {
  const target = event.target as HTMLElement;
  const group = target.closest<HTMLElement>(".level-group");
  if (group?.dataset.level !== undefined) {
    const level = Number(group.dataset.level);
    if (expandedLevels.has(level)) expandedLevels.delete(level);
    else expandedLevels.add(level);
    render();
    return;
  }
  const node = target.closest<HTMLElement>(".node");
  const data = store.state.lattice;
  if (node?.dataset.node !== undefined && data) {
    const index = Number(node.dataset.node);
    const extent = reconstructExtent(data, index);
    const intent = reconstructIntent(data, index);
    el("node-details").innerHTML = renderNodeDetails(extent, intent, undefined);
  }
});

el("lattice-source").addEventListener("click", async () => {
  const next = store.state.latticeSource === "ident" ? "dyn" : "ident";
  await store.switchLattice(next).catch(() => undefined);
});

store.load().then(render).catch((err) => {
  el("summary").innerHTML = `<p class="error banner">service unreachable: ${String(err)}</p>`;
});
