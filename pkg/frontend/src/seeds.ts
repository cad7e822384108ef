// HTML rendering for the seed browser: summary bar, seed table, member rows
// with verdict toggles, live score, and the expansion diff. Pure functions
// from state to markup; main.ts wires the events.

import { escapeXml } from "./lattice.js";
import { pendingCount, shownVerdict, type WorkbenchState } from "./state.js";
import type { Expansion, SeedView, Verdict } from "./types.js";

const VERDICTS: Verdict[] = ["accept", "reject", "unreviewed"];

export function renderSummary(state: WorkbenchState): string {
  const summary = state.summary;
  if (!summary) return "<p>loading…</p>";
  const counts = Object.entries(summary.counts)
    .map(([k, v]) => `<span class="chip">${escapeXml(k)}: ${v}</span>`)
    .join(" ");
  const seeds = Object.entries(summary.seeds)
    .map(([k, v]) => `<span class="chip chip-${escapeXml(k)}">${escapeXml(k)}: ${v}</span>`)
    .join(" ");
  return `<div class="counts">${counts}</div><div class="counts">${seeds}</div>`;
}

export function renderSeedTable(state: WorkbenchState): string {
  if (!state.seeds.length) {
    return `<p class="empty">No seeds mined from this workspace.</p>`;
  }
  const rows = state.seeds
    .map((seed) => {
      const selected = seed.id === state.selectedSeedId ? " selected" : "";
      const score = seed.score
        ? `${seed.score.recalled}/${seed.score.seedSize} · ${seed.score.quality}%`
        : "–";
      const pending = pendingCount(state, seed.id);
      const badge = pending ? `<span class="pending">${pending} staged</span>` : "";
      return (
        `<tr class="seed-row${selected}" data-seed="${escapeXml(seed.id)}">` +
        `<td>${escapeXml(seed.id)}</td>` +
        `<td><span class="chip chip-${seed.technique}">${seed.technique}</span></td>` +
        `<td>${seed.effectiveMethods.length}/${seed.methods.length}</td>` +
        `<td>${escapeXml(score)}</td>` +
        `<td>${badge}</td></tr>`
      );
    })
    .join("");
  return (
    `<table class="seeds"><thead><tr>` +
    `<th>seed</th><th>technique</th><th>members</th><th>recalled · quality</th><th></th>` +
    `</tr></thead><tbody>${rows}</tbody></table>`
  );
}

export function renderSeedDetail(state: WorkbenchState): string {
  const seed = state.seeds.find((s) => s.id === state.selectedSeedId);
  if (!seed) return `<p class="empty">Select a seed to triage its members.</p>`;
  const members = seed.methods
    .map((mid) => {
      const verdict = shownVerdict(state, seed.id, mid);
      const acked = seed.verdicts[mid] ?? "unreviewed";
      const dirty = verdict !== acked ? " dirty" : "";
      const toggles = VERDICTS.map(
        (v) =>
          `<button class="verdict ${v}${verdict === v ? " on" : ""}" ` +
          `data-seed="${escapeXml(seed.id)}" data-method="${escapeXml(mid)}" data-verdict="${v}">` +
          `${v}</button>`,
      ).join("");
      return `<li class="member${dirty}"><code>${escapeXml(mid)}</code><span>${toggles}</span></li>`;
    })
    .join("");
  const score = seed.score
    ? `<p class="score">concern <strong>${escapeXml(seed.score.concern)}</strong>: ` +
      `${seed.score.recalled} recalled of ${seed.score.seedSize} · quality ${seed.score.quality}%</p>`
    : "";
  const pending = pendingCount(state, seed.id);
  const expandable = seed.technique === "fanin" || seed.technique === "dynamic";
  return (
    `<h3>${escapeXml(seed.id)} <small>${escapeXml(seed.label)}</small></h3>` +
    score +
    `<div class="actions">` +
    `<button id="save-verdicts" data-seed="${escapeXml(seed.id)}"${pending ? "" : " disabled"}>` +
    `Apply ${pending} verdict${pending === 1 ? "" : "s"}</button>` +
    (expandable
      ? `<button id="expand-seed" data-seed="${escapeXml(seed.id)}">Expand via identifiers</button>`
      : "") +
    `</div>` +
    (state.error ? `<p class="error">${escapeXml(state.error)}</p>` : "") +
    `<ul class="members">${members}</ul>` +
    (seed.expansion ? renderExpansionDiff(seed.expansion) : "")
  );
}

export function renderExpansionDiff(expansion: Expansion): string {
  const origin = expansion.originMethods
    .map((m) => `<li class="kept"><code>${escapeXml(m)}</code></li>`)
    .join("");
  const added = expansion.addedMethods
    .map((m) => `<li class="added"><code>${escapeXml(m)}</code></li>`)
    .join("");
  return (
    `<div class="expansion"><h4>Expansion → ${escapeXml(expansion.seedId)} ` +
    `<small>score ${expansion.score}, concepts [${expansion.nearestConcepts.join(", ")}]</small></h4>` +
    `<div class="diff"><div><h5>origin (${expansion.originMethods.length})</h5><ul>${origin}</ul></div>` +
    `<div><h5>added (${expansion.addedMethods.length})</h5><ul>${added || "<li>none</li>"}</ul></div></div></div>`
  );
}

export function renderReport(state: WorkbenchState): string {
  if (!state.report.length) return "";
  const rows = state.report
    .map(
      (r) =>
        `<tr><td>${escapeXml(r.concern)}</td><td>${escapeXml(r.technique)}</td>` +
        `<td>${r.recalled}</td><td>${r.quality}%</td><td>${r.seedSize}</td></tr>`,
    )
    .join("");
  return (
    `<table class="report"><thead><tr><th>concern</th><th>technique</th>` +
    `<th>recalled</th><th>quality</th><th>size</th></tr></thead><tbody>${rows}</tbody></table>`
  );
}

export function renderNodeDetails(
  extent: string[],
  intent: string[],
  seedView: SeedView | undefined,
): string {
  const fmt = (items: string[]) =>
    items.length ? items.map((x) => `<code>${escapeXml(x)}</code>`).join(" ") : "∅";
  return (
    `<div class="node-details">` +
    `<p><strong>extent</strong> (${extent.length}): ${fmt(extent)}</p>` +
    `<p><strong>intent</strong> (${intent.length}): ${fmt(intent)}</p>` +
    (seedView ? `<p>maps to seed <code>${escapeXml(seedView.id)}</code></p>` : "") +
    `</div>`
  );
}
