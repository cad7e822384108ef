// Lattice layout and SVG rendering, all pure string/array work so it can be
// unit-tested without a DOM. Nodes follow the classic sparse-label drawing:
// property labels above the circle, element labels below, and clicking a
// node reconstructs its full extent/intent from the labels along the order.

import type { LatticeData, LatticeNode } from "./types.js";

export const COLLAPSE_THRESHOLD = 120;

const NODE_RADIUS = 7;
const LEVEL_HEIGHT = 86;
const NODE_SPACING = 130;
const MARGIN = 60;

export function escapeXml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

/** Level per node: longest path from the bottom along cover edges, so every
 * edge points one or more levels up. */
export function assignLevels(nodeCount: number, edges: [number, number][]): number[] {
  const parents: number[][] = Array.from({ length: nodeCount }, () => []);
  const indegree = new Array(nodeCount).fill(0);
  for (const [child, parent] of edges) {
    parents[child]!.push(parent);
    indegree[parent] += 1;
  }
  const levels = new Array(nodeCount).fill(0);
  const queue: number[] = [];
  for (let i = 0; i < nodeCount; i++) if (indegree[i] === 0) queue.push(i);
  // indegree counts incoming child->parent edges; sources are minimal nodes
  const pending = [...indegree];
  while (queue.length) {
    const node = queue.shift()!;
    for (const parent of parents[node]!) {
      levels[parent] = Math.max(levels[parent], levels[node] + 1);
      pending[parent] -= 1;
      if (pending[parent] === 0) queue.push(parent);
    }
  }
  return levels;
}

function descendantsOf(nodeCount: number, edges: [number, number][]): number[][] {
  const children: number[][] = Array.from({ length: nodeCount }, () => []);
  for (const [child, parent] of edges) children[parent]!.push(child);
  return children;
}

/** extent(c) = union of beta over c and everything below it. */
export function reconstructExtent(data: LatticeData, index: number): string[] {
  const children = descendantsOf(data.nodes.length, data.edges);
  const seen = new Set<number>();
  const out = new Set<string>();
  const stack = [index];
  while (stack.length) {
    const node = stack.pop()!;
    if (seen.has(node)) continue;
    seen.add(node);
    for (const e of data.nodes[node]!.beta) out.add(e);
    for (const c of children[node]!) stack.push(c);
  }
  return [...out].sort();
}

/** intent(c) = union of alpha over c and everything above it. */
export function reconstructIntent(data: LatticeData, index: number): string[] {
  const parents: number[][] = Array.from({ length: data.nodes.length }, () => []);
  for (const [child, parent] of data.edges) parents[child]!.push(parent);
  const seen = new Set<number>();
  const out = new Set<string>();
  const stack = [index];
  while (stack.length) {
    const node = stack.pop()!;
    if (seen.has(node)) continue;
    seen.add(node);
    for (const p of data.nodes[node]!.alpha) out.add(p);
    for (const up of parents[node]!) stack.push(up);
  }
  return [...out].sort();
}

export interface LayoutNode {
  index: number;
  x: number;
  y: number;
  node: LatticeNode;
}

export interface Layout {
  width: number;
  height: number;
  nodes: LayoutNode[];
  byLevel: number[][];
  levels: number[];
  collapsed: boolean;
}

export function buildLayout(
  data: LatticeData,
  expandedLevels: ReadonlySet<number> = new Set(),
  collapseThreshold: number = COLLAPSE_THRESHOLD,
): Layout {
  const levels = assignLevels(data.nodes.length, data.edges);
  const maxLevel = levels.length ? Math.max(...levels) : 0;
  const byLevel: number[][] = Array.from({ length: maxLevel + 1 }, () => []);
  levels.forEach((level, index) => byLevel[level]!.push(index));
  const collapsed = data.nodes.length > collapseThreshold;
  const widest = Math.max(1, ...byLevel.map((xs) => xs.length));
  const width = collapsed
    ? 900
    : Math.max(420, MARGIN * 2 + (widest - 1) * NODE_SPACING);
  const height = MARGIN * 2 + maxLevel * LEVEL_HEIGHT;
  const nodes: LayoutNode[] = [];
  for (let level = 0; level <= maxLevel; level++) {
    const row = byLevel[level]!;
    const y = height - MARGIN - level * LEVEL_HEIGHT;
    if (collapsed && !expandedLevels.has(level)) continue;
    row.forEach((index, position) => {
      const x = width / 2 + (position - (row.length - 1) / 2) * NODE_SPACING;
      nodes.push({ index, x, y, node: data.nodes[index]! });
    });
  }
  return { width, height, nodes, byLevel, levels, collapsed };
}

function labelText(items: string[], cap = 3): string {
  if (!items.length) return "";
  const shown = items.slice(0, cap).join(";");
  return items.length > cap ? `${shown};+${items.length - cap}` : shown;
}

/** SVG document for the lattice. In collapsed mode, levels not in
 * expandedLevels render as a single group bar with a node count; clicking a
 * bar (data-level) toggles it, clicking a node (data-node) opens details. */
export function renderLatticeSvg(
  data: LatticeData,
  expandedLevels: ReadonlySet<number> = new Set(),
  collapseThreshold: number = COLLAPSE_THRESHOLD,
): string {
  const layout = buildLayout(data, expandedLevels, collapseThreshold);
  const positioned = new Map(layout.nodes.map((n) => [n.index, n]));
  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${layout.width} ${layout.height}" ` +
      `width="${layout.width}" height="${layout.height}" class="lattice">`,
  );
  for (const [child, parent] of data.edges) {
    const a = positioned.get(child);
    const b = positioned.get(parent);
    if (!a || !b) continue;
    parts.push(
      `<line x1="${a.x}" y1="${a.y}" x2="${b.x}" y2="${b.y}" class="edge"/>`,
    );
  }
  if (layout.collapsed) {
    layout.byLevel.forEach((row, level) => {
      if (expandedLevels.has(level)) return;
      const y = layout.height - MARGIN - level * LEVEL_HEIGHT;
      parts.push(
        `<g class="level-group" data-level="${level}">` +
          `<rect x="${layout.width / 2 - 150}" y="${y - 14}" width="300" height="28" rx="6"/>` +
          `<text x="${layout.width / 2}" y="${y + 5}" text-anchor="middle">` +
          `level ${level}: ${row.length} concepts</text></g>`,
      );
    });
  }
  for (const { index, x, y, node } of layout.nodes) {
    const alpha = labelText(node.alpha);
    const beta = labelText(node.beta);
    parts.push(`<g class="node" data-node="${index}">`);
    parts.push(`<circle cx="${x}" cy="${y}" r="${NODE_RADIUS}"/>`);
    if (alpha) {
      parts.push(
        `<text class="alpha" x="${x}" y="${y - 12}" text-anchor="middle">${escapeXml(alpha)}</text>`,
      );
    }
    if (beta) {
      parts.push(
        `<text class="beta" x="${x}" y="${y + 22}" text-anchor="middle">${escapeXml(beta)}</text>`,
      );
    }
    parts.push("</g>");
  }
  parts.push("</svg>");
  return parts.join("");
}
