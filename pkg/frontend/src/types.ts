// Payload shapes of the mining service's JSON endpoints.

export type Verdict = "accept" | "reject" | "unreviewed";

export interface SeedScore {
  concern: string;
  recalled: number;
  quality: number;
  seedSize: number;
}

export interface SeedView {
  id: string;
  technique: "fanin" | "identifier" | "dynamic" | "combined";
  label: string;
  interpretation: string | null;
  methods: string[];
  verdicts: Record<string, Verdict>;
  effectiveMethods: string[];
  note: string;
  score?: SeedScore;
  expansion?: Expansion;
}

export interface Expansion {
  originId: string;
  seedId: string;
  originMethods: string[];
  addedMethods: string[];
  nearestConcepts: number[];
  score: number;
  methods: string[];
}

export interface LatticeNode {
  index: number;
  extent: string[];
  intent: string[];
  alpha: string[];
  beta: string[];
}

export interface LatticeData {
  source: string;
  nodes: LatticeNode[];
  edges: [number, number][];
}

export interface ConceptRow {
  index: number;
  intent?: string[];
  extent?: string[];
  extentSize?: number;
  candidate?: boolean;
  classification?: "specific" | "generic";
  seed?: boolean;
  methodLabels?: string[];
  traceLabels?: string[];
}

export interface Summary {
  counts: Record<string, number>;
  seeds: Record<string, number>;
  config: Record<string, unknown>;
}

export interface ReportRow {
  concern: string;
  technique: string;
  recalled: number;
  quality: number;
  seedSize: number;
}
