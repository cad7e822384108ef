// Thin typed client over the /api endpoints. Every state change in the UI
// goes through here; no mining logic lives on this side.

import type {
  ConceptRow,
  Expansion,
  LatticeData,
  ReportRow,
  SeedView,
  Summary,
  Verdict,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    message: string,
  ) {
    super(message);
  }
}

async function asJson<T>(resp: Response): Promise<T> {
  const body = await resp.json().catch(() => ({}));
  if (!resp.ok) {
    const message =
      typeof body === "object" && body !== null && "error" in body
        ? String((body as { error: unknown }).error)
        : resp.statusText;
    throw new ApiError(resp.status, message);
  }
  return body as T;
}

export class ApiClient {
  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchFn: typeof fetch = fetch,
  ) {}

  private get(path: string): Promise<Response> {
    return this.fetchFn(this.baseUrl + path);
  }

  private post(path: string, payload: unknown): Promise<Response> {
    return this.fetchFn(this.baseUrl + path, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(payload),
    });
  }

  async summary(): Promise<Summary> {
    return asJson<Summary>(await this.get("/api/summary"));
  }

  async seeds(technique?: string): Promise<SeedView[]> {
    const query = technique ? `?technique=${encodeURIComponent(technique)}` : "";
    const data = await asJson<{ seeds: SeedView[] }>(
      await this.get(`/api/seeds${query}`),
    );
    return data.seeds;
  }

  async concepts(source: "ident" | "dyn"): Promise<ConceptRow[]> {
    const data = await asJson<{ concepts: ConceptRow[] }>(
      await this.get(`/api/concepts?source=${source}`),
    );
    return data.concepts;
  }

  async lattice(source: "ident" | "dyn"): Promise<LatticeData> {
    return asJson<LatticeData>(await this.get(`/api/lattice?source=${source}`));
  }

  async report(): Promise<ReportRow[]> {
    const data = await asJson<{ rows: ReportRow[] }>(await this.get("/api/report"));
    return data.rows;
  }

  async triage(
    seedId: string,
    verdicts: Record<string, Verdict>,
    note?: string,
  ): Promise<SeedView> {
    const data = await asJson<{ seed: SeedView }>(
      await this.post("/api/triage", { seedId, verdicts, note }),
    );
    return data.seed;
  }

  async expand(seedId: string): Promise<Expansion> {
    const data = await asJson<{ expansion: Expansion }>(
      await this.post("/api/expand", { seedId }),
    );
    return data.expansion;
  }
}
