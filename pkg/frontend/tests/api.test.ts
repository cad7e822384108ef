import { describe, expect, it } from "vitest";

import { ApiClient, ApiError } from "../src/api.js";

function fakeFetch(
  handler: (url: string, init?: RequestInit) => { status?: number; body: unknown },
): { fetchFn: typeof fetch; calls: Array<{ url: string; init?: RequestInit }> } {
  const calls: Array<{ url: string; init?: RequestInit }> = [];
  const fetchFn = (async (input: RequestInfo | URL, init?: RequestInit) => {
    const url = String(input);
    calls.push({ url, init });
    const { status = 200, body } = handler(url, init);
    return new Response(JSON.stringify(body), {
      status,
      headers: { "Content-Type": "application/json" },
    });
  }) as typeof fetch;
  return { fetchFn, calls };
}

describe("ApiClient", () => {
  it("hits the documented endpoints", async () => {
    const { fetchFn, calls } = fakeFetch((url) => {
      if (url.endsWith("/api/summary")) return { body: { counts: {}, seeds: {}, config: {} } };
      if (url.includes("/api/seeds")) return { body: { seeds: [] } };
      if (url.includes("/api/lattice")) return { body: { source: "ident", nodes: [], edges: [] } };
      if (url.includes("/api/concepts")) return { body: { source: "ident", concepts: [] } };
      if (url.includes("/api/report")) return { body: { rows: [] } };
      throw new Error(`unexpected ${url}`);
    });
    const api = new ApiClient("http://x", fetchFn);
    await api.summary();
    await api.seeds("fanin");
    await api.lattice("ident");
    await api.concepts("ident");
    await api.report();
    expect(calls.map((c) => c.url)).toEqual([
      "http://x/api/summary",
      "http://x/api/seeds?technique=fanin",
      "http://x/api/lattice?source=ident",
      "http://x/api/concepts?source=ident",
      "http://x/api/report",
    ]);
  });

  it("posts triage verdicts as JSON", async () => {
    const { fetchFn, calls } = fakeFetch(() => ({
      body: { ok: true, seed: { id: "s", methods: [], verdicts: {} } },
    }));
    const api = new ApiClient("", fetchFn);
    await api.triage("s", { m1: "reject" }, "note");
    const call = calls[0]!;
    expect(call.url).toBe("/api/triage");
    expect(call.init?.method).toBe("POST");
    expect(JSON.parse(String(call.init?.body))).toEqual({
      seedId: "s",
      verdicts: { m1: "reject" },
      note: "note",
    });
  });

  it("maps service errors onto ApiError with status and message", async () => {
    const { fetchFn } = fakeFetch(() => ({
      status: 409,
      body: { error: "method 'ghost' is not a member of seed 's'" },
    }));
    const api = new ApiClient("", fetchFn);
    const err = await api.triage("s", { ghost: "reject" }).catch((e) => e);
    expect(err).toBeInstanceOf(ApiError);
    expect((err as ApiError).status).toBe(409);
    expect(String(err)).toContain("not a member");
  });

  it("maps 404 on expansion of unknown seeds", async () => {
    const { fetchFn } = fakeFetch(() => ({ status: 404, body: { error: "unknown seed 'x'" } }));
    const api = new ApiClient("", fetchFn);
    await expect(api.expand("x")).rejects.toMatchObject({ status: 404 });
  });
});
