import { describe, expect, it } from "vitest";

import { ApiClient, ApiError, quoteArg } from "../src/api";

function recordingFetch(status: number, payload: unknown) {
  const calls: { url: string; init?: RequestInit }[] = [];
  const impl = (async (url: RequestInfo | URL, init?: RequestInit) => {
    calls.push({ url: String(url), init });
    return new Response(JSON.stringify(payload), { status });
  }) as typeof fetch;
  return { impl, calls };
}

describe("ApiClient", () => {
  it("posts json bodies with the base path", async () => {
    const { impl, calls } = recordingFetch(200, { links: [] });
    const client = new ApiClient("/api/v1", impl);
    await client.linkRefs("sid");
    expect(calls[0]!.url).toBe("/api/v1/sessions/sid/refs/link");
    expect(calls[0]!.init?.method).toBe("POST");
  });

  it("serializes extraction requests with region and mode", async () => {
    const { impl, calls } = recordingFetch(200, {
      n_rows: 0, n_cols: 0, cells: [], issues: [],
      table: { columns: [], rows: [], legend: {} }, violations: [],
    });
    const client = new ApiClient("/api/v1", impl);
    await client.extract("sid", { page: 0, x0: 1, y0: 2, x1: 3, y1: 4 }, "stream");
    const body = JSON.parse(String(calls[0]!.init?.body));
    expect(body).toEqual({ region: { page: 0, x0: 1, y0: 2, x1: 3, y1: 4 },
                           mode: "stream" });
  });

  it("uploads multipart form data", async () => {
    const { impl, calls } = recordingFetch(201, {
      session_id: "s", step: "select_region", page_count: 1,
    });
    const client = new ApiClient("/api/v1", impl);
    await client.createSession(new Blob([new Uint8Array([1, 2])]), "a.pdf");
    expect(calls[0]!.init?.body).toBeInstanceOf(FormData);
  });

  it("maps error envelopes to ApiError", async () => {
    const { impl } = recordingFetch(409, { error: "step_order", detail: "too late" });
    const client = new ApiClient("/api/v1", impl);
    const error = await client.linkRefs("sid").catch((e) => e);
    expect(error).toBeInstanceOf(ApiError);
    expect(error.status).toBe(409);
    expect(error.code).toBe("step_order");
  });
});

describe("quoteArg", () => {
  it("leaves simple tokens bare", () => {
    expect(quoteArg("plain")).toBe("plain");
    expect(quoteArg("[1]")).toBe("[1]");
  });

  it("quotes spaces and escapes quotes/backslashes", () => {
    expect(quoteArg("two words")).toBe('"two words"');
    expect(quoteArg('say "hi"')).toBe('"say \\"hi\\""');
    expect(quoteArg("back\\slash")).toBe('"back\\\\slash"');
    expect(quoteArg("")).toBe('""');
  });
});
