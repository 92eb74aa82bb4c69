import { describe, expect, it } from "vitest";

import { ApiClient, ApiClientError } from "../src/api.js";

function fetchStub(status: number, body: unknown, capture?: { url?: string; init?: RequestInit }) {
  return async (url: string, init?: RequestInit) => {
    if (capture) {
      capture.url = url;
      capture.init = init;
    }
    return new Response(JSON.stringify(body), {
      status,
      headers: { "Content-Type": "application/json" },
    });
  };
}

describe("ApiClient", () => {
  it("posts trades with the documented body", async () => {
    const capture: { url?: string; init?: RequestInit } = {};
    const api = new ApiClient("http://x", fetchStub(200, { trade: {}, tick: 0, portfolio: {} }, capture));
    await api.trade("sess1", "s05", "Buy", 10);
    expect(capture.url).toBe("http://x/v1/sessions/sess1/trades");
    expect(JSON.parse(String(capture.init?.body))).toEqual({
      stock_id: "s05",
      side: "Buy",
      shares: 10,
    });
  });

  it("converts error envelopes into typed errors", async () => {
    const api = new ApiClient(
      "",
      fetchStub(409, { error: { code: "InsufficientFunds", message: "need 100 cents" } }),
    );
    const err = await api.trade("s", "x", "Buy", 1).catch((e) => e);
    expect(err).toBeInstanceOf(ApiClientError);
    expect(err.status).toBe(409);
    expect(err.code).toBe("InsufficientFunds");
    expect(err.message).toContain("need 100");
  });

  it("falls back to a generic code when the envelope is missing", async () => {
    const api = new ApiClient("", fetchStub(500, {}));
    const err = await api.health().catch((e) => e);
    expect(err.code).toBe("HTTP500");
  });

  it("sends event batches unchanged", async () => {
    const capture: { init?: RequestInit } = {};
    const api = new ApiClient("", fetchStub(200, { accepted: 1 }, capture));
    const events = [
      { kind: "PageEnter" as const, tick: 0, wall_time: 1.5, payload: { page: "market" } },
    ];
    const res = await api.postEvents("sess1", events);
    expect(res.accepted).toBe(1);
    expect(JSON.parse(String(capture.init?.body))).toEqual({ events });
  });
});
