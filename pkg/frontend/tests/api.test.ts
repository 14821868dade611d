import { afterEach, describe, expect, it, vi } from "vitest";

import { ApiError, SessionClient } from "../src/api.js";

function jsonResponse(body: unknown, status = 200): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "Content-Type": "application/json" },
  });
}

afterEach(() => {
  vi.restoreAllMocks();
});

describe("SessionClient", () => {
  it("posts raw image bytes to create a session", async () => {
    const fetchMock = vi
      .spyOn(globalThis, "fetch")
      .mockResolvedValue(jsonResponse({ session_id: "abc", width: 128, height: 96 }));
    const client = new SessionClient("");
    const info = await client.createSession(new ArrayBuffer(4));
    expect(info.session_id).toBe("abc");
    const [url, init] = fetchMock.mock.calls[0];
    expect(url).toBe("/sessions");
    expect(init?.method).toBe("POST");
  });

  it("sends seeds as JSON with the vertex lists untouched", async () => {
    const fetchMock = vi
      .spyOn(globalThis, "fetch")
      .mockResolvedValue(jsonResponse({ iter: 0 }));
    const client = new SessionClient("");
    const payload = {
      version: 1,
      inside_sign: -1,
      polygons: [[[14.5, 14], [76, 14], [76, 76.25]]],
    };
    await client.setSeeds("abc", payload);
    const [url, init] = fetchMock.mock.calls[0];
    expect(url).toBe("/sessions/abc/seeds");
    expect(JSON.parse(init?.body as string)).toEqual(payload);
  });

  it("merges run params with the step budget", async () => {
    const fetchMock = vi
      .spyOn(globalThis, "fetch")
      .mockResolvedValue(jsonResponse({ iter: 10, converged: false, degenerate: false }));
    const client = new SessionClient("");
    await client.runSteps(
      "abc",
      {
        model: "region", dt: 15, sigma1: 1, sigma2: 1, ts: 9,
        reinit_period: 1, reg_period: 1, max_iters: 1000, mu: 0.1, nu: 1,
      },
      10,
    );
    const body = JSON.parse(fetchMock.mock.calls[0][1]?.body as string);
    expect(body.n_steps).toBe(10);
    expect(body.model).toBe("region");
    expect(body.dt).toBe(15);
  });

  it("raises ApiError with the status and server detail", async () => {
    vi.spyOn(globalThis, "fetch").mockResolvedValue(
      jsonResponse({ detail: "set seeds before running" }, 409),
    );
    const client = new SessionClient("");
    const params = {
      model: "region", dt: 15, sigma1: 1, sigma2: 1, ts: 9,
      reinit_period: 1, reg_period: 1, max_iters: 1000, mu: 0.1, nu: 1,
    };
    const err = await client.runSteps("abc", params, 1).catch((e: unknown) => e);
    expect(err).toBeInstanceOf(ApiError);
    expect((err as ApiError).status).toBe(409);
    expect((err as ApiError).message).toContain("seeds");
  });

  it("parses the state document", async () => {
    vi.spyOn(globalThis, "fetch").mockResolvedValue(
      jsonResponse({
        iter: 40, converged: true, degenerate: false, width: 128, height: 128,
        inside_sign: -1, c_plus: 0.8, c_minus: 0.2,
        contours: [[[1, 2], [3, 4]]], mask_png: "AAAA",
      }),
    );
    const client = new SessionClient("");
    const state = await client.getState("abc");
    expect(state.iter).toBe(40);
    expect(state.contours[0][1]).toEqual([3, 4]);
    expect(state.mask_png).toBe("AAAA");
  });
});
