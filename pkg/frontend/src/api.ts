/** Typed client for the session service. All coordinates are image pixels. */

export interface SessionInfo {
  session_id: string;
  width: number;
  height: number;
}

export interface SeedsPayload {
  version: number;
  inside_sign: number;
  polygons: number[][][];
}

export interface RunParams {
  model: string;
  dt: number;
  sigma1: number;
  sigma2: number;
  ts: number;
  reinit_period: number;
  reg_period: number;
  max_iters: number;
  mu: number;
  nu: number;
}

export interface RunResult {
  iter: number;
  converged: boolean;
  degenerate: boolean;
}

export interface StateResult extends RunResult {
  width: number;
  height: number;
  inside_sign: number;
  c_plus: number | null;
  c_minus: number | null;
  contours: number[][][];
  mask_png: string;
}

export interface MetricsResult {
  iter: number;
  completeness: number | null;
  correctness: number | null;
  quality: number | null;
  dice: number | null;
}

/** Error carrying the HTTP status so callers can tell 404/409/422 apart. */
export class ApiError extends Error {
  constructor(public status: number, message: string) {
    super(message);
  }
}

async function expectJson<T>(response: Response): Promise<T> {
  if (!response.ok) {
    let detail = response.statusText;
    try {
      const body = await response.json();
      detail = body.detail ?? body.error ?? detail;
    } catch {
      /* non-JSON error body */
    }
    throw new ApiError(response.status, detail);
  }
  return response.json() as Promise<T>;
}

export class SessionClient {
  constructor(private baseUrl: string = "") {}

  async createSession(imageBytes: Blob | ArrayBuffer): Promise<SessionInfo> {
    const response = await fetch(`${this.baseUrl}/sessions`, {
      method: "POST",
      body: imageBytes,
    });
    return expectJson<SessionInfo>(response);
  }

  async setSeeds(sessionId: string, seeds: SeedsPayload): Promise<{ iter: number }> {
    const response = await fetch(`${this.baseUrl}/sessions/${sessionId}/seeds`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(seeds),
    });
    return expectJson<{ iter: number }>(response);
  }

  async runSteps(sessionId: string, params: RunParams, nSteps: number): Promise<RunResult> {
    const response = await fetch(`${this.baseUrl}/sessions/${sessionId}/run`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ ...params, n_steps: nSteps }),
    });
    return expectJson<RunResult>(response);
  }

  async getState(sessionId: string): Promise<StateResult> {
    const response = await fetch(`${this.baseUrl}/sessions/${sessionId}/state`);
    return expectJson<StateResult>(response);
  }

  async getMetrics(sessionId: string, truthBytes: Blob | ArrayBuffer): Promise<MetricsResult> {
    const response = await fetch(`${this.baseUrl}/sessions/${sessionId}/metrics`, {
      method: "POST",
      body: truthBytes,
    });
    return expectJson<MetricsResult>(response);
  }
}
