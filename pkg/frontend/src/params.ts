/** Parameter form model with the recommended operating points per model. */

import type { RunParams } from "./api.js";

export const MODELS = ["region", "edge", "cv", "zhang"] as const;
export type ModelName = (typeof MODELS)[number];

export interface ModelDefaults {
  dt: number;
  reinit_period: number;
}

/** dt = 15 suits the fast evolutions; the curvature baseline needs a small
 * step and periodic distance rebuilds. */
export const MODEL_DEFAULTS: Record<ModelName, ModelDefaults> = {
  region: { dt: 15, reinit_period: 1 },
  edge: { dt: 15, reinit_period: 1 },
  cv: { dt: 0.8, reinit_period: 20 },
  zhang: { dt: 15, reinit_period: 1 },
};

export function defaultParams(model: ModelName = "region"): RunParams {
  const d = MODEL_DEFAULTS[model];
  return {
    model,
    dt: d.dt,
    sigma1: 1,
    sigma2: 1,
    ts: 9,
    reinit_period: d.reinit_period,
    reg_period: 1,
    max_iters: 1000,
    mu: 0.1,
    nu: 1,
  };
}

/** Re-seed the model-dependent fields when the model selector changes,
 * leaving user-edited shared fields alone. */
export function applyModelChange(params: RunParams, model: ModelName): RunParams {
  const d = MODEL_DEFAULTS[model];
  return { ...params, model, dt: d.dt, reinit_period: d.reinit_period };
}

export function validateParams(params: RunParams): string[] {
  const problems: string[] = [];
  if (!(params.dt > 0)) problems.push("dt must be positive");
  if (params.dt > 25) problems.push("dt above 25 can be unstable");
  if (!(params.sigma1 > 0)) problems.push("sigma1 must be positive");
  if (!(params.sigma2 > 0)) problems.push("sigma2 must be positive");
  if (params.ts < 1 || params.ts % 2 === 0) problems.push("ts must be odd");
  if (params.model === "edge" && params.reinit_period < 1)
    problems.push("the edge model needs reinit_period >= 1");
  if (params.reinit_period < 0) problems.push("reinit_period must be >= 0");
  if (params.reg_period < 1) problems.push("reg_period must be >= 1");
  return problems;
}
