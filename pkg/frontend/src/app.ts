/** Canvas application: load an image, draw seeds, drive the evolution.
 *
 * All numerical work happens on the server; this file only wires DOM
 * events to the session API and renders whatever the server reports.
 */

import { ApiError, SessionClient, StateResult } from "./api.js";
import { PolygonSet } from "./polygons.js";
import { MODELS, ModelName, applyModelChange, defaultParams, validateParams } from "./params.js";

const client = new SessionClient("");
const seeds = new PolygonSet();
let params = defaultParams();

let sessionId: string | null = null;
let imageBitmap: ImageBitmap | null = null;
let imageWidth = 0;
let imageHeight = 0;
let scale = 1;
let lastState: StateResult | null = null;
let seedsSubmitted = false;

const $ = <T extends HTMLElement>(id: string): T =>
  document.getElementById(id) as T;

const canvas = $("view") as unknown as HTMLCanvasElement;
const ctx = canvas.getContext("2d")!;

function setStatus(text: string): void {
  $("status").textContent = text;
}

function showError(message: string): void {
  const box = $("error");
  box.textContent = message;
  box.hidden = message === "";
}

function refreshStatus(): void {
  if (!lastState) {
    setStatus(sessionId ? "draw seed polygons, then submit" : "load an image");
    return;
  }
  const s = lastState;
  const means =
    s.c_plus !== null && s.c_minus !== null
      ? `c+ ${s.c_plus.toFixed(4)}  c- ${s.c_minus.toFixed(4)}`
      : "means undefined";
  const flags = `${s.converged ? "converged" : "running"}${s.degenerate ? ", degenerate" : ""}`;
  setStatus(`iteration ${s.iter}  (${flags})  ${means}`);
}

function draw(): void {
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  if (imageBitmap) {
    ctx.drawImage(imageBitmap, 0, 0, imageWidth * scale, imageHeight * scale);
  }
  // server-reported zero level curves: green over a black border
  if (lastState) {
    for (const pass of [
      { color: "black", width: 4 },
      { color: "#18e02c", width: 1.8 },
    ]) {
      ctx.strokeStyle = pass.color;
      ctx.lineWidth = pass.width;
      for (const contour of lastState.contours) {
        ctx.beginPath();
        contour.forEach(([x, y], i) =>
          i === 0 ? ctx.moveTo(x * scale, y * scale) : ctx.lineTo(x * scale, y * scale),
        );
        ctx.stroke();
      }
    }
  }
  // seed polygons being edited
  ctx.strokeStyle = seeds.insideSign < 0 ? "#ffb020" : "#20a0ff";
  ctx.lineWidth = 1.5;
  for (const poly of seeds.polygons) {
    ctx.beginPath();
    poly.forEach((p, i) =>
      i === 0 ? ctx.moveTo(p.x * scale, p.y * scale) : ctx.lineTo(p.x * scale, p.y * scale),
    );
    ctx.closePath();
    ctx.stroke();
  }
  if (seeds.current.length > 0) {
    ctx.beginPath();
    seeds.current.forEach((p, i) =>
      i === 0 ? ctx.moveTo(p.x * scale, p.y * scale) : ctx.lineTo(p.x * scale, p.y * scale),
    );
    ctx.stroke();
    ctx.fillStyle = "#ff4040";
    for (const p of seeds.current) {
      ctx.fillRect(p.x * scale - 2, p.y * scale - 2, 4, 4);
    }
  }
}

function setRunEnabled(enabled: boolean): void {
  ($("run") as HTMLButtonElement).disabled = !enabled;
  ($("step") as HTMLButtonElement).disabled = !enabled;
}

async function refreshState(): Promise<void> {
  if (!sessionId) return;
  lastState = await client.getState(sessionId);
  refreshStatus();
  draw();
}

function handleFailure(err: unknown, context: string): void {
  if (err instanceof ApiError && err.status === 409) {
    // protocol violation: disable the offending control until re-seeding
    setRunEnabled(false);
    showError(`${context}: ${err.message}`);
  } else {
    showError(`${context}: ${err instanceof Error ? err.message : String(err)}`);
  }
}

async function loadImageFile(file: File): Promise<void> {
  showError("");
  const bytes = await file.arrayBuffer();
  const info = await client.createSession(bytes);
  sessionId = info.session_id;
  imageWidth = info.width;
  imageHeight = info.height;
  scale = Math.min(1024 / imageWidth, 768 / imageHeight, 4);
  canvas.width = Math.round(imageWidth * scale);
  canvas.height = Math.round(imageHeight * scale);
  try {
    imageBitmap = await createImageBitmap(file);
  } catch {
    imageBitmap = null; // PGM uploads decode server-side only
  }
  seeds.clear();
  lastState = null;
  seedsSubmitted = false;
  setRunEnabled(false);
  refreshStatus();
  draw();
}

async function submitSeeds(): Promise<void> {
  if (!sessionId) return;
  if (seeds.current.length >= 3) seeds.closeCurrent();
  if (!seeds.complete) {
    showError("draw at least one closed polygon (3+ vertices) first");
    return;
  }
  showError("");
  try {
    await client.setSeeds(sessionId, seeds.toPayload());
    seedsSubmitted = true;
    setRunEnabled(true);
    await refreshState();
  } catch (err) {
    handleFailure(err, "seed submission failed");
  }
}

async function runSteps(n: number): Promise<void> {
  if (!sessionId || !seedsSubmitted) return;
  const problems = validateParams(params);
  if (problems.length > 0) {
    showError(problems.join("; "));
    return;
  }
  showError("");
  try {
    await client.runSteps(sessionId, params, n);
    await refreshState();
  } catch (err) {
    handleFailure(err, "run failed");
  }
}

function exportMask(): void {
  if (!lastState) return;
  const a = document.createElement("a");
  a.href = `data:image/png;base64,${lastState.mask_png}`;
  a.download = "mask.png";
  a.click();
}

function buildParamForm(): void {
  const modelSelect = $("model") as HTMLSelectElement;
  for (const m of MODELS) {
    const option = document.createElement("option");
    option.value = m;
    option.textContent = m;
    modelSelect.appendChild(option);
  }
  modelSelect.value = params.model;
  modelSelect.onchange = () => {
    params = applyModelChange(params, modelSelect.value as ModelName);
    syncParamInputs();
  };
  for (const field of ["dt", "sigma1", "sigma2", "ts", "reinit_period", "reg_period", "mu", "nu"] as const) {
    const input = $(field) as HTMLInputElement;
    input.onchange = () => {
      params = { ...params, [field]: Number(input.value) };
    };
  }
  syncParamInputs();
}

function syncParamInputs(): void {
  for (const field of ["dt", "sigma1", "sigma2", "ts", "reinit_period", "reg_period", "mu", "nu"] as const) {
    ($(field) as HTMLInputElement).value = String(params[field]);
  }
}

export function start(): void {
  buildParamForm();
  refreshStatus();

  ($("file") as HTMLInputElement).onchange = (e) => {
    const file = (e.target as HTMLInputElement).files?.[0];
    if (file) void loadImageFile(file).catch((err) => handleFailure(err, "upload failed"));
  };

  canvas.onclick = (e) => {
    if (!sessionId) return;
    const rect = canvas.getBoundingClientRect();
    seeds.addVertex(
      PolygonSet.toImageCoords(e.clientX - rect.left, e.clientY - rect.top, scale),
    );
    draw();
  };
  canvas.ondblclick = (e) => {
    e.preventDefault();
    seeds.closeCurrent();
    draw();
  };

  $("close-poly").onclick = () => {
    seeds.closeCurrent();
    draw();
  };
  $("undo").onclick = () => {
    seeds.undoVertex();
    draw();
  };
  $("sign").onclick = () => {
    const sign = seeds.toggleSign();
    $("sign").textContent = `interior sign: ${sign > 0 ? "+1" : "-1"}`;
    draw();
  };
  $("submit-seeds").onclick = () => void submitSeeds();
  $("reset").onclick = () => void submitSeeds(); // re-submitting resets the run
  $("run").onclick = () =>
    void runSteps(Number(($("run-n") as HTMLInputElement).value) || 500);
  $("step").onclick = () => void runSteps(1);
  $("export").onclick = exportMask;
}

if (typeof document !== "undefined" && document.getElementById("view")) {
  start();
}
