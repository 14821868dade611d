"""Session-oriented HTTP facade: seed, run, and inspect evolutions remotely.

The service is a thin stateful wrapper over EvolutionRun; every number a
client sees comes from the same code path the CLI uses. Sessions live in
process memory with an idle TTL and are each guarded by a lock, so
concurrent mutators serialize and readers always see a consistent
checkpoint. Responses carry the session's iteration counter so a client
can detect stale reads.
"""

from __future__ import annotations

import base64
import io
import threading
import time
import uuid
from dataclasses import dataclass, field

import numpy as np
from fastapi import FastAPI, HTTPException, Request
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from .engine import (EvolutionRun, NumericalInstabilityError, default_params,
                     extract_contours)
from .fileio import FileFormatError, load_image_bytes, load_mask_bytes, report_to_dict, seed_spec_from_dict
from .grid import DegeneratePartitionError, SeedSpec, binarize, rasterize_seeds, region_means
from .metrics import evaluate
from .models import DEFAULT_EDGE_GAIN, ModelKind

DEFAULT_SESSION_TTL = 30 * 60.0


class SeedsBody(BaseModel):
    polygons: list[list[list[float]]]
    inside_sign: int
    version: int = 1


class RunBody(BaseModel):
    model: str
    n_steps: int = Field(ge=0)
    dt: float | None = None
    sigma1: float = 1.0
    sigma2: float = 1.0
    ts: int = 9
    reinit_period: int | None = None
    reg_period: int = 1
    max_iters: int = 1000
    conv_every: int = 10
    conv_window: int = 3
    mu: float = 0.1
    nu: float = 1.0
    edge_gain: float = DEFAULT_EDGE_GAIN

    def to_params(self):
        kind = ModelKind.from_name(self.model)
        dt = self.dt if self.dt is not None else (
            0.8 if kind is ModelKind.CHAN_VESE else 15.0)
        reinit = self.reinit_period if self.reinit_period is not None else (
            20 if kind is ModelKind.CHAN_VESE else 1)
        return default_params(
            kind, dt=dt, sigma2=self.sigma2, ts_reg=self.ts,
            reinit_period=reinit, reg_period=self.reg_period,
            max_iters=self.max_iters, conv_check_every=self.conv_every,
            conv_window=self.conv_window, sigma1=self.sigma1, ts_pre=self.ts,
            mu=self.mu, nu=self.nu, edge_gain=self.edge_gain)


@dataclass
class Session:
    image: np.ndarray
    lock: threading.Lock = field(default_factory=threading.Lock)
    seeds: SeedSpec | None = None
    run: EvolutionRun | None = None
    pinned_params: object = None
    touched: float = field(default_factory=time.monotonic)


def _mask_png(mask: np.ndarray) -> str:
    from PIL import Image
    img = Image.fromarray((np.asarray(mask, bool) * np.uint8(255)))
    buf = io.BytesIO()
    img.save(buf, format="PNG")
    return base64.b64encode(buf.getvalue()).decode("ascii")


def create_app(static_dir=None, session_ttl: float = DEFAULT_SESSION_TTL) -> FastAPI:
    app = FastAPI(title="lsekit session service")
    sessions: dict[str, Session] = {}
    registry_lock = threading.Lock()

    def _prune():
        now = time.monotonic()
        for sid in [s for s, sess in sessions.items()
                    if now - sess.touched > session_ttl]:
            sessions.pop(sid, None)

    def _get(sid: str) -> Session:
        with registry_lock:
            _prune()
            sess = sessions.get(sid)
            if sess is None:
                raise HTTPException(status_code=404,
                                    detail=f"unknown session {sid}")
            sess.touched = time.monotonic()
            return sess

    @app.post("/sessions")
    async def create_session(request: Request):
        data = await request.body()
        try:
            image = load_image_bytes(data)
        except FileFormatError as e:
            raise HTTPException(status_code=400, detail=str(e))
        sid = uuid.uuid4().hex
        with registry_lock:
            _prune()
            sessions[sid] = Session(image=image)
        h, w = image.shape
        return {"session_id": sid, "width": w, "height": h}

    @app.post("/sessions/{sid}/seeds")
    def set_seeds(sid: str, body: SeedsBody):
        sess = _get(sid)
        try:
            seeds = seed_spec_from_dict(body.model_dump())
            h, w = sess.image.shape
            rasterize_seeds(seeds, w, h)  # validate against this image now
        except (FileFormatError, ValueError) as e:
            raise HTTPException(status_code=400, detail=str(e))
        with sess.lock:
            sess.seeds = seeds
            sess.run = None          # any prior evolution is discarded
            sess.pinned_params = None
        return {"ok": True, "iter": 0}

    @app.post("/sessions/{sid}/run")
    def run_steps(sid: str, body: RunBody):
        sess = _get(sid)
        with sess.lock:
            if sess.seeds is None:
                raise HTTPException(status_code=409,
                                    detail="set seeds before running")
            params = body.to_params()
            if sess.run is None:
                sess.run = EvolutionRun(sess.image, sess.seeds, params)
                sess.pinned_params = params
            elif params != sess.pinned_params:
                raise HTTPException(
                    status_code=409,
                    detail="model/params changed mid-run; re-submit seeds "
                           "to reset the session")
            try:
                state = sess.run.advance(body.n_steps)
            except NumericalInstabilityError as e:
                return JSONResponse(
                    status_code=422,
                    content={"error": "numerical_instability",
                             "iteration": e.iteration,
                             "iter": sess.run.state.iteration,
                             "detail": str(e)})
            return {"iter": state.iteration, "converged": state.converged,
                    "degenerate": state.degenerate}

    @app.get("/sessions/{sid}/state")
    def get_state(sid: str):
        sess = _get(sid)
        with sess.lock:
            if sess.seeds is None:
                raise HTTPException(status_code=409,
                                    detail="no seeds submitted yet")
            if sess.run is not None:
                st = sess.run.state
                phi = st.phi
                mask = sess.run.mask()
                contours = sess.run.contours()
                iteration, converged, degenerate = (
                    st.iteration, st.converged, st.degenerate)
            else:
                h, w = sess.image.shape
                phi = rasterize_seeds(sess.seeds, w, h)
                mask = (binarize(phi) > 0) if sess.seeds.inside_sign > 0 \
                    else (binarize(phi) <= 0)
                contours = extract_contours(phi)
                iteration, converged, degenerate = 0, False, False
            try:
                c_plus, c_minus = region_means(sess.image, phi)
            except DegeneratePartitionError:
                c_plus = c_minus = None
            h, w = sess.image.shape
            return {"iter": iteration, "converged": converged,
                    "degenerate": degenerate, "width": w, "height": h,
                    "inside_sign": sess.seeds.inside_sign,
                    "c_plus": c_plus, "c_minus": c_minus,
                    "contours": [c.tolist() for c in contours],
                    "mask_png": _mask_png(mask)}

    @app.post("/sessions/{sid}/metrics")
    async def get_metrics(sid: str, request: Request):
        data = await request.body()
        sess = _get(sid)
        with sess.lock:
            if sess.seeds is None or sess.run is None:
                raise HTTPException(status_code=409,
                                    detail="run the evolution before scoring")
            try:
                truth = load_mask_bytes(data)
            except FileFormatError as e:
                raise HTTPException(status_code=400, detail=str(e))
            if truth.shape != sess.image.shape:
                raise HTTPException(
                    status_code=400,
                    detail=f"truth mask shape {truth.shape} does not match "
                           f"image shape {sess.image.shape}")
            report = evaluate(sess.run.mask(), truth,
                              wall_time=sess.run.wall_time)
            doc = report_to_dict(report,
                                 iterations=sess.run.state.iteration,
                                 converged=sess.run.state.converged)
            doc["iter"] = sess.run.state.iteration
            return doc

    if static_dir is not None:
        from fastapi.staticfiles import StaticFiles
        app.mount("/", StaticFiles(directory=static_dir, html=True),
                  name="ui")
    return app
