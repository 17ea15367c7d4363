"""Back end of the decision-study prototype: hands out sampled session
offers, records each decision append-only, and exports the record file."""

from __future__ import annotations

import json
import os
import threading
import time
import uuid
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from fastapi import FastAPI, HTTPException, Query
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import PlainTextResponse
from pydantic import BaseModel

from .market import BuyerChoice, DistributionSpec, ResellerChoice
from .records import (BuyerRecord, RecordFormatError, ResellerRecord,
                      format_record, parse_records)

BUYER_APPS = ("IoT Sensing Analytics", "Mobile Gaming", "Augmented Reality",
              "Data Analytics on Device", "Smart Home IoT Analytics")
RESELLER_APPS = ("IoT Sensing Analytics", "Distributed AI",
                 "Predictive Maintence", "Remote Monitoring", "Industrial IoT",
                 "Augmented Reality Display")

BUYER_CHOICES = tuple(c.value for c in BuyerChoice)
RESELLER_CHOICES = tuple(c.value for c in ResellerChoice)


class UnknownSessionError(KeyError):
    pass


class ConsumedSessionError(RuntimeError):
    pass


class InvalidChoiceError(ValueError):
    pass


class StorageError(OSError):
    pass


def _dist_from_json(obj):
    if isinstance(obj, str):
        obj = {"kind": obj}
    kind = obj.get("kind", "uniform")
    if kind == "beta":
        return DistributionSpec("beta", float(obj.get("alpha", 2.0)),
                                float(obj.get("beta", 2.0)))
    if kind == "degenerate":
        return DistributionSpec.degenerate(float(obj.get("value", 1.0)))
    return DistributionSpec.uniform01()


@dataclass(frozen=True)
class StudyConfig:
    """Active study parameters; defaults reproduce the deployed study."""

    q_o: float = 0.6
    q_s: float = 0.7
    p_o: float = 0.15
    p_r: float = 0.2
    delta: float = 0.2
    buyer_apps: tuple = BUYER_APPS
    reseller_apps: tuple = RESELLER_APPS
    dist_u: DistributionSpec = DistributionSpec.uniform01()
    dist_g: DistributionSpec = DistributionSpec.uniform01()
    dist_usage: DistributionSpec = DistributionSpec.uniform01()
    storage: str = "records.txt"
    show_private_values: bool = True  # prototype mode: u and g are displayed
    port: int = 8000

    def __post_init__(self):
        if self.q_o <= 0 or self.q_s < 0:
            raise ValueError("invalid supplies")
        if min(self.p_o, self.p_r) < 0 or not 0 <= self.delta <= 1:
            raise ValueError("invalid prices or commission")
        if not self.buyer_apps or not self.reseller_apps:
            raise ValueError("app lists must be non-empty")

    @classmethod
    def from_file(cls, path) -> "StudyConfig":
        with open(path, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
        kwargs = {}
        for key in ("q_o", "q_s", "p_o", "p_r", "delta"):
            if key in raw:
                kwargs[key] = float(raw[key])
        for key in ("buyer_apps", "reseller_apps"):
            if key in raw:
                kwargs[key] = tuple(raw[key])
        for key in ("dist_u", "dist_g", "dist_usage"):
            if key in raw:
                kwargs[key] = _dist_from_json(raw[key])
        if "storage" in raw:
            kwargs["storage"] = str(raw["storage"])
        if "show_private_values" in raw:
            kwargs["show_private_values"] = bool(raw["show_private_values"])
        if "port" in raw:
            kwargs["port"] = int(raw["port"])
        return cls(**kwargs)


@dataclass(frozen=True)
class SessionOffer:
    role: str
    session_id: str
    app_type: str
    usage: float
    u: Optional[float]
    g: Optional[float]
    market: dict
    payoffs: dict

    def to_payload(self, show_private: bool = True) -> dict:
        out = {"role": self.role, "session_id": self.session_id,
               "app_type": self.app_type, "usage": self.usage,
               "market": dict(self.market), "payoffs": dict(self.payoffs)}
        if show_private:
            if self.u is not None:
                out["u"] = self.u
            if self.g is not None:
                out["g"] = self.g
        return out


@dataclass
class _Session:
    offer: SessionOffer
    consumed: bool = False


class StudyService:
    """Session issuing and append-only decision recording.

    A single lock serializes session-state changes and file appends, so
    record lines never interleave; exports re-read the file and see only
    completed lines.
    """

    def __init__(self, config: StudyConfig, seed: Optional[int] = None):
        self.config = config
        self._rng = np.random.default_rng(seed)
        self._sessions: dict = {}
        self._lock = threading.Lock()
        self._probe_storage()

    def _probe_storage(self):
        try:
            with open(self.config.storage, "a", encoding="utf-8"):
                pass
        except OSError as exc:
            raise StorageError(f"storage path not writable: {exc}") from exc

    def open_session(self, role: str) -> SessionOffer:
        cfg = self.config
        if role == "buyer":
            app = str(self._rng.choice(cfg.buyer_apps))
            usage = round(float(cfg.dist_usage.sample(self._rng, 1)[0]), 6)
            u = round(float(cfg.dist_u.sample(self._rng, 1)[0]), 6)
            market = {"q_o": cfg.q_o, "q_s": cfg.q_s,
                      "p_o": cfg.p_o, "p_r": cfg.p_r}
            payoffs = {"on_demand": u * cfg.q_o - cfg.p_o,
                       "sharing": u * cfg.q_s - cfg.p_r,
                       "none": 0.0}
            offer = SessionOffer("buyer", uuid.uuid4().hex, app, usage, u,
                                 None, market, payoffs)
        elif role == "reseller":
            app = str(self._rng.choice(cfg.reseller_apps))
            usage = round(float(cfg.dist_usage.sample(self._rng, 1)[0]), 6)
            g = round(float(cfg.dist_g.sample(self._rng, 1)[0]), 6)
            market = {"p_r": cfg.p_r, "delta": cfg.delta}
            payoffs = {"sell": (1.0 - cfg.delta) * cfg.p_r - g, "no": 0.0}
            offer = SessionOffer("reseller", uuid.uuid4().hex, app, usage,
                                 None, g, market, payoffs)
        else:
            raise ValueError(f"unknown role {role!r}")
        with self._lock:
            self._sessions[offer.session_id] = _Session(offer)
        return offer

    def submit_decision(self, session_id: str, choice: str) -> dict:
        with self._lock:
            sess = self._sessions.get(session_id)
            if sess is None:
                raise UnknownSessionError(session_id)
            if sess.consumed:
                raise ConsumedSessionError(session_id)
            offer = sess.offer
            if offer.role == "buyer":
                if choice not in BUYER_CHOICES:
                    raise InvalidChoiceError(choice)
                rec = BuyerRecord(offer.usage, offer.u,
                                  offer.market["q_o"], offer.market["q_s"],
                                  offer.market["p_o"], offer.market["p_r"],
                                  BuyerChoice(choice), int(time.time()))
            else:
                if choice not in RESELLER_CHOICES:
                    raise InvalidChoiceError(choice)
                rec = ResellerRecord(offer.usage, offer.g,
                                     offer.market["p_r"],
                                     offer.market["delta"], offer.app_type,
                                     ResellerChoice(choice), int(time.time()))
            try:
                with open(self.config.storage, "a", encoding="utf-8") as fh:
                    fh.write(format_record(rec) + "\n")
                    fh.flush()
            except OSError as exc:
                raise StorageError(str(exc)) from exc
            sess.consumed = True  # only after a durable write
        return {"session_id": session_id, "recorded": True, "choice": choice}

    def export_records(self, role: Optional[str] = None,
                       t_from: Optional[int] = None,
                       t_to: Optional[int] = None) -> list:
        if role not in (None, "buyer", "reseller"):
            raise ValueError(f"unknown role {role!r}")
        if not os.path.exists(self.config.storage):
            return []
        try:
            with open(self.config.storage, "r", encoding="utf-8") as fh:
                recs = parse_records(fh.read())
        except OSError as exc:
            raise StorageError(str(exc)) from exc
        want = {"buyer": BuyerRecord, "reseller": ResellerRecord}.get(role)
        out = []
        for r in recs:
            if want is not None and not isinstance(r, want):
                continue
            if t_from is not None and r.timestamp < t_from:
                continue
            if t_to is not None and r.timestamp > t_to:
                continue
            out.append(r)
        return out


class DecisionBody(BaseModel):
    session_id: str
    choice: str


def create_app(service: StudyService) -> FastAPI:
    """HTTP facade: JSON bodies, record lines as plain text on export."""
    app = FastAPI(title="edge market study service")
    app.add_middleware(CORSMiddleware, allow_origins=["*"],
                       allow_methods=["*"], allow_headers=["*"])

    @app.get("/health")
    def health():
        return {"status": "ok"}

    @app.get("/session/{role}")
    def session(role: str):
        try:
            offer = service.open_session(role)
        except ValueError as exc:
            raise HTTPException(404, detail=str(exc)) from exc
        return offer.to_payload(service.config.show_private_values)

    @app.post("/decision")
    def decision(body: DecisionBody):
        try:
            return service.submit_decision(body.session_id, body.choice)
        except UnknownSessionError as exc:
            raise HTTPException(404, detail="unknown session") from exc
        except ConsumedSessionError as exc:
            raise HTTPException(409, detail="session already consumed") from exc
        except InvalidChoiceError as exc:
            raise HTTPException(400, detail=f"invalid choice {exc}") from exc
        except StorageError as exc:
            raise HTTPException(500, detail=str(exc)) from exc

    @app.get("/export", response_class=PlainTextResponse)
    def export(role: Optional[str] = None,
               t_from: Optional[int] = Query(None, alias="from"),
               t_to: Optional[int] = Query(None, alias="to")):
        try:
            recs = service.export_records(role, t_from, t_to)
        except ValueError as exc:
            raise HTTPException(400, detail=str(exc)) from exc
        except (StorageError, RecordFormatError) as exc:
            raise HTTPException(500, detail=str(exc)) from exc
        if not recs:
            return ""
        return "\n".join(format_record(r) for r in recs) + "\n"

    return app
