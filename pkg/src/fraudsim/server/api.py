"""Versioned HTTP/JSON surface over the platform service."""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from pathlib import Path
from pydantic import BaseModel, Field

from .service import ApiError, PlatformService


class CreateSessionRequest(BaseModel):
    age: int = Field(ge=1, le=129)


class EventRecord(BaseModel):
    kind: str
    tick: int | None = None
    wall_time: float = 0.0
    payload: dict = Field(default_factory=dict)


class EventBatch(BaseModel):
    events: list[EventRecord]


class TradeRequest(BaseModel):
    stock_id: str
    side: str
    shares: int


class ReportFraudRequest(BaseModel):
    stock_id: str


class AdvanceRequest(BaseModel):
    ticks: int = 1


class TrainRequest(BaseModel):
    seed: int | None = None
    cohort_seed: int | None = None


def create_app(service: PlatformService, static_dir: str | None = None) -> FastAPI:
    app = FastAPI(title="fraudsim", version="0.1.0")

    @app.exception_handler(ApiError)
    async def api_error_handler(_: Request, exc: ApiError):
        return JSONResponse(
            status_code=exc.status,
            content={"error": {"code": exc.code, "message": exc.message}},
        )

    @app.get("/v1/health")
    def health():
        return {"ok": True, "scenario": service.scenario.name, "tick": service.current_tick}

    @app.post("/v1/sessions", status_code=201)
    def create_session(req: CreateSessionRequest):
        return service.create_session(req.age)

    @app.get("/v1/market")
    def market():
        return service.market_view()

    @app.get("/v1/stocks/{stock_id}")
    def stock(stock_id: str):
        return service.stock_view(stock_id)

    @app.get("/v1/news")
    def news():
        return service.news_view()

    @app.get("/v1/chat")
    def chat():
        return service.chat_view()

    @app.post("/v1/sessions/{session_id}/events")
    def post_events(session_id: str, batch: EventBatch):
        accepted = service.append_events(session_id, [e.model_dump() for e in batch.events])
        return {"accepted": accepted}

    @app.post("/v1/sessions/{session_id}/trades")
    def post_trade(session_id: str, req: TradeRequest):
        return service.trade(session_id, req.stock_id, req.side, req.shares)

    @app.post("/v1/sessions/{session_id}/report-fraud")
    def post_report_fraud(session_id: str, req: ReportFraudRequest):
        return service.report_fraud(session_id, req.stock_id)

    @app.get("/v1/sessions/{session_id}/portfolio")
    def get_portfolio(session_id: str):
        return service.portfolio_view(session_id)

    @app.get("/v1/sessions/{session_id}/analytics")
    def get_analytics(session_id: str):
        return service.session_analytics(session_id)

    @app.get("/v1/sessions/{session_id}/feedback")
    def get_feedback(session_id: str):
        return service.feedback(session_id)

    @app.post("/v1/admin/train")
    def admin_train(req: TrainRequest):
        return service.train(seed=req.seed, cohort_seed=req.cohort_seed)

    @app.get("/v1/admin/report")
    def admin_report():
        return service.admin_report()

    @app.post("/v1/admin/advance")
    def admin_advance(req: AdvanceRequest):
        return {"current_tick": service.advance(req.ticks)}

    if static_dir and Path(static_dir).is_dir():
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="ui")

    return app
