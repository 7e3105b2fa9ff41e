"""HTTP surface: session endpoints, panel interactions, SSE event stream."""

from __future__ import annotations

import json
from typing import Iterator, Literal

from fastapi import FastAPI, Query, Request
from fastapi.responses import JSONResponse, StreamingResponse
from pydantic import BaseModel, Field

from intentflow.core.diff import compute_diff
from intentflow.core.session import (
    AddIntent,
    AddTag,
    DeleteIntent,
    RemoveTag,
    ReviseIntent,
    SetRadio,
    SetSlider,
    ToggleKeep,
)
from intentflow.core.types import ActionKind, OutputDocument, Section
from intentflow.errors import (
    AlreadyAnnotated,
    IntentFlowError,
    NotFound,
    TurnFailed,
    TurnInFlight,
    ValidationError,
)
from intentflow.service.service import SessionService


class ChatBody(BaseModel):
    prompt: str = ""
    targeted_intent: str | None = None


class GoalEditBody(BaseModel):
    task_goal: str | None = None
    writing_domain: str | None = None
    topic: str | None = None

    def fields(self) -> dict[str, str]:
        return {k: v for k, v in self.model_dump().items() if v is not None}


class IntentAddBody(BaseModel):
    text: str


class IntentPatchBody(BaseModel):
    text: str | None = None
    kept: bool | None = None


class DimensionPatchBody(BaseModel):
    level: int | None = None
    option: str | None = None
    add_tag: str | None = None
    remove_tag: str | None = None


class RollbackBody(BaseModel):
    page: int


class AnnotateBody(BaseModel):
    kind: Literal["Add", "Delete", "Correct", "Adjust"]


class ImportBody(BaseModel):
    document: dict = Field(default_factory=dict)


def _error_response(exc: IntentFlowError) -> JSONResponse:
    if isinstance(exc, TurnInFlight):
        status = 409
    elif isinstance(exc, AlreadyAnnotated):
        status = 409
    elif isinstance(exc, TurnFailed):
        status = 502
    else:  # ValidationError, in-body NotFound, StateError, ParseError
        status = 422
    return JSONResponse(
        status_code=status,
        content={"detail": {"error": type(exc).__name__, "message": str(exc)}},
    )


def create_app(service: SessionService, ui_dir: str | None = None) -> FastAPI:
    app = FastAPI(title="intentflow", version="0.1.0")
    app.state.service = service
    if ui_dir:
        from fastapi.staticfiles import StaticFiles

        app.mount("/ui", StaticFiles(directory=ui_dir, html=True), name="ui")

    @app.exception_handler(IntentFlowError)
    async def handle_domain_error(request: Request, exc: IntentFlowError):
        return _error_response(exc)

    def _session_or_404(session_id: str):
        # Unknown session is a 404; everything else surfaces as 409/422/502.
        try:
            return service.runtime(session_id)
        except NotFound as exc:
            raise _HTTP404(str(exc)) from exc

    class _HTTP404(Exception):
        def __init__(self, message: str):
            self.message = message

    @app.exception_handler(_HTTP404)
    async def handle_404(request: Request, exc: _HTTP404):
        return JSONResponse(status_code=404, content={"detail": {"error": "NotFound", "message": exc.message}})

    # -- lifecycle ----------------------------------------------------------

    @app.get("/health")
    def health():
        return {"status": "ok", "sessions": len(service.runtimes)}

    @app.post("/sessions", status_code=201)
    def create_session(body: ImportBody | None = None):
        if body is not None and body.document:
            session = service.import_session(body.document)
        else:
            session = service.create_session()
        return {"session_id": session.session_id}

    @app.get("/sessions/{session_id}")
    def get_session(session_id: str):
        _session_or_404(session_id)
        return service.export_session(session_id)

    # -- chat -----------------------------------------------------------------

    @app.post("/sessions/{session_id}/chat")
    def chat(session_id: str, body: ChatBody):
        _session_or_404(session_id)
        result = service.chat(session_id, body.prompt, body.targeted_intent)
        return {
            "turn_id": result.action_id,
            "reply": result.decision.direct_reply,
            "invoked": result.decision.invoke,
            "new_page": result.new_page,
            "panel_changes": result.panel_changes.to_dict(),
            "link_repairs": result.link_repairs,
        }

    # -- panel edits --------------------------------------------------------------

    def _edit_response(revision, new_page):
        return {"change": revision.change, "detail": revision.detail, "new_page": new_page}

    @app.post("/sessions/{session_id}/goal")
    def edit_goal(session_id: str, body: GoalEditBody):
        _session_or_404(session_id)
        revision, new_page = service.goal_edit(session_id, body.fields())
        return _edit_response(revision, new_page)

    @app.post("/sessions/{session_id}/intents")
    def add_intent(session_id: str, body: IntentAddBody):
        _session_or_404(session_id)
        revision, new_page = service.panel_edit(session_id, AddIntent(body.text))
        return _edit_response(revision, new_page)

    @app.patch("/sessions/{session_id}/intents/{intent_id}")
    def patch_intent(session_id: str, intent_id: str, body: IntentPatchBody):
        runtime = _session_or_404(session_id)
        if (body.text is None) == (body.kept is None):
            raise ValidationError("provide exactly one of text (revise) or kept (keep toggle)")
        if body.text is not None:
            revision, new_page = service.panel_edit(session_id, ReviseIntent(intent_id, body.text))
        else:
            intent = runtime.session.intent_by_id(intent_id)
            if intent.kept == body.kept:
                return {"change": "keep_noop", "detail": {"intent_id": intent_id, "kept": intent.kept}, "new_page": None}
            revision, new_page = service.panel_edit(session_id, ToggleKeep(intent_id))
        return _edit_response(revision, new_page)

    @app.delete("/sessions/{session_id}/intents/{intent_id}")
    def delete_intent(session_id: str, intent_id: str):
        _session_or_404(session_id)
        revision, new_page = service.panel_edit(session_id, DeleteIntent(intent_id))
        return _edit_response(revision, new_page)

    @app.patch("/sessions/{session_id}/dimensions/{dimension_id}")
    def patch_dimension(session_id: str, dimension_id: str, body: DimensionPatchBody):
        _session_or_404(session_id)
        ops = [v for v in (body.level, body.option, body.add_tag, body.remove_tag) if v is not None]
        if len(ops) != 1:
            raise ValidationError("provide exactly one of level, option, add_tag, remove_tag")
        if body.level is not None:
            cmd = SetSlider(dimension_id, body.level)
        elif body.option is not None:
            cmd = SetRadio(dimension_id, body.option)
        elif body.add_tag is not None:
            cmd = AddTag(dimension_id, body.add_tag)
        else:
            cmd = RemoveTag(dimension_id, body.remove_tag)
        revision, new_page = service.panel_edit(session_id, cmd)
        return _edit_response(revision, new_page)

    # -- pages ------------------------------------------------------------------------

    @app.get("/sessions/{session_id}/pages")
    def list_pages(session_id: str):
        runtime = _session_or_404(session_id)
        return {"pages": [summary.to_dict() for summary in runtime.session.list_pages()]}

    def _page_or_404(runtime, page_number: int):
        try:
            return runtime.session.page_at(page_number)
        except NotFound as exc:
            raise _HTTP404(str(exc)) from exc

    @app.get("/sessions/{session_id}/pages/{page_number}")
    def get_page(session_id: str, page_number: int):
        runtime = _session_or_404(session_id)
        return _page_or_404(runtime, page_number).to_dict()

    @app.get("/sessions/{session_id}/pages/{page_number}/links")
    def get_links(session_id: str, page_number: int):
        runtime = _session_or_404(session_id)
        page = _page_or_404(runtime, page_number)
        return {"links": [link.to_dict() for link in page.links]}

    @app.get("/sessions/{session_id}/pages/{page_number}/diff")
    def get_diff(session_id: str, page_number: int, against: int | None = Query(default=None)):
        runtime = _session_or_404(session_id)
        page = _page_or_404(runtime, page_number)
        baseline = against if against is not None else page_number - 1
        if baseline == 0:
            old_document = OutputDocument.from_sections([Section(body="")])
        else:
            old_document = _page_or_404(runtime, baseline).document
        view = compute_diff(old_document, page.document)
        return {"against": baseline, **view.to_dict()}

    @app.post("/sessions/{session_id}/rollback")
    def rollback(session_id: str, body: RollbackBody):
        runtime = _session_or_404(session_id)
        if not 1 <= body.page <= len(runtime.session.pages):
            raise _HTTP404(f"page {body.page} does not exist")
        new_page = service.rollback(session_id, body.page)
        return {"new_page": new_page}

    # -- actions -------------------------------------------------------------------------

    @app.get("/sessions/{session_id}/actions")
    def list_actions(session_id: str):
        runtime = _session_or_404(session_id)
        return {"actions": [record.to_dict() for record in runtime.session.action_log]}

    @app.post("/sessions/{session_id}/actions/{action_id}/annotate")
    def annotate(session_id: str, action_id: str, body: AnnotateBody):
        runtime = _session_or_404(session_id)
        try:
            runtime.session.action_by_id(action_id)
        except NotFound as exc:
            raise _HTTP404(str(exc)) from exc
        service.annotate(session_id, action_id, ActionKind(body.kind))
        return {"action_id": action_id, "kind": body.kind}

    # -- event stream ----------------------------------------------------------------------

    @app.get("/sessions/{session_id}/events")
    def events(
        session_id: str,
        request: Request,
        after: int | None = Query(default=None),
        mode: str = Query(default="live"),
    ):
        runtime = _session_or_404(session_id)
        last_id = request.headers.get("Last-Event-ID")
        start = after if after is not None else int(last_id) if last_id else 0

        def poll() -> Iterator[str]:
            for envelope in runtime.bus.since(start):
                yield envelope.sse()

        def live() -> Iterator[str]:
            cursor = start
            while True:
                batch = runtime.bus.wait_since(cursor, timeout=15.0)
                if not batch:
                    yield ": keep-alive\n\n"
                    continue
                for envelope in batch:
                    cursor = envelope.seq
                    yield envelope.sse()

        generator = poll() if mode == "poll" else live()
        return StreamingResponse(generator, media_type="text/event-stream")

    return app


def sse_decode(body: str) -> list[dict]:
    """Parse an SSE body into event dicts (test/client helper)."""
    events = []
    for block in body.split("\n\n"):
        data_lines = [line[6:] for line in block.splitlines() if line.startswith("data: ")]
        if data_lines:
            events.append(json.loads("\n".join(data_lines)))
    return events
