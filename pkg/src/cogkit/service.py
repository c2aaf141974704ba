"""HTTP episode service: deterministic, stateless JSON endpoints.

Every response is a pure function of the request (plus the server's default
seed), so identical requests produce byte-identical bodies and restarting
the server changes nothing.
"""

from __future__ import annotations

import base64
from typing import Literal

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse, PlainTextResponse
from pydantic import BaseModel, Field

from . import __version__
from .catalog import CATALOG_VERSION, load_catalog
from .episodes import episode_for
from .errors import UnknownTaskError
from .dataset import episode_to_record
from .png import encode_png
from .render import rasterize_frame
from .scoring import ScoreReport, chance_level, score_stream
from .types import GenerationConfig, ResponseValue

DEFAULT_PAGE_LIMIT = 1024


class ConfigModel(BaseModel):
    frames: int = Field(default=4, ge=1, le=64)
    max_memory: int = Field(default=3, ge=0, le=64)
    max_distractors: int = Field(default=1, ge=0, le=64)
    canvas: int = Field(default=112, ge=16, le=1024)
    seed: int | None = Field(default=None, ge=0, lt=2**64)

    def to_config(self, default_seed: int) -> GenerationConfig:
        return GenerationConfig(
            frames=self.frames,
            max_memory=self.max_memory,
            max_distractors=self.max_distractors,
            canvas=self.canvas,
            seed=self.seed if self.seed is not None else default_seed,
        )


class EpisodeRequest(BaseModel):
    config: ConfigModel = Field(default_factory=ConfigModel)
    tasks: list[str] | Literal["all"] = "all"
    count: int = Field(default=1, ge=1)
    start_index: int = Field(default=0, ge=0)
    encoding: Literal["symbolic", "base64-png"] = "symbolic"


class AnswerModel(BaseModel):
    task: str
    index: int = Field(ge=0)
    frame: int = Field(ge=0)
    response: dict


class ScoreRequest(BaseModel):
    config: ConfigModel = Field(default_factory=ConfigModel)
    answers: list[AnswerModel]


def create_app(default_seed: int = 0,
               page_limit: int = DEFAULT_PAGE_LIMIT) -> FastAPI:
    app = FastAPI(title="cogkit episode service", version=__version__)
    catalog = load_catalog()

    @app.exception_handler(RequestValidationError)
    async def malformed(request: Request, exc: RequestValidationError):
        return JSONResponse(status_code=400,
                            content={"error": "malformed request",
                                     "detail": exc.errors()})

    @app.get("/v1/healthz", response_class=PlainTextResponse)
    def healthz() -> str:
        return "ok"

    @app.get("/v1/tasks")
    def tasks() -> dict:
        listing = []
        for name, doc in catalog.items():
            listing.append({
                "name": name,
                "family": doc.family,
                "generator": doc.generator,
                "nodes": len(doc.graph),
                "chance_level": chance_level(name),
            })
        return {"catalog_version": CATALOG_VERSION, "tasks": listing}

    @app.post("/v1/episodes")
    def episodes(request: EpisodeRequest):
        try:
            names = (list(catalog) if request.tasks == "all"
                     else list(request.tasks))
            for name in names:
                if name not in catalog:
                    raise UnknownTaskError(name)
        except UnknownTaskError as exc:
            return JSONResponse(status_code=404,
                                content={"error": f"unknown task {exc.args[0]!r}"})
        total = request.count * len(names)
        if total > page_limit:
            return JSONResponse(
                status_code=413,
                content={"error": f"page of {total} episodes exceeds "
                                  f"limit {page_limit}"})
        config = request.config.to_config(default_seed)
        out = []
        for name in names:
            for index in range(request.start_index,
                               request.start_index + request.count):
                episode = episode_for(name, config, index)
                record = episode_to_record(episode)
                if request.encoding == "base64-png":
                    record["images_b64"] = [
                        base64.b64encode(
                            encode_png(rasterize_frame(frame, config.canvas))
                        ).decode("ascii")
                        for frame in episode.frames
                    ]
                out.append(record)
        return {
            "catalog_version": CATALOG_VERSION,
            "config": config.to_obj(),
            "start_index": request.start_index,
            "count": request.count,
            "episodes": out,
        }

    @app.post("/v1/score")
    def score(request: ScoreRequest):
        config = request.config.to_config(default_seed)
        episode_cache: dict[tuple[str, int], list] = {}
        pairs = []
        try:
            for answer in request.answers:
                key = (answer.task, answer.index)
                if key not in episode_cache:
                    if answer.task not in catalog:
                        raise UnknownTaskError(answer.task)
                    episode = episode_for(answer.task, config, answer.index)
                    episode_cache[key] = episode.targets
                targets = episode_cache[key]
                if not 0 <= answer.frame < len(targets):
                    return JSONResponse(
                        status_code=400,
                        content={"error": f"frame {answer.frame} outside "
                                          f"0..{len(targets) - 1}"})
                pred = ResponseValue.from_obj(answer.response)
                pairs.append((answer.task, pred, targets[answer.frame]))
        except UnknownTaskError as exc:
            return JSONResponse(status_code=404,
                                content={"error": f"unknown task {exc.args[0]!r}"})
        except (KeyError, ValueError) as exc:
            return JSONResponse(status_code=400,
                                content={"error": f"bad answer record: {exc}"})
        report: ScoreReport = score_stream(pairs)
        return report.to_obj()

    return app
