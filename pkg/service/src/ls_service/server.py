"""HTTP inference service implementing the generation wire protocol.

POST /generate takes ``{"sentence", "complex_word", "word_index",
"control": {"cr", "wl", "wr"}, "num_return"}``, builds the control-token
source string, runs beam search with beam size equal to num_return, and
answers ``{"candidates": [{"text", "score"}, ...], "model"}`` with the
full generated sequences. GET /health reports readiness.

Malformed requests get 400 with a reason; generation failures get 500.
Model invocation is serialized behind an internal lock.
"""

import argparse
import logging
import threading

import torch
from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from .serialize import build_source
from .train import load_checkpoint

logger = logging.getLogger(__name__)


class ControlBody(BaseModel):
    cr: float
    wl: float
    wr: float


class GenerateBody(BaseModel):
    sentence: str
    complex_word: str
    word_index: int = Field(ge=0)
    control: ControlBody
    num_return: int = Field(default=15, ge=1, le=100)


def create_app(checkpoint) -> FastAPI:
    model, tokenizer, model_name, spec = load_checkpoint(checkpoint)
    max_length = int(spec.get("max_length", 128))
    lock = threading.Lock()
    app = FastAPI(title="ls-service", version="0.1.0")

    @app.exception_handler(RequestValidationError)
    async def validation_to_400(request: Request, exc: RequestValidationError):
        return JSONResponse(status_code=400, content={"detail": exc.errors()})

    @app.get("/health")
    def health():
        return {"status": "ok", "model": model_name}

    @app.post("/generate")
    def generate(body: GenerateBody):
        try:
            source = build_source(
                body.control.cr, body.control.wl, body.control.wr,
                body.sentence, body.word_index,
            )
        except ValueError as exc:
            return JSONResponse(status_code=400, content={"detail": str(exc)})
        try:
            input_ids = torch.tensor(
                [tokenizer.encode(source, max_length=max_length)]
            )
            with lock, torch.no_grad():
                output = model.generate(
                    input_ids,
                    num_beams=body.num_return,
                    num_return_sequences=body.num_return,
                    do_sample=False,
                    max_new_tokens=max_length,
                    return_dict_in_generate=True,
                    output_scores=True,
                )
            candidates = [
                {
                    "text": tokenizer.decode(sequence.tolist()),
                    "score": float(score),
                }
                for sequence, score in zip(output.sequences, output.sequences_scores)
            ]
        except Exception as exc:  # surfaced as a model failure
            logger.exception("generation failed")
            return JSONResponse(status_code=500, content={"detail": f"generation failed: {exc}"})
        return {"candidates": candidates, "model": model_name}

    return app


def serve(checkpoint, port: int = 8000, host: str = "127.0.0.1") -> None:
    import uvicorn

    uvicorn.run(create_app(checkpoint), host=host, port=port)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="ls-service-serve",
        description="Serve a trained checkpoint over the generation wire protocol.",
    )
    parser.add_argument("--checkpoint", required=True, help="checkpoint directory")
    parser.add_argument("--port", type=int, default=8000)
    parser.add_argument("--host", default="127.0.0.1")
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO)
    serve(args.checkpoint, port=args.port, host=args.host)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
