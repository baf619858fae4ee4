"""Fine-tuning and inference HTTP service for controllable lexical
simplification models."""

from .serialize import build_source, mark_word, render_value
from .server import create_app, serve
from .train import ServiceError, TrainSpec, load_checkpoint, train

__version__ = "0.1.0"

__all__ = [
    "ServiceError",
    "TrainSpec",
    "build_source",
    "create_app",
    "load_checkpoint",
    "mark_word",
    "render_value",
    "serve",
    "train",
]
