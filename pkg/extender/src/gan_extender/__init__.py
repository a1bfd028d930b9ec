"""Repair-protocol adapter backed by a rightward image-extension model."""

from .errors import ModelError, ProtocolError
from .fallback import build_fallback_model
from .model import MODEL_ENV, ExtenderConfig, ExtensionModel, resolve_model_source
from .protocol import handle_request, load_request
from .server import make_server, serve

__version__ = "0.1.0"

__all__ = [
    "MODEL_ENV",
    "ExtenderConfig",
    "ExtensionModel",
    "ModelError",
    "ProtocolError",
    "build_fallback_model",
    "handle_request",
    "load_request",
    "make_server",
    "resolve_model_source",
    "serve",
]
