"""FastAPI service exposing environments as HTTP sessions."""

from .app import create_app

__all__ = ["create_app"]
