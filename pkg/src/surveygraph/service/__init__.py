"""HTTP import sessions for the companion web UI."""

from .app import create_app
from .sessions import ImportSession, SessionRegistry, Step

__all__ = ["ImportSession", "SessionRegistry", "Step", "create_app"]
