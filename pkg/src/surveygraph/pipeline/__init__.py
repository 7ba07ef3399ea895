"""Batch orchestration of the import pipeline."""

from .editscript import apply_script
from .resolutions import ResolutionLog
from .workspace import StatsReport, Workspace

__all__ = ["ResolutionLog", "StatsReport", "Workspace", "apply_script"]
