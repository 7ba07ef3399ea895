"""Persistent scholarly knowledge graph: papers, contributions, comparisons."""

from .export import GraphStats, export_json, export_ntriples, render_comparison, stats
from .model import (CLASS_COMPARISON, CLASS_CONTRIBUTION, CLASS_PAPER,
                    Comparison, Literal, Predicate, Resource, Statement)
from .settings import SettingsEntry, load_settings, parse_settings
from .store import GraphStore

__all__ = [
    "CLASS_COMPARISON",
    "CLASS_CONTRIBUTION",
    "CLASS_PAPER",
    "Comparison",
    "GraphStats",
    "GraphStore",
    "Literal",
    "Predicate",
    "Resource",
    "SettingsEntry",
    "Statement",
    "export_json",
    "export_ntriples",
    "load_settings",
    "parse_settings",
    "render_comparison",
    "stats",
]
