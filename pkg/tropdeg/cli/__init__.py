"""
Command-line surface: model files, command dispatch and report rendering.

Usage:
    tropdeg hilbert --model models/anti_diagonal_segment.json --k-max 4
"""

from .commands import COMMANDS, RunOptions, merge_options, run
from .main import main
from .model import Model, parse_model, parse_model_text, serialize_model
from .report import Report

__all__ = [
    "COMMANDS",
    "Model",
    "Report",
    "RunOptions",
    "main",
    "merge_options",
    "parse_model",
    "parse_model_text",
    "run",
    "serialize_model",
]
