"""Lifespan-restricted ground tree rewriting: parsers, searches and encodings."""

from ._core import (
    Error,
    ParseError,
    ResetNet,
    System,
    SystemFile,
    Tree,
    Verdict,
    WitnessStep,
    catalog,
    cover,
    cover_encoded,
    parse_net,
    parse_system,
    reach,
    reach_file,
    summary_route,
)

__all__ = [
    "Error",
    "ParseError",
    "ResetNet",
    "System",
    "SystemFile",
    "Tree",
    "Verdict",
    "WitnessStep",
    "catalog",
    "cover",
    "cover_encoded",
    "parse_net",
    "parse_system",
    "reach",
    "reach_file",
    "summary_route",
]
