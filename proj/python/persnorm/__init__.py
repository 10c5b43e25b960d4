"""Persistence norms of planar point clouds."""

from ._core import (
    Error,
    InputError,
    PersistenceDiagram,
    PersistenceNorms,
    PersistencePair,
    band_width,
    diagram,
    gen_normal,
    load_tsv,
    norms,
    summarize,
)

__all__ = [
    "Error",
    "InputError",
    "PersistenceDiagram",
    "PersistenceNorms",
    "PersistencePair",
    "band_width",
    "diagram",
    "gen_normal",
    "load_tsv",
    "norms",
    "summarize",
]
