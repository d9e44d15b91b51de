"""Cocycle invariants of virtual links from extended Gauss codes."""

__version__ = "0.1.0"
SCHEMA_VERSION = 1

from .egc import ExtendedGaussCode, parse_egc, serialize_egc  # noqa: E402,F401
