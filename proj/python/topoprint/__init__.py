"""Topological printability analysis of point-cloud models."""

import json

from ._core import (
    BUNDLE_VERSION,
    BudgetExceeded,
    ConfigError,
    ParseError,
    TopoprintError,
    ValidationError,
    __version__,
    analyze,
    analyze_file,
    assign_points,
    build_cover,
    connected_components,
    densify_mesh,
    fill_empty_space,
    h1_intervals,
    holes_at_scale,
    parse_ply,
    parse_stl,
    scale_to_height,
    validate_bundle,
)


def load_bundle(text):
    """Validate a bundle JSON string and return it as a dict."""
    validate_bundle(text)
    return json.loads(text)
