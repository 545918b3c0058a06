"""Which-and-when queries over collections of univariate time series."""

import json as _json

from ._core import (
    Dataset,
    Error,
    aggregate_series,
    derive,
    ego_series,
    load_dataset,
    net_change,
    parse_wide_csv,
    pct_change,
    rank_matrix,
    rank_threshold_curve,
    segment_labels,
    windowed_variance,
)
from ._core import run_query_json as _run_query_json

__all__ = [
    "Dataset",
    "Error",
    "aggregate_series",
    "derive",
    "ego_series",
    "load_dataset",
    "net_change",
    "parse_wide_csv",
    "pct_change",
    "rank_matrix",
    "rank_threshold_curve",
    "run_query",
    "segment_labels",
    "windowed_variance",
]


def run_query(dataset, request):
    """Run the full pipeline; `request` and the result use the HTTP API's JSON shape."""
    return _json.loads(_run_query_json(dataset, _json.dumps(request)))
