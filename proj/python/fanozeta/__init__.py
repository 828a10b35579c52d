"""Zeta functions of cubic threefolds and their Fano surfaces over finite fields."""

import json

from . import _core
from ._core import (
    FanoZetaError,
    Field,
    InputError,
    InvariantError,
    NoRationalLineError,
    ResourceError,
    artin_tate,
    cyclotomic_poly,
    feasible_last_trace,
    geometric_picard,
    is_rational_square,
    nr_cubic,
    nr_fano,
    p1_from_traces,
    picard_number,
    power_sums,
    roots_on_circle,
    wedge_square,
)

__all__ = [
    "FanoZetaError",
    "Field",
    "InputError",
    "InvariantError",
    "NoRationalLineError",
    "ResourceError",
    "artin_tate",
    "cyclotomic_poly",
    "feasible_last_trace",
    "find_line",
    "geometric_picard",
    "is_rational_square",
    "job_hash",
    "nr_cubic",
    "nr_fano",
    "p1_from_traces",
    "picard_number",
    "power_sums",
    "preset",
    "roots_on_circle",
    "run",
    "wedge_square",
]


def preset(name):
    """Job description of a named preset as a dict."""
    return json.loads(_core.preset(name))


def _job_text(job):
    return job if isinstance(job, str) else json.dumps(job)


def job_hash(job):
    return _core.job_hash(_job_text(job))


def run(job, *, scan_last_trace=False, **overrides):
    """Runs a job (dict, JSON text or preset name) and returns the report dict."""
    if isinstance(job, str) and not job.lstrip().startswith("{"):
        job = preset(job)
    if overrides:
        job = dict(json.loads(_job_text(job)), **overrides)
    return json.loads(_core.run(_job_text(job), scan_last_trace))


def find_line(job):
    """(q, [[...], [...]]) for the first rational line, searching from scratch."""
    if isinstance(job, str) and not job.lstrip().startswith("{"):
        job = preset(job)
    return _core.find_line(_job_text(job))
