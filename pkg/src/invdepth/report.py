"""JSON reports.

Reports are deterministic: keys are sorted and every list is built in a
fixed order, so the same scenario and seed give byte-identical output.
Wall-clock timings are the one nondeterministic quantity and are only
included on request.  Degrees are converted to the requested grading when
serialized; all cutoffs and degrees in a report use the same convention.
"""

from __future__ import annotations

import json
from typing import Any

from .depth import DepthReport
from .polynomial import GradingConvention, Polynomial

REPORT_FORMAT = "invdepth-report"
REPORT_VERSION = 1


def polynomial_json(f: Polynomial) -> dict[str, Any]:
    return {"text": repr(f), "terms": [[list(m), c] for m, c in f.sorted_terms()]}


def depth_json(R: DepthReport, grading: GradingConvention) -> dict[str, Any]:
    g = grading.display
    return {
        "depth": R.depth,
        "agreement": R.agreement,
        "cutoff": g(R.cutoff),
        "confirmed_at": None if R.confirmed_at is None else g(R.confirmed_at),
        "seed": R.seed,
        "hsop": [{"degree": g(f.degree), "polynomial": repr(f)} for f in R.koszul.hsop],
        "regular_sequence": {
            "method": R.certificate.method,
            "verified_up_to": g(R.certificate.verified_up_to),
            "elements": [{"degree": g(f.degree), "polynomial": repr(f)} for f in R.certificate.sequence],
        },
        "koszul": {
            "top_nonvanishing": R.koszul.top_nonvanishing,
            "nonzero": [
                {"index": i, "degree": g(d), "dimension": dim} for (i, d), dim in R.koszul.nonzero().items()
            ],
        },
    }


def hilbert_json(coeffs: list[int], grading: GradingConvention) -> dict[str, Any]:
    return {"degrees": [grading.display(d) for d in range(len(coeffs))], "dimensions": list(coeffs)}


def verdict_json(v, grading: GradingConvention) -> dict[str, Any]:
    """A theorem verdict with its cutoffs and witness degree in the requested grading."""
    out = v.to_dict()
    out["cutoffs"] = {k: grading.display(c) for k, c in out["cutoffs"].items()}
    if "degree" in out["witness"]:
        out["witness"] = dict(out["witness"], degree=grading.display(out["witness"]["degree"]))
    return out


def envelope(scenario: dict[str, Any], results: dict[str, Any], status: str, timings: dict[str, float] | None = None) -> dict[str, Any]:
    from . import __version__

    out = {
        "format": REPORT_FORMAT,
        "version": REPORT_VERSION,
        "tool": {"name": "invdepth", "version": __version__},
        "scenario": scenario,
        "results": results,
        "status": status,
    }
    if timings is not None:
        out["timings"] = {k: round(v, 6) for k, v in timings.items()}
    return out


def dumps(report: dict[str, Any]) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"
