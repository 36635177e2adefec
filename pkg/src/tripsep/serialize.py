"""JSON and CSV encodings for states, series and reports.

Numeric results are written as decimal strings together with the number of
significant digits used, so reports are byte-stable across runs.  State
files are the exception: their parameters are JSON numbers with exactly 17
significant digits, which round-trips every float bit for bit.
"""
from __future__ import annotations

import csv
import io
import json
from fractions import Fraction

import mpmath

from . import _arith
from .errors import DomainError
from .moments import EXACT, MomentSeries
from .states import (
    GaussianPureState,
    make_ghzw_state,
    make_proposition_state,
    make_xi_state,
)

DEFAULT_DIGITS = 50
MIN_DIGITS = 30


def decimal(x, digits: int = DEFAULT_DIGITS) -> str:
    """Decimal text of ``x`` with ``digits`` significant digits."""
    if isinstance(x, float):
        return format(x, ".17g")
    if isinstance(x, bool):
        raise TypeError("boolean is not numeric")
    with mpmath.workdps(max(digits, _arith.WORKING_DPS) + 10):
        return mpmath.nstr(_arith.to_mpf(x), digits)


def _num17(x) -> str:
    return format(float(x), ".16e")


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


# -- states -------------------------------------------------------------------

def state_to_json(state: GaussianPureState) -> str:
    """``{"kind": ..., "xi"|"a"|"A": ...}`` with 17-significant-digit numbers."""
    kind = state.kind
    if kind == "xi":
        body = f'"kind": "xi", "xi": {_num17(state.param("xi"))}'
    elif kind == "ghzw":
        body = f'"kind": "ghzw", "a": {_num17(state.param("a"))}'
    elif kind == "proposition":
        body = '"kind": "proposition"'
    else:
        rows = ", ".join("[" + ", ".join(_num17(v) for v in row) + "]" for row in state.entries)
        body = f'"kind": "raw", "A": [{rows}]'
    return "{" + body + "}\n"


def state_from_dict(d: dict) -> GaussianPureState:
    kind = d.get("kind")
    if kind == "xi":
        return make_xi_state(d["xi"])
    if kind == "ghzw":
        return make_ghzw_state(d["a"])[0]
    if kind == "proposition":
        return make_proposition_state()
    if kind == "raw":
        return GaussianPureState.from_matrix(d["A"])
    raise DomainError(f"unknown state kind {kind!r}")


def state_from_json(text: str) -> GaussianPureState:
    try:
        d = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DomainError(f"invalid state file: {exc}") from exc
    if not isinstance(d, dict):
        raise DomainError("state file must hold a JSON object")
    return state_from_dict(d)


# -- series -------------------------------------------------------------------

def series_to_dict(series: MomentSeries, digits: int = DEFAULT_DIGITS) -> dict:
    d = {
        "schema": "tripsep.series/1",
        "m": list(range(len(series))),
        "value_decimal": [decimal(v, digits) for v in series.values],
        "source": series.source,
        "arithmetic_mode": series.arithmetic_mode,
        "precision_digits": digits,
    }
    if series.arithmetic_mode == EXACT:
        d["value_rational"] = [f"{Fraction(v).numerator}/{Fraction(v).denominator}" for v in series.values]
    return d


def series_to_json(series: MomentSeries, digits: int = DEFAULT_DIGITS) -> str:
    return _dumps(series_to_dict(series, digits))


def series_to_csv(series: MomentSeries, digits: int = DEFAULT_DIGITS) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["m", "value"])
    for m, v in enumerate(series.values):
        w.writerow([m, decimal(v, digits)])
    return buf.getvalue()


# -- reports ------------------------------------------------------------------

def witness_to_dict(report, t1=None, digits: int = DEFAULT_DIGITS) -> dict:
    d = {
        "schema": "tripsep.witness/1",
        "per_m": [
            {
                "m": r.m,
                "value": decimal(r.value, digits),
                "full_sep_threshold": str(r.full_sep_threshold),
                "bisep_threshold": str(r.bisep_threshold),
                "universal_floor": str(r.universal_floor),
                "verdict": r.verdict,
                "margin_full_sep": decimal(r.margin_full_sep),
                "margin_bisep": decimal(r.margin_bisep),
            }
            for r in report.per_m
        ],
        "overall": report.overall_verdict,
        "unphysical": report.unphysical,
        "source": report.source,
        "precision_digits": digits,
    }
    if t1 is not None:
        d["t1"] = {
            "value": decimal(t1.t1),
            "components": [decimal(c) for c in t1.components],
            "thresholds": ["9", "5", "3"],
            "verdict": t1.verdict,
        }
    return d


def witness_to_csv(report, digits: int = DEFAULT_DIGITS) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["m", "value", "full_sep_threshold", "bisep_threshold", "verdict"])
    for r in report.per_m:
        w.writerow([r.m, decimal(r.value, digits), r.full_sep_threshold,
                    str(r.bisep_threshold), r.verdict])
    return buf.getvalue()


def ppt_to_dict(phys, pt) -> dict:
    return {
        "schema": "tripsep.ppt/1",
        "physical": phys.physical,
        "min_eigenvalue": decimal(phys.min_eigenvalue),
        "partitions": [
            {
                "k": p.k,
                "negative": p.negative,
                "witness_minor": decimal(p.witness_minor),
                "min_eigenvalue": decimal(p.min_eigenvalue),
            }
            for p in pt.partitions
        ],
        "class1": pt.class1,
    }


def estimate_to_dict(rep, seed: int, rng_algorithm: str) -> dict:
    return {
        "schema": "tripsep.simulate/1",
        "shots": rep.shots,
        "seed": seed,
        "rng_algorithm": rng_algorithm,
        "t_prime_estimate": decimal(rep.t_prime_estimate),
        "std_error": decimal(rep.std_error),
        "analytic_value": None if rep.analytic_value is None else decimal(rep.analytic_value),
        "z": decimal(rep.z),
        "thresholds_t_prime_minus_3": ["9", "5", "3"],
        "verdict": rep.verdict,
    }


dumps = _dumps


def load_schema(name: str) -> dict:
    """Bundled JSON schema, e.g. ``load_schema("series")``."""
    from importlib import resources

    return json.loads(resources.files("tripsep").joinpath(f"schemas/{name}.v1.json").read_text())
