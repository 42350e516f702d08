"""Exact-value serialization: fraction strings, JSON envelopes, goldens.

Rationals are always rendered as "num/den" strings, never floats.  Integers
ride as native JSON numbers while they fit in a double's exact range and as
decimal strings above that, so lossy JSON consumers cannot corrupt them.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Mapping

from .quasipoly import QuasiPoly
from .waves import WaveDecomp

SCHEMA_VERSION = 1
_SAFE_INT = 2 ** 53


def frac_str(x: Fraction | int) -> str:
    f = Fraction(x)
    return f"{f.numerator}/{f.denominator}"


def parse_frac(s: str) -> Fraction:
    num, _, den = s.partition("/")
    return Fraction(int(num), int(den) if den else 1)


def encode_value(x: Any) -> Any:
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, int):
        return x if abs(x) <= _SAFE_INT else str(x)
    if isinstance(x, Fraction):
        return frac_str(x)
    if isinstance(x, (list, tuple)):
        return [encode_value(v) for v in x]
    if isinstance(x, Mapping):
        return {str(k): encode_value(v) for k, v in x.items()}
    raise TypeError(f"cannot encode {type(x).__name__}")


def decode_value(x: Any) -> Any:
    if isinstance(x, str):
        body = x[1:] if x.startswith("-") else x
        if "/" in x and body.replace("/", "", 1).isdigit():
            return parse_frac(x)
        if body.isdigit():
            return int(x)
        return x
    if isinstance(x, list):
        return [decode_value(v) for v in x]
    if isinstance(x, dict):
        return {k: decode_value(v) for k, v in x.items()}
    return x


# ---------------------------------------------------------------------------
# Result envelope
# ---------------------------------------------------------------------------

def envelope(command: str, inputs: Mapping[str, Any], outputs: Mapping[str, Any],
             provenance: str, timing_ms: float) -> dict:
    return {
        "command": command,
        "inputs": encode_value(inputs),
        "outputs": encode_value(outputs),
        "provenance": provenance,
        "timing_ms": round(timing_ms, 3),
    }


def envelope_to_json(env: Mapping[str, Any]) -> str:
    return json.dumps(env, indent=2, sort_keys=False)


def envelope_from_json(text: str) -> dict:
    raw = json.loads(text)
    return {
        "command": raw["command"],
        "inputs": decode_value(raw["inputs"]),
        "outputs": decode_value(raw["outputs"]),
        "provenance": raw["provenance"],
        "timing_ms": raw["timing_ms"],
    }


# ---------------------------------------------------------------------------
# Golden-file documents
# ---------------------------------------------------------------------------

def constituents_doc(k: int, qp: QuasiPoly) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "constituents",
        "k": k,
        "period": qp.period,
        "degree_bound": qp.degree_bound,
        "coeffs": [[frac_str(c) for c in row] for row in qp.coeffs],
    }


def parse_constituents_doc(doc: Mapping[str, Any]) -> QuasiPoly:
    if doc.get("kind") != "constituents":
        raise ValueError("not a constituents document")
    coeffs = tuple(tuple(parse_frac(c) for c in row) for row in doc["coeffs"])
    return QuasiPoly(doc["period"], doc["degree_bound"], coeffs)


def waves_doc(k: int, wd: WaveDecomp) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "waves",
        "k": k,
        "period": wd.period,
        "waves": {
            str(j): [[frac_str(c) for c in poly] for poly in wd.polys[j]]
            for j in sorted(wd.polys)
        },
    }


def parse_waves_doc(doc: Mapping[str, Any]) -> WaveDecomp:
    if doc.get("kind") != "waves":
        raise ValueError("not a waves document")
    polys = {
        int(j): tuple(tuple(parse_frac(c) for c in poly) for poly in entries)
        for j, entries in doc["waves"].items()
    }
    return WaveDecomp(doc["k"], doc["period"], polys)


def determinants_doc(values: Mapping[int, Fraction]) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "determinants",
        "values": {str(k): frac_str(v) for k, v in sorted(values.items())},
    }
