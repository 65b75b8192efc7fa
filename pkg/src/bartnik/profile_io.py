"""JSON and CSV serialization of profiles and related records.

Profile JSON schema (schema_version 1), two accepted input forms::

    {"schema_version": 1, "gauge": "arclength", "decay_p": 0.9,
     "samples": [[s, r], ...]}

    {"schema_version": 1,
     "analytic": {"kind": "schwarzschild", "mass": 1.0},
     "s_range": [a, b], "n": 2000}

The analytic form materializes samples on load (optional keys: ``r_start``
for schwarzschild, defaulting to 3m).  Saving always emits the samples
form; floats are written with ``repr`` so a load/save round trip is
byte-stable after the first normalization.

Corner JSON: {"schema_version": 1, "inner": <profile>, "outer": <profile>,
"h_minus": float?, "h_plus": float?}.
"""

from __future__ import annotations

import csv
import json
import math

import numpy as np

from .errors import SchemaError
from .geometry import (
    AnalyticTag,
    CornerManifold,
    RadialProfile,
    WarpedProfile,
    flat_profile,
    gauss_curvature,
    hawking_mass,
    mean_curvature,
    scalar_curvature,
    schwarzschild_arc_length,
    schwarzschild_profile,
    sphere_area,
)

__all__ = [
    "profile_to_dict",
    "profile_from_dict",
    "load_profile",
    "save_profile",
    "corner_from_dict",
    "corner_to_dict",
    "load_corner",
    "warped_to_dict",
    "save_warped",
    "write_profile_csv",
    "write_hawking_csv",
    "dump_json",
]

SCHEMA_VERSION = 1


class _FloatList(list):
    pass


def _format_float(x: float) -> str:
    if math.isinf(x):
        return '"+inf"' if x > 0 else '"-inf"'
    return repr(float(x))


def dump_json(obj, path) -> None:
    """Write JSON with full-precision floats and a trailing newline."""
    text = _render(obj)
    with open(path, "w") as fh:
        fh.write(text + "\n")


def _render(obj, indent: int = 0) -> str:
    pad = " " * indent
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [
            f'{pad}  {json.dumps(key)}: {_render(val, indent + 2)}'
            for key, val in obj.items()
        ]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        seq = list(obj)
        rendered = [_render(v, indent + 2) for v in seq]
        if sum(len(r) for r in rendered) < 70:
            return "[" + ", ".join(rendered) + "]"
        return "[\n" + ",\n".join(" " * (indent + 2) + r for r in rendered) + "\n" + pad + "]"
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, (float, np.floating)):
        return _format_float(float(obj))
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    return json.dumps(obj)


def profile_to_dict(profile: RadialProfile) -> dict:
    out = {
        "schema_version": SCHEMA_VERSION,
        "gauge": "arclength",
        "decay_p": profile.decay_p,
        "samples": [[float(s), float(r)] for s, r in zip(profile.s_grid, profile.r_values)],
    }
    if profile.analytic_tag is not None:
        tag = {"kind": profile.analytic_tag.kind}
        if profile.analytic_tag.mass is not None:
            tag["mass"] = profile.analytic_tag.mass
        out["analytic_tag"] = tag
    if profile.end_slopes is not None:
        out["end_slopes"] = [float(profile.end_slopes[0]), float(profile.end_slopes[1])]
    return out


def _tag_from_dict(d) -> AnalyticTag | None:
    if d is None:
        return None
    return AnalyticTag(d["kind"], d.get("mass"))


def profile_from_dict(data: dict) -> RadialProfile:
    if not isinstance(data, dict):
        raise SchemaError("profile JSON must be an object")
    version = data.get("schema_version", SCHEMA_VERSION)
    if version != SCHEMA_VERSION:
        raise SchemaError(f"unsupported schema_version {version}")
    if "analytic" in data:
        return _profile_from_analytic(data)
    if "samples" not in data:
        raise SchemaError("profile JSON needs 'samples' or 'analytic'")
    if data.get("gauge", "arclength") != "arclength":
        raise SchemaError("only the arclength gauge is supported")
    samples = np.asarray(data["samples"], dtype=float)
    if samples.ndim != 2 or samples.shape[1] != 2:
        raise SchemaError("'samples' must be a list of [s, r] pairs")
    end_slopes = data.get("end_slopes")
    if end_slopes is not None:
        end_slopes = (float(end_slopes[0]), float(end_slopes[1]))
    try:
        return RadialProfile(
            samples[:, 0],
            samples[:, 1],
            decay_p=float(data.get("decay_p", 0.9)),
            analytic_tag=_tag_from_dict(data.get("analytic_tag")),
            end_slopes=end_slopes,
        )
    except ValueError as exc:
        raise SchemaError(str(exc)) from exc


def _profile_from_analytic(data: dict) -> RadialProfile:
    spec = data["analytic"]
    kind = spec.get("kind")
    n = int(data.get("n", 2000))
    s_range = data.get("s_range")
    if s_range is None or len(s_range) != 2:
        raise SchemaError("analytic profile needs 's_range': [a, b]")
    a, b = float(s_range[0]), float(s_range[1])
    if kind == "flat":
        if a <= 0:
            raise SchemaError("flat analytic profile needs s_range[0] > 0")
        return flat_profile(s_min=a, s_max=b, n=n)
    if kind == "schwarzschild":
        m = float(spec["mass"])
        r_start = float(spec.get("r_start", 3.0 * m if m > 0 else 1.0))
        # map the s_range measured from r_start into an r_range
        r_end = _schwarzschild_r_at(b - a, m, r_start)
        return schwarzschild_profile(m, r_start=r_start, r_max=r_end, n=n)
    raise SchemaError(f"unknown analytic kind {kind!r}")


def _schwarzschild_r_at(s: float, m: float, r_start: float) -> float:
    base = schwarzschild_arc_length(r_start, m)
    r = r_start + s
    for _ in range(60):
        f = schwarzschild_arc_length(r, m) - base - s
        step = f * math.sqrt(max(1.0 - 2.0 * m / r, 1e-300))
        r -= step
        if abs(step) < 1e-13 * max(1.0, r):
            break
    return r


def load_profile(path) -> RadialProfile:
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"invalid JSON: {exc}") from exc
    return profile_from_dict(data)


def save_profile(profile: RadialProfile, path) -> None:
    dump_json(profile_to_dict(profile), path)


def corner_to_dict(corner: CornerManifold) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "inner": profile_to_dict(corner.inner),
        "outer": profile_to_dict(corner.outer),
        "h_minus": corner.h_minus,
        "h_plus": corner.h_plus,
    }


def corner_from_dict(data: dict) -> CornerManifold:
    if not isinstance(data, dict) or "inner" not in data or "outer" not in data:
        raise SchemaError("corner JSON needs 'inner' and 'outer' profiles")
    inner = profile_from_dict(data["inner"])
    outer = profile_from_dict(data["outer"])
    kwargs = {}
    if data.get("h_minus") is not None:
        kwargs["h_minus"] = float(data["h_minus"])
    if data.get("h_plus") is not None:
        kwargs["h_plus"] = float(data["h_plus"])
    return CornerManifold(inner, outer, **kwargs)


def load_corner(path) -> CornerManifold:
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"invalid JSON: {exc}") from exc
    return corner_from_dict(data)


def warped_to_dict(w: WarpedProfile) -> dict:
    out = {
        "schema_version": SCHEMA_VERSION,
        "t_grid": [float(t) for t in w.t_grid],
        "rho": [float(x) for x in w.rho_values],
        "r": [float(x) for x in w.r_values],
        "t0": w.t0,
    }
    if w.params is not None:
        out["params"] = {
            "h0": w.params.h0,
            "kappa0": w.params.kappa0,
            "t0": w.params.t0,
        }
    return out


def save_warped(w: WarpedProfile, path) -> None:
    dump_json(warped_to_dict(w), path)


def write_profile_csv(profile: RadialProfile, path) -> None:
    """CSV of pointwise quantities: s, r, K, H, R, area, hawking."""
    s = profile.s_grid
    rows = zip(
        s,
        profile.r_values,
        gauss_curvature(profile, s),
        mean_curvature(profile, s),
        scalar_curvature(profile, s),
        sphere_area(profile, s),
        hawking_mass(profile, s),
    )
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["s", "r", "K", "H", "R", "area", "hawking"])
        for row in rows:
            writer.writerow([repr(float(v)) for v in row])


def write_hawking_csv(profile: RadialProfile, path) -> None:
    """CSV of the Hawking-mass trace: s, r, m_H."""
    s = profile.s_grid
    mh = hawking_mass(profile, s)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["s", "r", "m_H"])
        for si, ri, mi in zip(s, profile.r_values, mh):
            writer.writerow([repr(float(si)), repr(float(ri)), repr(float(mi))])
