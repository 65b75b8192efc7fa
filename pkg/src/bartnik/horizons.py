"""Horizon detection and non-degeneracy ("condition N") predicates.

Standing symmetry assumption: competitor surfaces are centered spheres, so
"enclosing area" is computable as inf 4 pi r(s)^2 and a horizon is a
centered minimal sphere, i.e. a zero of r'.  This restriction is what
makes every predicate decidable at desk scale; the definitions it
realizes quantify over all enclosing surfaces, so results are exact only
within the symmetric class.

Variants implemented:

  NoHorizonsInUnion      no zeros of r' in the glued manifold (inner and
                         outer scanned; corner tangency reported separately)
  NoHorizonsInM          no zeros of r' in the extension interior (s > 0)
  NoSurroundingHorizons  same zero set under the symmetry assumption
                         (every centered sphere surrounds the boundary)
  OutwardMinimizing      inf_{s >= 0} r(s) >= r(0)
  StrictlyOutwardMinimizing    r(s) > r(0) for all s > 0
  NEpsilon(eps)          inf area >= 4 pi r(0)^2 - eps;  NEpsilon(0)
                         coincides with OutwardMinimizing

Tangential zeros of r' (no sign change) count as horizons for the horizon
variants but break strict outward-minimizing only when the area actually
dips.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import PreconditionError
from .geometry import CornerManifold, RadialProfile

__all__ = [
    "ConditionN",
    "HorizonRoot",
    "ConditionReport",
    "find_minimal_spheres",
    "outermost_surrounding_horizon",
    "check_condition",
    "CONDITION_VARIANTS",
]

CONDITION_VARIANTS = (
    "NoHorizonsInUnion",
    "NoHorizonsInM",
    "NoSurroundingHorizons",
    "OutwardMinimizing",
    "StrictlyOutwardMinimizing",
    "NEpsilon",
)

_DERIV_TOL = 1e-9      # |r'| below this (relative to 1) counts as zero
_AREA_SLACK = 1e-9     # relative slack on area comparisons


@dataclass(frozen=True)
class ConditionN:
    """A non-degeneracy condition; ``epsilon`` only applies to NEpsilon."""

    variant: str
    epsilon: float = 0.0

    def __post_init__(self):
        if self.variant not in CONDITION_VARIANTS:
            raise ValueError(f"unknown condition variant {self.variant!r}")
        if self.variant == "NEpsilon" and self.epsilon < 0:
            raise ValueError("NEpsilon needs epsilon >= 0")

    def __str__(self):
        if self.variant == "NEpsilon":
            return f"NEpsilon({self.epsilon:g})"
        return self.variant


@dataclass(frozen=True)
class HorizonRoot:
    s: float
    kind: str                 # "crossing" | "tangential" | "band"
    band: tuple[float, float] | None = None


@dataclass(frozen=True)
class ConditionReport:
    condition: ConditionN
    passed: bool
    witness: float | None = None        # violating s when failed
    corner_tangent: bool = False
    detail: str = ""


def _derivative_roots(profile: RadialProfile, s_lo=None, s_hi=None):
    """Zeros of r' on [s_lo, s_hi], with degenerate bands as intervals."""
    s_lo = profile.s_min if s_lo is None else s_lo
    s_hi = profile.s_max if s_hi is None else s_hi
    d1 = profile.d1
    roots = []
    # degenerate bands: at least two consecutive samples with |r'| ~ 0
    # (isolated zeros are left to the spline root finder below)
    flat_mask = np.abs(d1(profile.s_grid)) < _DERIV_TOL
    runs = []
    start = None
    for i, flat in enumerate(flat_mask):
        if flat and start is None:
            start = i
        elif not flat and start is not None:
            if i - start >= 2:
                runs.append((start, i - 1))
            start = None
    if start is not None and flat_mask.size - start >= 2:
        runs.append((start, flat_mask.size - 1))
    for i0, i1 in runs:
        a, b = float(profile.s_grid[i0]), float(profile.s_grid[i1])
        if a < s_hi and b > s_lo:
            roots.append(HorizonRoot(s=0.5 * (a + b), kind="band", band=(a, b)))
    band_ivals = [r.band for r in roots]

    # isolated roots of the piecewise-quadratic spline derivative
    try:
        raw = d1.roots(extrapolate=False)
    except Exception:
        raw = np.array([])
    raw = np.atleast_1d(np.asarray(raw, dtype=float))
    raw = raw[np.isfinite(raw)]
    span = s_hi - s_lo
    eps = 1e-7 * max(1.0, abs(span))
    for s0 in np.unique(np.round(raw / max(span, 1.0) * 1e12) * max(span, 1.0) / 1e12):
        if not (s_lo <= s0 <= s_hi):
            continue
        if any(b[0] - eps <= s0 <= b[1] + eps for b in band_ivals):
            continue
        left = float(d1(max(s0 - eps, profile.s_min)))
        right = float(d1(min(s0 + eps, profile.s_max)))
        kind = "crossing" if left * right < 0 else "tangential"
        roots.append(HorizonRoot(s=float(s0), kind=kind))
    roots.sort(key=lambda h: h.s)
    return roots


def find_minimal_spheres(profile: RadialProfile) -> list[HorizonRoot]:
    """All centered minimal spheres: zeros of r' on the grid interior.

    Roots are classified as strict crossings or tangential touches;
    stretches where r' vanishes identically are reported once as a band.
    """
    return _derivative_roots(profile)


def outermost_surrounding_horizon(profile: RadialProfile) -> float | None:
    """Largest zero of r' with s > 0, or None (boundary excluded)."""
    eps = 1e-9 * max(1.0, abs(profile.s_max))
    candidates = []
    for root in _derivative_roots(profile):
        if root.kind == "band" and root.band is not None:
            if root.band[1] > eps:
                candidates.append(root.band[1])
        elif root.s > eps:
            candidates.append(root.s)
    return max(candidates) if candidates else None


def _interior_horizons(profile: RadialProfile):
    """Horizon locations strictly inside s > 0 (boundary excluded)."""
    eps = 1e-9 * max(1.0, abs(profile.s_max))
    out = []
    for root in _derivative_roots(profile):
        if root.kind == "band" and root.band is not None:
            lo, hi = root.band
            if hi > eps:
                out.append(max(lo, eps))
        elif root.s > eps:
            out.append(root.s)
    return out


def _profile_min_radius(profile: RadialProfile):
    """(min r over s > 0, argmin) including interior spline minima."""
    s_grid = profile.s_grid
    r_min = float(profile.r_values[-1])
    s_at = float(s_grid[-1])
    vals = profile.r_values[1:]
    idx = int(np.argmin(vals)) + 1
    if vals[idx - 1] < r_min:
        r_min, s_at = float(vals[idx - 1]), float(s_grid[idx])
    for root in _derivative_roots(profile):
        pts = [root.s] if root.band is None else list(root.band)
        for s0 in pts:
            if s0 <= s_grid[0]:
                continue
            val = float(profile.r(s0))
            if val < r_min:
                r_min, s_at = val, float(s0)
    return r_min, s_at


def check_condition(profile: RadialProfile, cond: ConditionN,
                    corner: CornerManifold | None = None) -> ConditionReport:
    """Evaluate one condition-N variant on a profile (or glued corner).

    The union variant needs the corner; it scans one-sided zeros of r' on
    both sides and reports corner tangency separately (the glued metric is
    only Lipschitz there, so a tangency is flagged, not counted).
    """
    variant = cond.variant
    if variant == "NoHorizonsInUnion":
        if corner is None:
            raise PreconditionError("union variant needs the corner manifold")
        inner_roots = [r for r in _derivative_roots(corner.inner)
                       if (r.band or (r.s,))[0] < -1e-9]
        outer = _interior_horizons(corner.outer)
        tangent = (abs(float(corner.inner.rp(corner.inner.s_max))) < _DERIV_TOL
                   or abs(float(corner.outer.rp(corner.outer.s_min))) < _DERIV_TOL)
        bad = ([r.s for r in inner_roots] + outer)
        return ConditionReport(cond, passed=not bad,
                               witness=bad[0] if bad else None,
                               corner_tangent=tangent,
                               detail=f"{len(bad)} horizon(s) in the union")

    if variant in ("NoHorizonsInM", "NoSurroundingHorizons"):
        horizons = _interior_horizons(profile)
        return ConditionReport(cond, passed=not horizons,
                               witness=horizons[-1] if horizons else None,
                               detail=f"{len(horizons)} horizon(s) in s > 0")

    r0 = float(profile.r_values[0])
    r_min, s_at = _profile_min_radius(profile)
    if variant == "OutwardMinimizing":
        ok = r_min >= r0 * (1.0 - _AREA_SLACK)
        return ConditionReport(cond, passed=ok, witness=None if ok else s_at,
                               detail=f"min r = {r_min:.6g} vs r(0) = {r0:.6g}")
    if variant == "StrictlyOutwardMinimizing":
        # pointwise strictness: no interior evaluation point may drop to
        # r(0); an infimum attained only in the limit s -> 0+ is fine
        ok = not _touches_boundary_area(profile, r0)
        return ConditionReport(cond, passed=ok, witness=None if ok else s_at,
                               detail=f"min r = {r_min:.6g} vs r(0) = {r0:.6g}")
    if variant == "NEpsilon":
        area_min = 4.0 * math.pi * r_min * r_min
        area0 = 4.0 * math.pi * r0 * r0
        ok = area_min >= area0 - cond.epsilon - _AREA_SLACK * area0
        return ConditionReport(cond, passed=ok, witness=None if ok else s_at,
                               detail=f"min area deficit = {area0 - area_min:.6g}")
    raise PreconditionError(f"unhandled condition {variant}")


def _touches_boundary_area(profile: RadialProfile, r0: float) -> bool:
    """True when some interior sphere's radius drops to r(0) (or below)."""
    s = profile.s_grid
    interior = s > s[0] + 1e-9 * max(1.0, abs(s[-1]))
    if np.any(profile.r_values[interior] <= r0 * (1.0 + _AREA_SLACK)):
        return True
    for root in _derivative_roots(profile):
        pts = [root.s] if root.band is None else list(root.band)
        for s0 in pts:
            if s0 > s[0] + 1e-9 and float(profile.r(s0)) <= r0 * (1.0 + _AREA_SLACK):
                return True
    return False
