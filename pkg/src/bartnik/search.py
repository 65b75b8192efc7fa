"""Constrained ADM-mass minimization over parametric extension families.

A family member is generated from its boundary data (A, H) by integrating

    r'' = theta(s) (1 - r'^2) / (2 r),      r(0) = r0 = sqrt(A / 4 pi),

over a collar of length 8 r0, where theta is the piecewise-linear
"curvature budget fraction" through 16 control nodes (theta <= 1 keeps
R >= 0 by construction; theta = 1 is the zero-scalar-curvature envelope).
A final node pinned at theta = 1 makes the collar end match an exact
Schwarzschild tail through second derivatives, and the tail mass --- the
Hawking mass at the collar end --- is exactly the ADM mass of the
completed profile.

Boundary types fix the initial slope: Type 2 and 1 use r'(0) = H r0 / 2
(mean curvatures matching), Type 1 additionally pins the first control to
the inner region's curvature fraction, and Type 3 frees the slope to
r'(0) <= H r0 / 2.  Feasible sets are therefore nested by type, which
forces the mass chain m1 >= m2 >= m3 on every run.

The optimizer is a coordinate pattern search with best-of-sweep
acceptance (deterministic for any evaluation parallelism) and seeded
random restarts.  Estimates are family-relative upper bounds for the true
infimum and are labeled as such.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import PreconditionError
from .geometry import (
    AnalyticTag,
    BoundaryData,
    CornerManifold,
    RadialProfile,
    corner_classify,
    mean_curvature,
    scalar_curvature,
    schwarzschild_arc_length,
    schwarzschild_profile,
)
from .horizons import ConditionN, check_condition
from .kernels import integrate_shape_ode
from .masses import adm_mass
from .smoothing import smooth_corner

__all__ = [
    "ExtensionFamily",
    "SearchResult",
    "schwarzschild_extension",
    "minimize_adm",
    "upper_bound_check",
    "om_vs_horizon_experiment",
    "equivalence_experiment",
]

R_NONNEG_TOL = 1e-6
BOUNDARY_MATCH_TOL = 1e-8
SEARCH_N_STEPS = 256
FINAL_N_COLLAR = 16384


@dataclass(frozen=True)
class ExtensionFamily:
    """Parametric family of admissible extensions of round boundary data.

    ``theta_min`` relaxes the lower control bound (default 0; negative
    values admit necks while still enforcing the R >= 0 envelope).
    ``slope_range`` is the Type-3 range of r'(0) as a fraction of
    H r0 / 2.  ``corner_theta`` pins the Type-1 corner control.
    """

    boundary: BoundaryData
    boundary_type: int
    n_controls: int = 16
    collar_factor: float = 8.0
    theta_min: float = 0.0
    corner_theta: float = 1.0
    slope_range: tuple[float, float] = (0.0, 1.0)
    inner: RadialProfile | None = None

    def __post_init__(self):
        if self.boundary_type not in (1, 2, 3):
            raise ValueError("boundary_type must be 1, 2 or 3")
        if self.n_controls < 2:
            raise ValueError("need at least two controls")
        if not -1.0 <= self.theta_min <= 1.0:
            raise ValueError("theta_min must lie in [-1, 1]")
        if not 0.0 <= self.corner_theta <= 1.0:
            raise ValueError("corner_theta must lie in [0, 1]")

    @property
    def r0(self) -> float:
        return self.boundary.radius

    @property
    def collar_length(self) -> float:
        return self.collar_factor * self.r0

    @property
    def boundary_slope(self) -> float:
        """Slope matching the boundary mean curvature: r'(0) = H r0 / 2."""
        return 0.5 * self.boundary.mean_curvature * self.r0

    @property
    def dim(self) -> int:
        if self.boundary_type == 1:
            return self.n_controls - 1
        if self.boundary_type == 2:
            return self.n_controls
        return self.n_controls + 1

    def controls_to_params(self, x) -> tuple[np.ndarray, float]:
        """Map unit-box controls to (theta node array, initial slope).

        The node array has n_controls values on [0, collar) plus the
        pinned envelope node theta = 1 at the collar end.
        """
        x = np.asarray(x, dtype=float)
        if x.shape != (self.dim,):
            raise ValueError(f"controls must have shape ({self.dim},)")
        if np.any(x < 0.0) or np.any(x > 1.0):
            raise ValueError("controls must lie in [0, 1]")
        span = 1.0 - self.theta_min
        if self.boundary_type == 1:
            theta_free = self.theta_min + span * x
            theta = np.concatenate([[self.corner_theta], theta_free, [1.0]])
            v0 = self.boundary_slope
        elif self.boundary_type == 2:
            theta = np.concatenate([self.theta_min + span * x, [1.0]])
            v0 = self.boundary_slope
        else:
            theta = np.concatenate([self.theta_min + span * x[:-1], [1.0]])
            lo, hi = self.slope_range
            frac = lo + (hi - lo) * x[-1]
            v0 = frac * self.boundary_slope
        return theta, v0

    def evaluate(self, x, cond: ConditionN, n_steps: int = SEARCH_N_STEPS):
        """(mass, feasible, flags) for one candidate; mass = +inf if infeasible.

        ``flags`` carries outward-minimizing / no-surrounding-horizon
        booleans for containment-witness logging.
        """
        theta, v0 = self.controls_to_params(x)
        status, r, v = integrate_shape_ode(theta, self.collar_length,
                                           self.r0, v0, n_steps)
        flags = {"om": False, "nsh": False, "integrated": status == 0}
        if status != 0 or v[-1] < 0.0:
            return math.inf, False, flags
        # discrete condition checks on the collar trajectory; the exact
        # Schwarzschild tail is monotone, so it cannot add horizons or dips
        interior_v = v[1:]
        crossing = np.any(interior_v[:-1] * interior_v[1:] < 0.0)
        touching = np.any(np.abs(interior_v) < 1e-12)
        has_horizon = bool(crossing or touching)
        r_min_interior = float(np.min(r[1:]))
        om = r_min_interior >= self.r0 * (1.0 - 1e-12)
        strictly_om = r_min_interior > self.r0 * (1.0 + 1e-12)
        flags["om"] = om
        flags["nsh"] = not has_horizon
        mass = 0.5 * r[-1] * (1.0 - v[-1] ** 2)

        name = cond.variant
        if name in ("NoHorizonsInM", "NoSurroundingHorizons"):
            ok = not has_horizon
        elif name == "NoHorizonsInUnion":
            ok = not has_horizon and not self._inner_has_horizons()
        elif name == "OutwardMinimizing":
            ok = om
        elif name == "StrictlyOutwardMinimizing":
            ok = strictly_om
        elif name == "NEpsilon":
            area_min = 4.0 * math.pi * r_min_interior ** 2
            area0 = 4.0 * math.pi * self.r0 ** 2
            ok = area_min >= area0 - cond.epsilon - 1e-12 * area0
        else:
            raise PreconditionError(f"unhandled condition {name}")
        return (mass, True, flags) if ok else (math.inf, False, flags)

    def _inner_has_horizons(self) -> bool:
        if self.inner is None:
            return False
        if not hasattr(self, "_inner_horizon_cache"):
            from .horizons import find_minimal_spheres

            object.__setattr__(self, "_inner_horizon_cache",
                               bool(find_minimal_spheres(self.inner)))
        return self._inner_horizon_cache

    def build_profile(self, x, n_collar: int = FINAL_N_COLLAR,
                      r_max_factor: float = 100.0) -> RadialProfile:
        """Materialize a family member: dense collar plus exact tail.

        ``n_collar`` is rounded to a multiple of the node count so the
        piecewise-linear theta kinks land exactly on sample points (the
        spline reproduces the third-derivative breaks there without extra
        error).
        """
        nodes = self.n_controls
        n_collar = max(nodes, (n_collar // nodes) * nodes)
        theta, v0 = self.controls_to_params(x)
        status, r, v = integrate_shape_ode(theta, self.collar_length,
                                           self.r0, v0, n_collar)
        if status != 0:
            raise PreconditionError("candidate collapsed (r -> 0); no profile")
        if v[-1] < 0.0:
            raise PreconditionError("collar ends with falling radius; no AF tail")
        s_collar = np.linspace(0.0, self.collar_length, n_collar + 1)
        r_c, v_c = float(r[-1]), float(v[-1])
        m_tail = 0.5 * r_c * (1.0 - v_c * v_c)
        r_max = max(r_max_factor * self.r0, 10.0 * r_c)
        tail_r = np.geomspace(r_c, r_max, 512)[1:]
        tail_s = (s_collar[-1]
                  + schwarzschild_arc_length(tail_r, m_tail)
                  - schwarzschild_arc_length(r_c, m_tail))
        s_all = np.concatenate([s_collar, tail_s])
        r_all = np.concatenate([r, tail_r])
        v_end = math.sqrt(max(1.0 - 2.0 * m_tail / r_max, 0.0))
        return RadialProfile(s_all, r_all, decay_p=0.9,
                             analytic_tag=AnalyticTag("custom"),
                             end_slopes=(float(v0), v_end))


@dataclass(frozen=True)
class SearchResult:
    mass_estimate: float
    best_profile: RadialProfile | None
    condition: ConditionN
    evaluations: int
    feasible: bool
    controls: np.ndarray | None = None
    label: str = "family-relative Bartnik mass estimate"
    containment_witnesses: int = 0
    verification: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "mass_estimate": self.mass_estimate if self.feasible else "+inf",
            "feasible": self.feasible,
            "condition": str(self.condition),
            "evaluations": self.evaluations,
            "controls": None if self.controls is None else [float(c) for c in self.controls],
            "label": self.label,
            "containment_witnesses": self.containment_witnesses,
            "verification": self.verification,
        }


def schwarzschild_extension(bd: BoundaryData) -> tuple[RadialProfile, float]:
    """Reference competitor: the Schwarzschild exterior matching (A, H).

    The matched mass is the boundary sphere's Hawking mass
    m = (r0/2)(1 - (H r0/2)^2); mean curvatures match exactly (Type 2 at
    the corner).  For H r0/2 >= 1 the mass is nonpositive and the profile
    is still returned (a valid extension; positivity claims concern full
    corner manifolds).
    """
    if bd.mean_curvature <= 0:
        raise PreconditionError("mean curvature must be positive")
    r0 = bd.radius
    m = 0.5 * r0 * (1.0 - (0.5 * bd.mean_curvature * r0) ** 2)
    profile = schwarzschild_profile(m, r_start=r0, r_max=max(1000.0, 200.0 * r0),
                                    n=2000)
    return profile, m


def _verify_best(family: ExtensionFamily, profile: RadialProfile,
                 cond: ConditionN, mass: float) -> dict:
    """Re-verify a returned minimizer against its constraints."""
    R = scalar_curvature(profile, profile.s_grid)
    min_r_ok = float(np.min(R))
    r0_err = abs(float(profile.r_values[0]) - family.r0) / family.r0
    h_meas = float(mean_curvature(profile, 0.0))
    h_tgt = family.boundary.mean_curvature
    if family.boundary_type in (1, 2):
        h_ok = abs(h_meas - h_tgt) <= BOUNDARY_MATCH_TOL * h_tgt
    else:
        h_ok = h_meas <= h_tgt * (1.0 + BOUNDARY_MATCH_TOL)
    cond_rep = check_condition(profile, cond, corner=None)
    rep = adm_mass(profile)
    return {
        "min_R": min_r_ok,
        "min_R_ok": min_r_ok >= -R_NONNEG_TOL,
        "boundary_radius_relerr": r0_err,
        "boundary_ok": r0_err <= BOUNDARY_MATCH_TOL and h_ok,
        "condition_ok": bool(cond_rep.passed),
        "adm_estimate": rep.adm_estimate,
        "adm_matches": abs(rep.adm_estimate - mass) <= 1e-6 + 10.0 * rep.fit_residual,
    }


def minimize_adm(family: ExtensionFamily, cond: ConditionN, budget: int = 2000,
                 seed: int = 0, jobs: int = 1,
                 n_steps: int = SEARCH_N_STEPS) -> SearchResult:
    """Derivative-free constrained search for the least feasible mass.

    Coordinate pattern search with best-of-sweep acceptance and seeded
    random restarts; deterministic for a fixed (seed, budget, family,
    condition) regardless of ``jobs``.  Returns the +inf sentinel with
    ``feasible=False`` when no candidate satisfies the constraints.
    """
    if budget < 1:
        raise PreconditionError("budget must be at least 1")
    rng = np.random.default_rng(seed)
    dim = family.dim
    evaluations = 0
    witnesses = 0

    def evaluate(x):
        nonlocal evaluations, witnesses
        evaluations += 1
        mass, feasible, flags = family.evaluate(x, cond, n_steps)
        if flags["om"] and not flags["nsh"]:
            witnesses += 1
        return mass

    pool = ThreadPoolExecutor(max_workers=jobs) if jobs > 1 else None

    def evaluate_batch(cands):
        nonlocal evaluations, witnesses
        results = []
        if pool is not None:
            futs = [pool.submit(family.evaluate, c, cond, n_steps) for c in cands]
            raw = [f.result() for f in futs]
        else:
            raw = [family.evaluate(c, cond, n_steps) for c in cands]
        for mass, feasible, flags in raw:
            evaluations += 1
            if flags["om"] and not flags["nsh"]:
                witnesses += 1
            results.append(mass)
        return results

    best_x = None
    best_mass = math.inf

    def consider(x, mass):
        nonlocal best_x, best_mass
        if mass < best_mass or (
            mass == best_mass and best_x is not None
            and tuple(x) < tuple(best_x)
        ):
            best_mass = mass
            best_x = np.array(x, copy=True)

    start_points = [np.ones(dim)]
    while True:
        if evaluations >= budget:
            break
        if start_points:
            x = start_points.pop(0)
        else:
            x = rng.random(dim)
        mass = evaluate(x)
        consider(x, mass)
        step = 0.25
        current_x, current_mass = np.array(x), mass
        while step >= 1e-3 and evaluations < budget:
            cands = []
            for i in range(dim):
                for delta in (step, -step):
                    cand = current_x.copy()
                    cand[i] = min(1.0, max(0.0, cand[i] + delta))
                    cands.append(cand)
            room = budget - evaluations
            cands = cands[:room]
            if not cands:
                break
            masses = evaluate_batch(cands)
            order = np.lexsort((np.arange(len(masses)), masses))
            j = int(order[0])
            if masses[j] < current_mass:
                current_x, current_mass = cands[j], masses[j]
                consider(current_x, current_mass)
            else:
                step *= 0.5

    if pool is not None:
        pool.shutdown()

    if not math.isfinite(best_mass):
        return SearchResult(math.inf, None, cond, evaluations, False,
                            containment_witnesses=witnesses)
    profile = family.build_profile(best_x)
    verification = _verify_best(family, profile, cond, best_mass)
    return SearchResult(best_mass, profile, cond, evaluations, True,
                        controls=best_x, containment_witnesses=witnesses,
                        verification=verification)


@dataclass(frozen=True)
class UpperBoundCheck:
    passed: bool
    bound: float
    mass: float
    skipped: bool = False


def upper_bound_check(result: SearchResult, bd: BoundaryData,
                      tol: float = 1e-9) -> UpperBoundCheck:
    """Coarse area bound: any feasible estimate obeys m <= sqrt(A / 16 pi)."""
    bound = math.sqrt(bd.area / (16.0 * math.pi))
    if not result.feasible:
        return UpperBoundCheck(passed=True, bound=bound, mass=math.inf, skipped=True)
    return UpperBoundCheck(passed=result.mass_estimate <= bound + tol,
                           bound=bound, mass=result.mass_estimate)


def om_vs_horizon_experiment(bd: BoundaryData, budget: int = 2000, seed: int = 0,
                             allow_necks: bool = True, tol: float = 1e-3):
    """Paired searches: outward-minimizing vs no-surrounding-horizons.

    Both searches share the family and seed; the outward-minimizing value
    must be at least the no-surrounding-horizons value minus ``tol``.
    With a neck-capable family, candidates that are outward-minimizing yet
    carry a horizon witness the strict containment of feasible sets.
    Returns (m_o, m_h, passed, detail-dict).
    """
    family = ExtensionFamily(
        boundary=bd, boundary_type=3,
        theta_min=-1.0 if allow_necks else 0.0,
        slope_range=(-1.0, 1.0) if allow_necks else (0.0, 1.0),
    )
    res_o = minimize_adm(family, ConditionN("OutwardMinimizing"), budget, seed)
    res_h = minimize_adm(family, ConditionN("NoSurroundingHorizons"), budget, seed)
    if not (res_o.feasible and res_h.feasible):
        return math.inf, math.inf, None, {"inconclusive": True}
    m_o, m_h = res_o.mass_estimate, res_h.mass_estimate
    passed = m_o >= m_h - tol
    detail = {
        "containment_witnesses": res_o.containment_witnesses + res_h.containment_witnesses,
        "inconclusive": False,
    }
    return m_o, m_h, passed, detail


def equivalence_experiment(corner: CornerManifold, epsilon: float,
                           budget: int = 2000, seed: int = 7,
                           window: float | None = None) -> dict:
    """Boundary-condition equivalence probe through the smoothing pipeline.

    Minimizes over Type-3 and Type-1 families for the corner's boundary
    data under NEpsilon(epsilon), smooths the best Type-3 corner to a
    Type-1 extension, and checks: the smoothed profile is smooth across
    the corner, still satisfies NEpsilon(epsilon) (and the strict
    outward-minimizing condition when the Type-3 minimizer did), and its
    mass is within epsilon of the Type-3 value.  Together with the
    feasible-set containment chain this pins |m1 - m3| to epsilon plus
    the measured search slack.
    """
    r0 = corner.corner_radius
    bd = BoundaryData(area=4.0 * math.pi * r0 * r0, mean_curvature=corner.h_minus)
    cond = ConditionN("NEpsilon", epsilon=epsilon)
    # inner curvature fraction pins the Type-1 corner control
    rpp_in = float(corner.inner.rpp(corner.inner.s_max))
    v_in = float(corner.inner.rp(corner.inner.s_max))
    denom = 1.0 - v_in * v_in
    corner_theta = 0.0 if abs(denom) < 1e-10 else min(max(
        2.0 * r0 * rpp_in / denom, 0.0), 1.0)

    fam3 = ExtensionFamily(boundary=bd, boundary_type=3)
    fam1 = ExtensionFamily(boundary=bd, boundary_type=1, corner_theta=corner_theta)
    res3 = minimize_adm(fam3, cond, budget, seed)
    res1 = minimize_adm(fam1, cond, budget, seed)
    out = {
        "m3": res3.mass_estimate if res3.feasible else math.inf,
        "m1": res1.mass_estimate if res1.feasible else math.inf,
        "feasible": res3.feasible and res1.feasible,
    }
    if not out["feasible"]:
        out["passed"] = None
        return out

    som_in = check_condition(res3.best_profile,
                             ConditionN("StrictlyOutwardMinimizing")).passed
    best_corner = CornerManifold(corner.inner, res3.best_profile)
    klass = corner_classify(best_corner, smooth_tol=1e-6)
    if klass.kind == "Type1":
        out.update({
            "already_type1": True,
            "smoothed_mass": res3.mass_estimate,
            "smoothed_neps": True,
            "smoothed_som": som_in,
            "search_slack": abs(out["m1"] - out["m3"]),
            "passed": abs(out["m1"] - out["m3"]) <= epsilon + 1e-9,
        })
        return out

    smoothed, report = smooth_corner(best_corner, epsilon, window)
    out["already_type1"] = False
    out["smoothing_report"] = report
    mass_smoothed = adm_mass(smoothed).adm_estimate
    out["smoothed_mass"] = mass_smoothed

    # smoothness across the corner: classify the two restricted halves
    left = smoothed.restricted(smoothed.s_min, 0.0)
    right = smoothed.restricted(0.0, smoothed.s_max)
    klass_s = corner_classify(CornerManifold(left, right), smooth_tol=1e-4)
    out["smoothed_type"] = klass_s.kind

    outer_part = smoothed.restricted(0.0, smoothed.s_max)
    out["smoothed_neps"] = check_condition(outer_part, cond).passed
    out["smoothed_som"] = check_condition(
        outer_part, ConditionN("StrictlyOutwardMinimizing")).passed
    slack = abs(mass_smoothed - out["m3"])
    out["search_slack"] = slack
    checks = [
        klass_s.kind == "Type1",
        out["smoothed_neps"],
        (not som_in) or out["smoothed_som"],
        abs(mass_smoothed - out["m3"]) <= epsilon,
        abs(out["m1"] - out["m3"]) <= epsilon + slack + 1e-9,
    ]
    out["passed"] = all(checks)
    return out
