"""Separating a subspace from a disjoint open convex set.

The pipeline: take the positive conic hull B of the set, anchor a point x
inside it, symmetrize to D = (B - x) ∩ (x - B), take the gauge p of D,
define the partial functional sending z + t*x to t on span(S + {x}), extend
it under domination by p, and return the kernel hyperplane of the extension
together with a verification certificate.

Also here: the reverse construction (recovering a dominated extension by
separating the gauge ball around a normalizing point from the functional's
kernel), an exhaustive 2-D angular oracle, and the domination/disjointness
equivalence check for candidate extensions.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .convexsets import (
    ConvexSet,
    HPolyhedron,
    OpenBall,
    OracleSet,
    build_D,
    conic_hull_membership,
    is_empty,
    pick_interior_point,
    sample_interior,
)
from .errors import DegenerateError, InputError, SolverError
from .extension import (
    DOMINATION_TOL,
    ExtensionStep,
    domination_check,
    extend_full_state,
    functional_coefficients,
)
from .gauges import Seminorm, gauge, gauge_from_symmetrized, unit_ball
from .geometry import (
    Hyperplane,
    PartialFunctional,
    Subspace,
    as_vector,
    complement_basis,
    decompose,
    kernel_hyperplane,
    span_basis,
    zero_subspace,
)
from .simplexlp import solve_lp


@dataclass
class SeparationOptions:
    """Knobs for the pipeline; defaults reproduce the documented behaviour."""

    x: np.ndarray | None = None
    gamma_rule: str = "upper"
    seed: int = 0
    interval_method: str = "auto"
    certificate_samples: int = 10_000
    gauge_tol: float | None = None


@dataclass(frozen=True)
class SeparationCertificate:
    """Machine-checkable evidence for a separation.

    ``s_in_h_residual``: largest |normal . b| over the subspace basis.
    ``a_clearance``: smallest |normal . e| over sampled interior points
    (infinite when the set is empty).  ``boundary_margin``: exact signed
    margin of the hyperplane against the set's closure (polyhedra and balls
    only).  ``sign_constant``: the functional has one sign on the set.
    ``conic_disjoint_sampled``: positively-scaled samples also avoid the
    hyperplane.  ``remark2_status``: domination and disjointness agreed
    (None when no gauge was available to test domination).
    """

    s_in_h_residual: float
    a_clearance: float
    boundary_margin: float | None
    sign_constant: bool
    conic_disjoint_sampled: bool
    remark2_status: bool | None

    @property
    def valid(self) -> bool:
        return self.s_in_h_residual < 1e-8 and self.a_clearance > 0.0 and self.sign_constant


@dataclass(frozen=True, eq=False)
class SeparationResult:
    hyperplane: Hyperplane
    g: np.ndarray
    anchor_x: np.ndarray | None
    gauge_used: Seminorm | None
    steps: tuple[ExtensionStep, ...]
    certificate: SeparationCertificate


def _subspace_residual(s: Subspace, normal: np.ndarray) -> float:
    if s.dim == 0:
        return 0.0
    return float(np.max(np.abs(s.basis @ normal)))


def _closure_range(a_set: ConvexSet, normal: np.ndarray) -> tuple[float, float] | None:
    """(min, max) of ``normal . e`` over the closure; None when unavailable."""
    if isinstance(a_set, HPolyhedron):
        out = []
        for sign in (1.0, -1.0):
            res = solve_lp(sign * normal, a_ub=a_set.a, b_ub=a_set.b)
            if res.status == "unbounded":
                out.append(-np.inf)
            elif res.status == "optimal":
                out.append(float(res.objective))
            else:
                raise SolverError("clearance LP infeasible on a nonempty set")
        return out[0], -out[1]
    if isinstance(a_set, OpenBall):
        mid = float(normal @ a_set.center)
        return mid - a_set.radius, mid + a_set.radius
    return None


def _kernel_disjoint(a_set: ConvexSet, g: np.ndarray, seed: int = 0, samples: int = 2000) -> bool:
    """Does the kernel hyperplane of ``g`` avoid the open set?"""
    g = as_vector(g, a_set.dim)
    norm = float(np.linalg.norm(g))
    if norm <= 1e-12:
        raise DegenerateError("zero functional")
    normal = g / norm
    if isinstance(a_set, HPolyhedron):
        margin = _restricted_margin(a_set, eq_row=normal)
        return margin is None or margin <= 1e-9
    if isinstance(a_set, OpenBall):
        dist = abs(float(normal @ a_set.center))
        return bool(dist >= a_set.radius - 1e-9 * max(1.0, a_set.radius))
    pts = sample_interior(a_set, samples, seed)
    vals = pts @ normal
    return bool(np.all(vals > 0.0) or np.all(vals < 0.0))


def _restricted_margin(poly: HPolyhedron, *, basis: np.ndarray | None = None, eq_row: np.ndarray | None = None) -> float | None:
    """Deepest strict margin of the polyhedron's closure restricted to a
    subspace (coordinates ``basis``) and/or a hyperplane ``eq_row . e = 0``.

    None when even the closure is infeasible; values at or below ~1e-9 mean
    no strictly interior intersection exists.
    """
    n = poly.dim
    a, b = np.asarray(poly.a), np.asarray(poly.b)
    norms = np.linalg.norm(a, axis=1) if a.shape[0] else np.zeros(0)
    if basis is None:
        k = n
        a_c = a
        eq = eq_row[None, :] if eq_row is not None else None
    else:
        k = basis.shape[0]
        if k == 0:
            # restriction to {0}: the margin is the depth of the origin
            if a.shape[0] == 0:
                return 1.0
            return float(np.min(b / norms))
        a_c = a @ basis.T
        eq = (basis @ eq_row)[None, :] if eq_row is not None else None
    cost = np.zeros(k + 1)
    cost[-1] = -1.0
    rows = np.hstack([a_c, norms[:, None]]) if a.shape[0] else np.zeros((0, k + 1))
    cap_row = np.append(np.zeros(k), 1.0)
    a_ub = np.vstack([rows, cap_row[None, :]])
    b_ub = np.concatenate([b, [1.0]])
    a_eq = np.hstack([eq, np.zeros((1, 1))]) if eq is not None else None
    b_eq = np.zeros(1) if eq is not None else None
    res = solve_lp(cost, a_ub=a_ub, b_ub=b_ub, a_eq=a_eq, b_eq=b_eq)
    if res.status == "infeasible":
        return None
    if res.status != "optimal":
        raise SolverError(f"margin LP ended with status {res.status!r}")
    return float(res.x[-1])


def _check_disjoint(a_set: ConvexSet, s: Subspace, seed: int) -> None:
    """Raise InputError when the set demonstrably meets the subspace."""
    if s.dim == 0:
        if a_set.contains(np.zeros(a_set.dim)):
            raise InputError("the set contains the origin, which lies in the subspace")
        return
    if isinstance(a_set, HPolyhedron):
        margin = _restricted_margin(a_set, basis=np.asarray(s.basis))
        if margin is not None and margin > 1e-9:
            raise InputError("the set intersects the subspace (strict margin found by LP)")
        return
    if isinstance(a_set, OpenBall):
        dist = s.distance(a_set.center)
        # distance from the center to S below the radius means intersection
        if dist < a_set.radius - 1e-12:
            raise InputError("the ball intersects the subspace")
        return
    rng = np.random.default_rng(seed)
    coords = rng.uniform(-10.0, 10.0, size=(500, s.dim))
    for c in coords:
        if a_set.contains(c @ s.basis):
            raise InputError("sampling found a subspace point inside the set")


def _span_functional(s: Subspace, x: np.ndarray) -> tuple[Subspace, PartialFunctional]:
    """span(S + {x}) and the functional sending z + t*x to t."""
    span = span_basis(list(s.basis) + [x], s.ambient_dim)
    values = [decompose(u, s, x)[1] for u in span.basis]
    return span, PartialFunctional(span, np.array(values))


def _certificate(
    a_set: ConvexSet,
    s: Subspace,
    hyperplane: Hyperplane,
    opts: SeparationOptions,
    *,
    remark2: bool | None,
) -> SeparationCertificate:
    normal = np.asarray(hyperplane.normal)
    residual = _subspace_residual(s, normal)
    samples = sample_interior(a_set, opts.certificate_samples, opts.seed)
    vals = samples @ normal
    clearance = float(np.min(np.abs(vals)))
    closure = _closure_range(a_set, normal)
    if closure is None:
        margin = None
        sign_constant = bool(np.all(vals > 0.0) or np.all(vals < 0.0))
    else:
        vmin, vmax = closure
        margin = float(max(vmin, -vmax))
        sign_constant = margin >= -1e-9
    rng = np.random.default_rng(opts.seed + 1)
    alphas = rng.uniform(0.1, 10.0, size=vals.size)
    conic_ok = bool(np.all(np.abs(alphas * vals) > 0.0))
    return SeparationCertificate(residual, clearance, margin, sign_constant, conic_ok, remark2)


def separate(a_set: ConvexSet, s: Subspace, opts: SeparationOptions | None = None) -> SeparationResult:
    """Hyperplane containing ``s`` and disjoint from the open convex ``a_set``.

    Precondition: the set and the subspace are disjoint (checked exactly for
    polyhedra and balls, by sampling for oracles).  The empty set gets the
    trivial answer: any hyperplane through ``s``, built from the
    deterministic completion of its basis.
    """
    opts = opts or SeparationOptions()
    n = a_set.dim
    if s.ambient_dim != n:
        raise InputError("set and subspace dimensions disagree")
    empty = is_empty(a_set)
    if s.dim == n:
        if empty:
            raise DegenerateError("the subspace is the whole space; no hyperplane contains it")
        raise InputError("a full-dimensional subspace meets every nonempty set")
    if empty:
        normal = complement_basis(s)[0]
        hyper = Hyperplane(normal)
        cert = SeparationCertificate(_subspace_residual(s, normal), np.inf, None, True, True, None)
        return SeparationResult(hyper, np.array(normal), None, None, (), cert)
    _check_disjoint(a_set, s, opts.seed)
    if opts.x is not None:
        x = as_vector(opts.x, n)
        if not conic_hull_membership(a_set, x):
            raise InputError("supplied anchor is outside the conic hull of the set")
    else:
        x = pick_interior_point(a_set)
    body = build_D(a_set, x)
    p = gauge_from_symmetrized(body)
    if opts.gauge_tol is not None and hasattr(p, "tol"):
        p = type(p)(p.body, tol=opts.gauge_tol, cap=p.cap)
    _, functional = _span_functional(s, x)
    state = extend_full_state(functional, p, opts.gamma_rule, method=opts.interval_method, seed=opts.seed)
    g = functional_coefficients(state)
    if abs(float(g @ x) - 1.0) > 1e-8:
        raise SolverError("extension failed to send the anchor to 1")
    violation = domination_check(g, p, seed=opts.seed, trials=256)
    if violation > DOMINATION_TOL:
        raise SolverError(f"extension violates domination by {violation:.3e}")
    hyper = kernel_hyperplane(g)
    disjoint = _kernel_disjoint(a_set, g, seed=opts.seed)
    remark2 = (violation <= DOMINATION_TOL) == disjoint
    cert = _certificate(a_set, s, hyper, opts, remark2=remark2)
    return SeparationResult(hyper, g, x, p, state.history, cert)


def verify_separation(
    a_set: ConvexSet,
    s: Subspace,
    hyperplane: Hyperplane,
    *,
    g: np.ndarray | None = None,
    gauge_p: Seminorm | None = None,
    samples: int = 10_000,
    seed: int = 0,
) -> SeparationCertificate:
    """Independent certificate for a claimed separating hyperplane.

    ``remark2_status`` is only computed when both the unnormalized functional
    and the gauge are supplied; clearance and containment checks need neither.
    """
    opts = SeparationOptions(seed=seed, certificate_samples=samples)
    remark2 = None
    if g is not None and gauge_p is not None:
        dominated = domination_check(g, gauge_p, seed=seed, trials=max(256, samples // 10)) <= 1e-7
        disjoint = _kernel_disjoint(a_set, as_vector(g, a_set.dim), seed=seed)
        remark2 = dominated == disjoint
    return _certificate(a_set, s, hyperplane, opts, remark2=remark2)


def remark2_equivalence_check(
    a_set: ConvexSet,
    s: Subspace,
    x,
    p: Seminorm,
    g_candidate,
    *,
    seed: int = 0,
    trials: int = 500,
) -> tuple[bool, bool]:
    """(dominated?, kernel disjoint from the set?) for a candidate extension.

    The candidate must extend the pipeline functional: send ``x`` to 1 and
    vanish on ``s``.  Both booleans are computed independently; they agree
    for every candidate when the gauge really is the set's symmetrized gauge.
    """
    g = as_vector(g_candidate, a_set.dim)
    x = as_vector(x, a_set.dim)
    if abs(float(g @ x) - 1.0) > 1e-8:
        raise InputError("candidate does not send the anchor to 1")
    if s.dim and float(np.max(np.abs(s.basis @ g))) > 1e-8:
        raise InputError("candidate does not vanish on the subspace")
    dominated = domination_check(g, p, seed=seed, trials=trials) <= 1e-7
    disjoint = _kernel_disjoint(a_set, g, seed=seed)
    return dominated, disjoint


def brute_force_2d_normals(a_set: ConvexSet, grid: int = 1800) -> np.ndarray:
    """Admissible angles (radians in [0, pi)) of origin lines missing a 2-D set.

    Exact for balls (center distance test) and polyhedra (1-D interval
    intersection along the line); dense ray sampling for oracle sets.
    """
    if a_set.dim != 2:
        raise InputError("the angular oracle is 2-D only")
    if grid < 1:
        raise InputError("grid must be positive")
    thetas = np.arange(grid) * (np.pi / grid)
    if isinstance(a_set, OpenBall):
        normals = np.stack([-np.sin(thetas), np.cos(thetas)], axis=1)
        dist = np.abs(normals @ a_set.center)
        return thetas[dist >= a_set.radius]
    admissible = []
    for theta in thetas:
        d = np.array([np.cos(theta), np.sin(theta)])
        if isinstance(a_set, HPolyhedron):
            lo, hi = -np.inf, np.inf
            feasible = True
            for a_i, b_i in zip(a_set.a, a_set.b):
                den = float(a_i @ d)
                if den > 0.0:
                    hi = min(hi, b_i / den)
                elif den < 0.0:
                    lo = max(lo, b_i / den)
                elif not b_i > 0.0:
                    feasible = False
                    break
            hit = feasible and lo < hi
        else:
            bound = getattr(a_set, "ray_bound", 1e6)
            ts = np.geomspace(1e-3, bound, 64)
            hit = any(a_set.contains(t * sign * d) for t in ts for sign in (1.0, -1.0))
        if not hit:
            admissible.append(theta)
    return np.array(admissible)


def extend_via_separation(
    f: PartialFunctional,
    p: Seminorm,
    *,
    rule: str = "upper",
    seed: int = 0,
) -> np.ndarray:
    """Dominated extension recovered through the geometric route.

    Builds the open set ``{e : p(y - e) < 1}`` around the least-norm point
    ``y`` with ``f(y) = 1``, separates it from the kernel of ``f``, and reads
    the extension off the returned hyperplane via ``g(h + t y) = t``.  The
    result is verified to extend ``f`` and satisfy domination.
    """
    n = f.domain.ambient_dim
    if p.dim != n:
        raise InputError("seminorm and functional live in different dimensions")
    if f.is_zero():
        return np.zeros(n)
    for row, value in zip(f.domain.basis, f.values):
        if abs(value) > gauge(p, row) + 1e-7:
            raise InputError("functional is not dominated by the seminorm on its domain basis")
    v = np.asarray(f.values)
    y = (v @ f.domain.basis) / float(v @ v)
    ball = unit_ball(p)
    if isinstance(ball, HPolyhedron):
        a_set = HPolyhedron(-ball.a, ball.b - ball.a @ y, witness=y)
    else:
        a_set = OracleSet(n, lambda e: gauge(p, y - e) < 1.0, witness=y)
    coeff_kernel = complement_basis(span_basis([v], f.domain.dim))
    kernel_vectors = [c @ f.domain.basis for c in coeff_kernel]
    kernel = span_basis(kernel_vectors, n) if kernel_vectors else zero_subspace(n)
    result = separate(a_set, kernel, SeparationOptions(x=y, gamma_rule=rule, seed=seed, certificate_samples=500))
    normal = np.asarray(result.hyperplane.normal)
    denom = float(normal @ y)
    if abs(denom) < 1e-12:
        raise SolverError("separating hyperplane contains the normalizing point")
    g = normal / denom
    mismatch = float(np.max(np.abs(f.domain.basis @ g - v))) if f.domain.dim else 0.0
    if mismatch > 1e-8:
        raise SolverError(f"reconstructed functional fails to extend the input by {mismatch:.3e}")
    violation = domination_check(g, p, seed=seed, trials=256)
    if violation > DOMINATION_TOL:
        raise SolverError(f"reconstructed functional violates domination by {violation:.3e}")
    return g
