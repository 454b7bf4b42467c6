"""Seeded instance generators and independent reference computations.

The references here are deliberately different algorithms from the package
code: the gauge reference solves the cone-exit quadratic in closed form, and
the LP reference enumerates basic feasible points.
"""

from __future__ import annotations

from itertools import combinations

import numpy as np

from gaugesep import (
    HPolyhedron,
    OpenBall,
    PartialFunctional,
    PolyhedralGauge,
    Subspace,
    span_basis,
    zero_subspace,
)


def random_subspace(rng: np.random.Generator, n: int, dim: int) -> Subspace:
    if dim == 0:
        return zero_subspace(n)
    while True:
        candidate = span_basis(list(rng.normal(size=(dim, n))), n)
        if candidate.dim == dim:
            return candidate


def random_ball_instance(rng: np.random.Generator, n: int) -> tuple[OpenBall, Subspace]:
    """A ball and a subspace that are disjoint by construction."""
    while True:
        s_dim = int(rng.integers(0, n - 1))
        s = random_subspace(rng, n, s_dim)
        center = rng.normal(size=n) * 2.0
        clearance = float(np.linalg.norm(center - s.project(center)))
        if clearance < 0.5:
            continue
        radius = float(rng.uniform(0.3, 0.85)) * clearance
        return OpenBall(center, radius), s


def random_polytope_instance(rng: np.random.Generator, n: int) -> tuple[HPolyhedron, Subspace]:
    """A bounded polytope and a subspace that are disjoint by construction.

    The polytope sits inside a ball of radius 0.8 * dist(center, S), so the
    separation precondition holds with real margin.
    """
    while True:
        s_dim = int(rng.integers(0, n - 1))
        s = random_subspace(rng, n, s_dim)
        center = rng.normal(size=n) * 2.0
        clearance = float(np.linalg.norm(center - s.project(center)))
        if clearance < 0.5:
            continue
        half = 0.8 * clearance / np.sqrt(n)
        rows, offs = [], []
        for j in range(n):
            e = np.zeros(n)
            e[j] = 1.0
            rows.extend([e, -e])
            offs.extend([center[j] + half, -center[j] + half])
        for _ in range(int(rng.integers(1, 4))):
            direction = rng.normal(size=n)
            norm = float(np.linalg.norm(direction))
            if norm < 1e-9:
                continue
            direction = direction / norm
            rows.append(direction)
            offs.append(float(direction @ center) + float(rng.uniform(0.3, 0.9)) * half)
        return HPolyhedron(np.array(rows), np.array(offs)), s


def random_instance(rng: np.random.Generator, n: int):
    if rng.uniform() < 0.5:
        return random_ball_instance(rng, n)
    return random_polytope_instance(rng, n)


def random_polyhedral_gauge(rng: np.random.Generator, n: int, max_pairs: int = 4) -> PolyhedralGauge:
    """A balanced polyhedral gauge (rows in +/- pairs); may have a kernel."""
    while True:
        k = int(rng.integers(1, max_pairs + 1))
        a = rng.normal(size=(k, n))
        if np.any(np.linalg.norm(a, axis=1) < 1e-6):
            continue
        b = rng.uniform(0.5, 2.0, size=k)
        return PolyhedralGauge(np.vstack([a, -a]), np.concatenate([b, b]))


def dominated_functional(
    rng: np.random.Generator, p: PolyhedralGauge, dim_l: int
) -> tuple[PartialFunctional, np.ndarray]:
    """A partial functional dominated by ``p`` plus a global witness extension.

    Any combination sum(lambda_i * a_i / b_i) with sum |lambda_i| < 1 is
    dominated because the rows come in +/- pairs.
    """
    n = p.dim
    lam = rng.normal(size=p.a.shape[0])
    lam *= rng.uniform(0.2, 0.95) / np.sum(np.abs(lam))
    witness = lam @ (p.a / p.b[:, None])
    domain = random_subspace(rng, n, dim_l)
    functional = PartialFunctional(domain, domain.basis @ witness)
    return functional, witness


def cone_exit(kappa2: float, c: np.ndarray, x: np.ndarray, e: np.ndarray) -> float:
    """Smallest s > 0 where ``x + s e`` leaves the circular cone
    ``{v : (v.c)^2 > kappa2 |v|^2, v.c > 0}``; inf when the ray never exits."""
    alpha = kappa2 * float(e @ e) - float(e @ c) ** 2
    beta = 2.0 * (kappa2 * float(x @ e) - float(x @ c) * float(e @ c))
    gamma0 = kappa2 * float(x @ x) - float(x @ c) ** 2  # negative: x interior
    if abs(alpha) < 1e-14:
        return -gamma0 / beta if beta > 0 else np.inf
    disc = beta * beta - 4.0 * alpha * gamma0
    if disc <= 0.0:
        return np.inf
    sqrt_disc = np.sqrt(disc)
    roots = sorted([(-beta - sqrt_disc) / (2 * alpha), (-beta + sqrt_disc) / (2 * alpha)])
    if roots[0] > 0.0:
        return roots[0]
    if alpha > 0.0:
        return roots[1] if roots[1] > 0.0 else np.inf
    return np.inf


def ball_pipeline_gauge_reference(ball: OpenBall, anchor: np.ndarray, e: np.ndarray) -> float:
    """Closed-form gauge of ``(B - x) ∩ (x - B)`` for the cone over a ball.

    Independent of the bisection code path: solves the exit quadratic.
    Requires the origin outside the closed ball (pointed cone).
    """
    c = np.asarray(ball.center, dtype=float)
    kappa2 = float(c @ c) - ball.radius**2
    assert kappa2 > 0.0, "reference needs a pointed cone"
    e = np.asarray(e, dtype=float)
    if not np.any(e):
        return 0.0
    out = 0.0
    for direction in (e, -e):
        exit_s = cone_exit(kappa2, c, np.asarray(anchor, dtype=float), direction)
        out = max(out, 0.0 if np.isinf(exit_s) else 1.0 / exit_s)
    return out


def lp_vertex_reference(c, a_ub, b_ub) -> tuple[float, np.ndarray]:
    """Brute-force LP minimum over basic feasible points (bounded problems).

    Enumerates every n-subset of rows, solves the equality system, filters by
    feasibility, and takes the best objective.
    """
    c = np.asarray(c, dtype=float)
    a = np.asarray(a_ub, dtype=float)
    b = np.asarray(b_ub, dtype=float)
    n = c.size
    best = (np.inf, None)
    for subset in combinations(range(a.shape[0]), n):
        m = a[list(subset)]
        if abs(np.linalg.det(m)) < 1e-10:
            continue
        x = np.linalg.solve(m, b[list(subset)])
        if np.all(a @ x <= b + 1e-8):
            value = float(c @ x)
            if value < best[0]:
                best = (value, x)
    assert best[1] is not None, "no feasible vertex found"
    return best
