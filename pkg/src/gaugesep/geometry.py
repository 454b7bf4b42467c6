"""Exact-tolerance linear algebra: subspaces, partial functionals, hyperplanes.

Subspaces carry orthonormal bases (modified Gram-Schmidt with one
re-orthogonalization pass) so membership questions reduce to projector
residuals governed by a single knob, ``TOL_MEMBERSHIP``.  Tolerances are
absolute and calibrated for unit-scale data; callers working at other scales
should rescale first.

Full-space functionals are plain coefficient vectors against the standard
basis.  Everything here is an immutable value and every operation is pure.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateError, InputError

TOL_MEMBERSHIP = 1e-9
TOL_ORTHO = 1e-10
TOL_DEPENDENT = 1e-8  # Gram-Schmidt candidate rejection threshold


def as_vector(values, dim: int | None = None) -> np.ndarray:
    """Coerce ``values`` to a finite 1-D float array, optionally checking length."""
    v = np.array(values, dtype=float)
    if v.ndim != 1:
        raise InputError(f"expected a 1-D vector, got array of shape {v.shape}")
    if v.size == 0:
        raise InputError("vectors must have positive dimension")
    if dim is not None and v.size != dim:
        raise InputError(f"dimension mismatch: expected {dim}, got {v.size}")
    if not np.all(np.isfinite(v)):
        raise InputError("vector entries must be finite")
    return v


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class Subspace:
    """A linear subspace of R^n held as orthonormal basis rows.

    ``basis`` has shape ``(dim, ambient_dim)``; ``dim`` may be zero.
    """

    ambient_dim: int
    basis: np.ndarray

    def __post_init__(self):
        if self.ambient_dim < 1:
            raise InputError("ambient dimension must be positive")
        basis = np.asarray(self.basis, dtype=float).reshape(-1, self.ambient_dim)
        if basis.shape[0] > self.ambient_dim:
            raise InputError("subspace dimension exceeds ambient dimension")
        gram = basis @ basis.T
        if basis.shape[0] and np.max(np.abs(gram - np.eye(basis.shape[0]))) > 1e2 * TOL_ORTHO:
            raise InputError("basis rows are not orthonormal; build with span_basis()")
        object.__setattr__(self, "basis", _frozen(basis))

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def project(self, y: np.ndarray) -> np.ndarray:
        y = as_vector(y, self.ambient_dim)
        if self.dim == 0:
            return np.zeros(self.ambient_dim)
        return self.basis.T @ (self.basis @ y)

    def distance(self, y: np.ndarray) -> float:
        y = as_vector(y, self.ambient_dim)
        return float(np.linalg.norm(y - self.project(y)))

    def contains(self, y, tol: float = TOL_MEMBERSHIP) -> bool:
        y = as_vector(y, self.ambient_dim)
        return self.distance(y) <= tol * max(1.0, float(np.linalg.norm(y)))

    def projector_matrix(self) -> np.ndarray:
        """The n-by-n orthogonal projector onto the subspace."""
        return self.basis.T @ self.basis


def zero_subspace(ambient_dim: int) -> Subspace:
    return Subspace(ambient_dim, np.zeros((0, ambient_dim)))


def span_basis(vectors, ambient_dim: int | None = None) -> Subspace:
    """Orthonormalize ``vectors`` into a Subspace, compressing rank deficiency.

    Uses modified Gram-Schmidt with a second re-orthogonalization pass.
    Candidates whose residual falls below ``TOL_DEPENDENT`` (relative to their
    own norm) are dropped.
    """
    vecs = [as_vector(v) for v in vectors]
    dims = {v.size for v in vecs}
    if len(dims) > 1:
        raise InputError(f"vectors have mismatched dimensions: {sorted(dims)}")
    if ambient_dim is None:
        if not vecs:
            raise InputError("ambient_dim is required for an empty span")
        ambient_dim = vecs[0].size
    elif dims and dims != {ambient_dim}:
        raise InputError(f"vectors of dimension {dims.pop()} in ambient R^{ambient_dim}")

    rows: list[np.ndarray] = []
    for v in vecs:
        w = v.copy()
        for _ in range(2):
            for u in rows:
                w = w - (u @ w) * u
        norm = float(np.linalg.norm(w))
        if norm > TOL_DEPENDENT * max(1.0, float(np.linalg.norm(v))):
            rows.append(w / norm)
    return Subspace(ambient_dim, np.array(rows).reshape(len(rows), ambient_dim))


def complement_basis(s: Subspace) -> list[np.ndarray]:
    """Orthonormal completion of ``s`` to all of R^n.

    Deterministic: Gram-Schmidt over the standard basis vectors in index
    order, skipping near-dependent candidates.  Together with ``s.basis`` the
    returned vectors form an orthonormal basis of the ambient space.
    """
    accepted = [np.asarray(row) for row in s.basis]
    out: list[np.ndarray] = []
    for j in range(s.ambient_dim):
        w = np.zeros(s.ambient_dim)
        w[j] = 1.0
        for _ in range(2):
            for u in accepted:
                w = w - (u @ w) * u
        norm = float(np.linalg.norm(w))
        if norm > TOL_DEPENDENT:
            u = w / norm
            accepted.append(u)
            out.append(u)
    return out


def decompose(y, s: Subspace, x) -> tuple[np.ndarray, float]:
    """Split ``y = z + t*x`` with ``z`` in ``s``; returns (coords of z, t).

    ``x`` must lie outside ``s`` and ``y`` inside span(s + {x}); the split is
    then unique.  Coordinates are against ``s.basis``.
    """
    y = as_vector(y, s.ambient_dim)
    x = as_vector(x, s.ambient_dim)
    x_perp = x - s.project(x)
    nx = float(np.linalg.norm(x_perp))
    if nx <= TOL_MEMBERSHIP * max(1.0, float(np.linalg.norm(x))):
        raise DegenerateError("direction vector lies in the subspace; decomposition is not unique")
    y_perp = y - s.project(y)
    t = float(y_perp @ x_perp) / (nx * nx)
    z = y - t * x
    coords = s.basis @ z if s.dim else np.zeros(0)
    recon = (coords @ s.basis if s.dim else 0.0) + t * x
    resid = float(np.max(np.abs(y - recon))) if y.size else 0.0
    if resid > TOL_MEMBERSHIP * max(1.0, float(np.max(np.abs(y)))):
        raise InputError(f"point is outside span(S + {{x}}): residual {resid:.3e}")
    return coords, t


@dataclass(frozen=True, eq=False)
class PartialFunctional:
    """A linear functional on a subspace: one value per basis row of ``domain``."""

    domain: Subspace
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float).reshape(-1)
        if values.size != self.domain.dim:
            raise InputError(
                f"need {self.domain.dim} values for a {self.domain.dim}-dimensional domain, got {values.size}"
            )
        if values.size and not np.all(np.isfinite(values)):
            raise InputError("functional values must be finite")
        object.__setattr__(self, "values", _frozen(values))

    def __call__(self, y) -> float:
        y = as_vector(y, self.domain.ambient_dim)
        if not self.domain.contains(y):
            raise InputError("point is outside the functional's domain")
        if self.domain.dim == 0:
            return 0.0
        return float((self.domain.basis @ y) @ self.values)

    def is_zero(self) -> bool:
        return self.domain.dim == 0 or bool(np.all(self.values == 0.0))

    def as_coefficients(self) -> np.ndarray:
        """Minimum-norm full-space coefficient vector agreeing on the domain."""
        if self.domain.dim == 0:
            return np.zeros(self.domain.ambient_dim)
        return self.values @ self.domain.basis


@dataclass(frozen=True, eq=False)
class Hyperplane:
    """A hyperplane through the origin: the kernel of ``normal . e``."""

    normal: np.ndarray
    through_origin: bool = True

    def __post_init__(self):
        normal = as_vector(self.normal)
        norm = float(np.linalg.norm(normal))
        if abs(norm - 1.0) > TOL_ORTHO:
            raise InputError("hyperplane normal must be unit length; use kernel_hyperplane()")
        object.__setattr__(self, "normal", _frozen(normal))

    @property
    def dim(self) -> int:
        return self.normal.size

    def contains(self, e, tol: float = TOL_MEMBERSHIP) -> bool:
        e = as_vector(e, self.normal.size)
        return abs(float(self.normal @ e)) <= tol * max(1.0, float(np.linalg.norm(e)))

    def subspace(self) -> Subspace:
        """The hyperplane as an (n-1)-dimensional Subspace."""
        normal_span = span_basis([self.normal])
        return Subspace(self.dim, np.array(complement_basis(normal_span)))


def kernel_hyperplane(g) -> Hyperplane:
    """Hyperplane ``{e : g . e = 0}`` for a nonzero coefficient vector ``g``."""
    g = as_vector(g)
    norm = float(np.linalg.norm(g))
    if norm <= 1e-12:
        raise DegenerateError("the zero functional has no kernel hyperplane")
    return Hyperplane(g / norm)
