"""Dense two-phase simplex for the small linear programs behind gauges,
interior points, and certificates.

Bland's rule is used in both phases, so the solver cannot cycle; pivot
candidates are screened at ``PIVOT_TOL``.  Variables are free unless flagged
nonnegative, handled by the usual positive/negative split.  Problems here
have at most a few dozen rows, so a plain tableau is the right tool.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import SolverError

PIVOT_TOL = 1e-9


@dataclass
class LPResult:
    status: str  # "optimal" | "infeasible" | "unbounded"
    x: np.ndarray | None = None
    objective: float | None = None
    ray: np.ndarray | None = None  # improving direction when unbounded
    iterations: int = 0


def _bland_loop(tab, basis, cost, n_real, tol, max_iter):
    """Run simplex pivots in place; returns (status, entering_col, iters).

    ``n_real`` marks how many leading columns may enter the basis (artificial
    columns sit past it and are barred).
    """
    m = tab.shape[0]
    iters = 0
    while True:
        reduced = cost - cost[basis] @ tab[:, :-1]
        enter = -1
        for j in range(n_real):
            if reduced[j] < -tol:
                enter = j
                break
        if enter < 0:
            return "optimal", -1, iters
        col = tab[:, enter]
        rows = np.nonzero(col > tol)[0]
        if rows.size == 0:
            return "unbounded", enter, iters
        ratios = tab[rows, -1] / col[rows]
        rmin = ratios.min()
        near = rows[ratios <= rmin + 1e-12 * max(1.0, abs(rmin))]
        leave = min(near, key=lambda r: basis[r])  # Bland tie-break
        piv = tab[leave] / tab[leave, enter]
        factor = tab[:, enter].copy()
        tab -= np.outer(factor, piv)
        tab[leave] = piv
        basis[leave] = enter
        iters += 1
        if iters > max_iter:
            raise SolverError(f"simplex iteration limit ({max_iter}) exceeded; m={m}")


def solve_lp(
    c,
    a_ub=None,
    b_ub=None,
    a_eq=None,
    b_eq=None,
    nonneg=None,
    *,
    tol: float = PIVOT_TOL,
    max_iter: int = 20000,
) -> LPResult:
    """Minimize ``c . x`` subject to ``a_ub x <= b_ub`` and ``a_eq x = b_eq``.

    ``nonneg`` is an optional boolean mask; unmasked variables are free.
    Returns an LPResult whose ``ray`` holds an improving feasible direction
    when the problem is unbounded.
    """
    c = np.asarray(c, dtype=float).reshape(-1)
    n = c.size
    a_ub = np.zeros((0, n)) if a_ub is None else np.asarray(a_ub, dtype=float).reshape(-1, n)
    b_ub = np.zeros(0) if b_ub is None else np.asarray(b_ub, dtype=float).reshape(-1)
    a_eq = np.zeros((0, n)) if a_eq is None else np.asarray(a_eq, dtype=float).reshape(-1, n)
    b_eq = np.zeros(0) if b_eq is None else np.asarray(b_eq, dtype=float).reshape(-1)
    if a_ub.shape[0] != b_ub.size or a_eq.shape[0] != b_eq.size:
        raise SolverError("constraint matrix/vector shapes disagree")
    mask = np.zeros(n, dtype=bool) if nonneg is None else np.asarray(nonneg, dtype=bool).reshape(-1)

    # structural columns: x_i -> (+col) and, for free variables, (-col)
    col_var: list[tuple[int, float]] = []
    for i in range(n):
        col_var.append((i, 1.0))
        if not mask[i]:
            col_var.append((i, -1.0))
    ns = len(col_var)
    m_ub, m_eq = a_ub.shape[0], a_eq.shape[0]
    m = m_ub + m_eq

    full_a = np.vstack([a_ub, a_eq]) if m else np.zeros((0, n))
    body = np.zeros((m, ns))
    for j, (i, sign) in enumerate(col_var):
        body[:, j] = sign * full_a[:, i]
    slack = np.vstack([np.eye(m_ub), np.zeros((m_eq, m_ub))]) if m else np.zeros((0, m_ub))
    rhs = np.concatenate([b_ub, b_eq])
    flip = rhs < 0
    body[flip] *= -1.0
    slack[flip] *= -1.0
    rhs = np.abs(rhs)

    art_rows = [r for r in range(m) if not (r < m_ub and not flip[r])]
    n_real = ns + m_ub
    ncols = n_real + len(art_rows)
    tab = np.zeros((m, ncols + 1))
    tab[:, :ns] = body
    tab[:, ns:n_real] = slack
    tab[:, -1] = rhs
    basis = np.zeros(m, dtype=int)
    for r in range(m):
        if r < m_ub and not flip[r]:
            basis[r] = ns + r
    for k, r in enumerate(art_rows):
        tab[r, n_real + k] = 1.0
        basis[r] = n_real + k

    total_iters = 0
    if art_rows:
        cost1 = np.zeros(ncols)
        cost1[n_real:] = 1.0
        status, _, iters = _bland_loop(tab, basis, cost1, n_real, tol, max_iter)
        total_iters += iters
        if status != "optimal":
            raise SolverError("phase-1 objective unbounded; malformed constraints")
        resid = float(cost1[basis] @ tab[:, -1])
        if resid > 1e-7 * max(1.0, float(np.max(rhs, initial=0.0))):
            return LPResult("infeasible", iterations=total_iters)
        # drive artificials out of the basis; drop redundant rows
        keep = np.ones(m, dtype=bool)
        for r in range(m):
            if basis[r] < n_real:
                continue
            pivot_col = -1
            for j in range(n_real):
                if abs(tab[r, j]) > tol:
                    pivot_col = j
                    break
            if pivot_col < 0:
                keep[r] = False
                continue
            piv = tab[r] / tab[r, pivot_col]
            factor = tab[:, pivot_col].copy()
            tab -= np.outer(factor, piv)
            tab[r] = piv
            basis[r] = pivot_col
        tab = tab[keep]
        basis = basis[keep]
        m = tab.shape[0]
        tab = np.hstack([tab[:, :n_real], tab[:, -1:]])

    cost2 = np.zeros(tab.shape[1] - 1)
    for j, (i, sign) in enumerate(col_var):
        cost2[j] = sign * c[i]
    status, enter, iters = _bland_loop(tab, basis, cost2, n_real, tol, max_iter)
    total_iters += iters

    def to_x(column_values: np.ndarray) -> np.ndarray:
        x = np.zeros(n)
        for j, (i, sign) in enumerate(col_var):
            x[i] += sign * column_values[j]
        return x

    if status == "unbounded":
        direction = np.zeros(n_real)
        direction[enter] = 1.0
        for r in range(m):
            if basis[r] < n_real:
                direction[basis[r]] = -tab[r, enter]
        return LPResult("unbounded", ray=to_x(direction), iterations=total_iters)

    values = np.zeros(n_real)
    for r in range(m):
        if basis[r] < n_real:
            values[basis[r]] = tab[r, -1]
    x = to_x(values)
    return LPResult("optimal", x=x, objective=float(c @ x), iterations=total_iters)
