"""Small fixed-dimension linear programs.

Seidel's randomized incremental algorithm over a bounding box.  Each
violated constraint sends the search onto its hyperplane; the hyperplane
is parametrized by eliminating the variable with the largest coefficient,
so the surviving variables keep an axis-aligned box and the eliminated
variable's box turns into two ordinary constraints.  Expected time is
linear in the number of constraints for a fixed number of variables.
"""

import numpy as np

from .errors import InfeasibleProgram


def _slack(a, b, x, tol):
    return tol * (1.0 + abs(b) + float(np.abs(a) @ np.abs(x)))


def _solve_1d(a, b, c, lo, hi, tol):
    scale = max(1.0, float(np.max(np.abs(a))) if a.size else 1.0)
    tiny = 1e-13 * scale
    pos = a > tiny
    neg = a < -tiny
    flat = ~(pos | neg)
    # b of a flat row carries the rounding of every elimination step, which
    # scales with the largest right-hand side and box bound around
    noise = 1e3 * tol * (1.0 + float(np.max(np.abs(b))) + max(abs(lo), abs(hi)))
    if np.any(b[flat] < -noise):
        raise InfeasibleProgram("constraint 0 <= b with b < 0")
    if np.any(pos):
        hi = min(hi, float(np.min(b[pos] / a[pos])))
    if np.any(neg):
        lo = max(lo, float(np.max(b[neg] / a[neg])))
    if lo > hi:
        if lo - hi > tol * (1.0 + abs(lo) + abs(hi)) * 1e3:
            raise InfeasibleProgram(f"empty interval [{lo}, {hi}]")
        mid = 0.5 * (lo + hi)
        return np.array([mid])
    return np.array([hi if c < 0 else lo])


def _solve(A, b, c, lo, hi, order, rng, tol):
    k = c.shape[0]
    if k == 1:
        idx = np.asarray(order, dtype=int)
        return _solve_1d(A[idx, 0], b[idx], float(c[0]), float(lo[0]), float(hi[0]), tol)

    x = np.where(c < 0, hi, lo).astype(float)
    for pos, i in enumerate(order):
        a = A[i]
        if a @ x <= b[i] + _slack(a, b[i], x, tol):
            continue
        x = _on_hyperplane(A, b, c, lo, hi, i, order[:pos], rng, tol)
    return x


def _on_hyperplane(A, b, c, lo, hi, i, previous, rng, tol):
    a = A[i]
    j = int(np.argmax(np.abs(a)))
    aj = a[j]
    if abs(aj) <= 1e-300:
        raise InfeasibleProgram("violated constraint with zero normal")
    keep = np.array([t for t in range(a.shape[0]) if t != j])
    ratio = a[keep] / aj
    base = b[i] / aj

    prev = np.asarray(previous, dtype=int)
    A_prev = A[prev]
    A_sub = A_prev[:, keep] - np.outer(A_prev[:, j], ratio)
    b_sub = b[prev] - A_prev[:, j] * base

    # the eliminated variable still has to respect its box
    box_rows = np.vstack([-ratio, ratio])
    box_rhs = np.array([hi[j] - base, base - lo[j]])

    A2 = np.vstack([box_rows, A_sub])
    b2 = np.concatenate([box_rhs, b_sub])
    tail = np.arange(2, A2.shape[0])
    rng.shuffle(tail)
    order2 = [0, 1] + tail.tolist()

    c_sub = c[keep] - c[j] * ratio
    y = _solve(A2, b2, c_sub, lo[keep], hi[keep], order2, rng, tol)
    x = np.empty(a.shape[0])
    x[keep] = y
    x[j] = base - ratio @ y
    return x


def seidel_lp(A, b, c, lower, upper, seed=0, tol=1e-12):
    """Minimize ``c @ x`` subject to ``A @ x <= b`` and ``lower <= x <= upper``.

    Constraints are inserted in a random order drawn from ``seed``; the same
    seed always produces the same result bits.  Raises InfeasibleProgram
    when the feasible set is (numerically) empty.
    """
    A = np.atleast_2d(np.asarray(A, dtype=float))
    b = np.asarray(b, dtype=float).ravel()
    c = np.asarray(c, dtype=float).ravel()
    lower = np.asarray(lower, dtype=float).ravel()
    upper = np.asarray(upper, dtype=float).ravel()
    if A.shape[0] == 0:
        return np.where(c < 0, upper, lower).astype(float)
    rng = np.random.default_rng(seed)
    order = rng.permutation(A.shape[0]).tolist()
    return _solve(A, b, c, lower, upper, order, rng, tol)


def lexmin(A, b, objectives, lower, upper, seed=0, tol=1e-12, fix_tol=1e-13):
    """Lexicographic minimum of ``objectives`` over ``A @ x <= b`` and the box.

    Each objective is optimized with all earlier ones pinned at their optimum
    (up to a relative slack of ``fix_tol``), which makes the result unique and
    independent of the insertion order.
    """
    A = np.atleast_2d(np.asarray(A, dtype=float))
    b = np.asarray(b, dtype=float).ravel()
    rows = [A]
    rhs = [b]
    x = None
    for k, f in enumerate(objectives):
        f = np.asarray(f, dtype=float).ravel()
        x = seidel_lp(np.vstack(rows), np.concatenate(rhs), f, lower, upper,
                      seed=seed + k, tol=tol)
        value = float(f @ x)
        rows.append(f[None, :])
        rhs.append(np.array([value + fix_tol * (1.0 + abs(value))]))
    return x
