"""Small dense complex linear algebra.

Vectors (``CVec``) and matrices (``CMat``) are plain complex128 numpy arrays of
rank 1 and 2. The helpers here validate shapes and finiteness and implement the
handful of operations the walk modules need on 3x3 to 7x7 effective operators.
"""

import numpy as np

ORTHONORMAL_TOL = 1e-12
CLOSURE_TOL = 1e-10
ANALYTIC_TOL = 1e-8


class DimensionError(ValueError):
    """Operand shapes are incompatible."""


class ConsistencyError(RuntimeError):
    """An internal algebraic check (orthonormality, closure) failed."""


def cvec(entries):
    v = np.asarray(entries, dtype=np.complex128)
    if v.ndim != 1 or v.size == 0:
        raise DimensionError(f"expected a non-empty 1-D vector, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise ValueError("vector has non-finite entries")
    return v


def cmat(entries):
    m = np.asarray(entries, dtype=np.complex128)
    if m.ndim != 2 or m.size == 0:
        raise DimensionError(f"expected a non-empty 2-D matrix, got shape {m.shape}")
    return m


def _square(m):
    m = cmat(m)
    if m.shape[0] != m.shape[1]:
        raise DimensionError(f"matrix is not square: {m.shape}")
    return m


def identity(n):
    return np.eye(n, dtype=np.complex128)


def norm(v):
    return float(np.linalg.norm(v))


def inner(u, v):
    """<u|v>, conjugate-linear in the first argument."""
    u, v = cvec(u), cvec(v)
    if u.size != v.size:
        raise DimensionError(f"dimension mismatch: {u.size} vs {v.size}")
    return complex(np.vdot(u, v))


def matvec(m, v):
    m, v = cmat(m), cvec(v)
    if m.shape[1] != v.size:
        raise DimensionError(f"cannot apply {m.shape} matrix to vector of length {v.size}")
    return m @ v


def unitarity_defect(m):
    """Max-norm of ``m^dagger m - I``."""
    m = _square(m)
    return float(np.max(np.abs(m.conj().T @ m - identity(m.shape[0]))))


def lu_factor(m):
    """Partial-pivot LU. Returns ``(lu, perm, sign)`` with ``m[perm] = L U``.

    ``lu`` stores unit-lower L below the diagonal and U on and above it.
    Singular pivots are kept as exact zeros rather than raising, so ``det``
    returns 0 for singular input.
    """
    lu = _square(m).copy()
    n = lu.shape[0]
    perm = np.arange(n)
    sign = 1.0
    for k in range(n):
        p = k + int(np.argmax(np.abs(lu[k:, k])))
        if p != k:
            lu[[k, p]] = lu[[p, k]]
            perm[[k, p]] = perm[[p, k]]
            sign = -sign
        pivot = lu[k, k]
        if pivot == 0:
            continue
        lu[k + 1:, k] /= pivot
        lu[k + 1:, k + 1:] -= np.outer(lu[k + 1:, k], lu[k, k + 1:])
    return lu, perm, sign


def lu_solve(factor, b):
    lu, perm, _ = factor
    n = lu.shape[0]
    x = cvec(b)[perm].copy()
    if x.size != n:
        raise DimensionError(f"right-hand side has length {x.size}, expected {n}")
    for i in range(1, n):
        x[i] -= lu[i, :i] @ x[:i]
    for i in range(n - 1, -1, -1):
        x[i] = (x[i] - lu[i, i + 1:] @ x[i + 1:]) / lu[i, i]
    return x


def det(m):
    m = _square(m)
    if m.shape[0] > 8:
        raise DimensionError("det is meant for matrices of dimension <= 8")
    lu, _, sign = lu_factor(m)
    return complex(sign * np.prod(np.diagonal(lu)))


def gram(basis):
    b = np.array([cvec(v) for v in basis])
    return b.conj() @ b.T


def orthonormality_defect(basis):
    g = gram(basis)
    return float(np.max(np.abs(g - identity(g.shape[0]))))


def projection_residual(basis, v):
    """Norm of the component of ``v`` orthogonal to span(``basis``)."""
    v = cvec(v)
    if any(len(b) != v.size for b in basis):
        raise DimensionError("basis vectors and v have different dimensions")
    defect = orthonormality_defect(basis)
    if defect > ORTHONORMAL_TOL:
        raise ValueError(f"basis is not orthonormal (defect {defect:.3e})")
    b = np.array(basis, dtype=np.complex128)
    coeffs = b.conj() @ v
    return norm(v - b.T @ coeffs)


def inverse_iteration(m, eigenvalue, iterations=3, start=None):
    """Unit eigenvector of ``m`` for an (already accurate) ``eigenvalue``.

    The shifted matrix is singular to rounding, so the pivot that would be
    exactly zero is replaced by a tiny value; each solve then amplifies the
    wanted direction by ~1e16.
    """
    m = _square(m)
    n = m.shape[0]
    lu, perm, sign = lu_factor(m - eigenvalue * identity(n))
    scale = max(float(np.max(np.abs(lu))), 1.0)
    tiny = np.abs(np.diagonal(lu)) < 1e-300
    lu[tiny, tiny] = 1e-300 * scale
    x = np.ones(n, dtype=np.complex128) if start is None else cvec(start).copy()
    for _ in range(iterations):
        x = lu_solve((lu, perm, sign), x)
        x /= np.linalg.norm(x)
    # fix the global phase: largest component real and positive
    k = int(np.argmax(np.abs(x)))
    return x * (abs(x[k]) / x[k])
