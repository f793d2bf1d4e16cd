"""Matrix-free step kernels.

Every kernel comes in two flavours with identical signatures: a vectorised
numpy version and an explicit-loop version compiled with numba. The loop
version is importable as plain Python when numba is absent, which is slow but
correct. The module-level names without suffix (``star_step``, ...) point at
whichever backend :mod:`qwtransfer._accel` selected.

All kernels write into a caller-supplied ``out`` array which must not alias
the input. Arrays are complex128. Marked labels ``s`` and ``r`` are 0-based.
"""

import numpy as np

from qwtransfer._accel import USE_NUMBA, njit


# --- star graph ------------------------------------------------------------
# Layout: a[0:N] holds |j,0> (outer vertex j), a[N:2N] holds |0,j> (centre, coin j).


def star_step_numpy(a, s, r, out):
    n = a.shape[0] // 2
    outer = a[:n]
    centre = a[n:]
    out[n:] = outer
    out[n + s] = -outer[s]
    out[n + r] = -outer[r]
    out[:n] = (2.0 / n) * centre.sum() - centre
    return out


def _star_step_loops(a, s, r, out):
    n = a.shape[0] // 2
    total = 0j
    for k in range(n):
        total += a[n + k]
    mean2 = 2.0 * total / n
    for j in range(n):
        out[j] = mean2 - a[n + j]
        out[n + j] = a[j]
    out[n + s] = -a[s]
    out[n + r] = -a[r]
    return out


# --- complete graph with self-loops ----------------------------------------
# a[i, j]: position i, coin j. Coin: Grover per row, rows s and r negated.
# Shift: |i,j> -> |j,i>.


def cl_step_numpy(a, s, r, out):
    n = a.shape[0]
    coined = (2.0 / n) * a.sum(axis=1)[:, None] - a
    coined[s] *= -1.0
    coined[r] *= -1.0
    out[...] = coined.T
    return out


_BLOCK = 64


def _cl_step_loops(a, s, r, out):
    n = a.shape[0]
    mean2 = np.empty(n, dtype=np.complex128)
    for i in range(n):
        total = 0j
        for j in range(n):
            total += a[i, j]
        m = 2.0 * total / n
        if i == s or i == r:
            mean2[i] = -m
        else:
            mean2[i] = m
    # blocked transpose keeps both read and write strides cache-resident
    for i0 in range(0, n, _BLOCK):
        i1 = min(i0 + _BLOCK, n)
        for j0 in range(0, n, _BLOCK):
            j1 = min(j0 + _BLOCK, n)
            for i in range(i0, i1):
                m = mean2[i]
                neg = i == s or i == r
                for j in range(j0, j1):
                    if neg:
                        out[j, i] = m + a[i, j]
                    else:
                        out[j, i] = m - a[i, j]
    return out


# --- Szegedy walk with queries on the complete graph -------------------------
# a[i, j]: i vertex of the original graph, j vertex of the copy.
# U = R_B R_A R_M with p_ij = (1 - delta_ij) / (N - 1).


def query_reflect(a, s, r):
    """R_M: negate the rows of the two marked vertices."""
    out = a.copy()
    out[s] *= -1.0
    out[r] *= -1.0
    return out


def row_reflect(a):
    """R_A: reflect each row about its off-diagonal uniform vector Phi_i."""
    n = a.shape[0]
    diag = np.diagonal(a).copy()
    mean2 = 2.0 * (a.sum(axis=1) - diag) / (n - 1)
    out = mean2[:, None] - a
    np.fill_diagonal(out, -diag)
    return out


def col_reflect(a):
    """R_B: reflect each column about its off-diagonal uniform vector Psi_j."""
    return row_reflect(a.T).T.copy()


def sz_step_numpy(a, s, r, out):
    out[...] = col_reflect(row_reflect(query_reflect(a, s, r)))
    return out


def _sz_step_loops(a, s, r, out):
    n = a.shape[0]
    inv = 1.0 / (n - 1)
    colsum = np.zeros(n, dtype=np.complex128)
    # pass 1: R_A R_M into out, accumulating off-diagonal column sums
    for i in range(n):
        sign = -1.0 if (i == s or i == r) else 1.0
        total = 0j
        for j in range(n):
            total += a[i, j]
        m2 = sign * 2.0 * (total - a[i, i]) * inv
        for j in range(n):
            v = m2 - sign * a[i, j]
            out[i, j] = v
            if j != i:
                colsum[j] += v
        out[i, i] = -sign * a[i, i]
    # pass 2: R_B in place
    for j in range(n):
        colsum[j] = 2.0 * colsum[j] * inv
    for i in range(n):
        for j in range(n):
            if j == i:
                out[i, i] = -out[i, i]
            else:
                out[i, j] = colsum[j] - out[i, j]
    return out


star_step_numba = njit(_star_step_loops)
cl_step_numba = njit(_cl_step_loops)
sz_step_numba = njit(_sz_step_loops)

if USE_NUMBA:
    star_step = star_step_numba
    cl_step = cl_step_numba
    sz_step = sz_step_numba
else:
    star_step = star_step_numpy
    cl_step = cl_step_numpy
    sz_step = sz_step_numpy

BACKENDS = {
    "numpy": {"star": star_step_numpy, "complete-loops": cl_step_numpy, "szegedy": sz_step_numpy},
    "numba": {"star": star_step_numba, "complete-loops": cl_step_numba, "szegedy": sz_step_numba},
}
