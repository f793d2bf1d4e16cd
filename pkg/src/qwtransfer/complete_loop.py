"""Coined walk on the complete graph with a self-loop at every vertex.

States are flat vectors of length N^2; entry ``i*N + j`` is the amplitude of
``|i,j>`` with i the position and j the coin (both 0-based here). Two steps of
the walk act on a 5-dimensional invariant subspace spanned by the alpha
vectors built below.
"""

from dataclasses import dataclass
from typing import ClassVar

import numpy as np

from qwtransfer import kernels
from qwtransfer.base import WalkModel, nearest_even_peak
from qwtransfer.smallmat import (
    CLOSURE_TOL,
    ORTHONORMAL_TOL,
    ConsistencyError,
    orthonormality_defect,
    projection_residual,
)
from qwtransfer.spectral import SpectralData
from qwtransfer.star import star_omega


@dataclass(frozen=True)
class CompleteLoopModel(WalkModel):
    family: ClassVar[str] = "complete-loops"
    min_n: ClassVar[int] = 5
    period: ClassVar[int] = 2

    @property
    def dim(self):
        return self.N * self.N

    def step(self, state, out=None):
        return cl_step(self, state, out)

    def initial(self):
        return cl_initial(self)

    def target(self):
        return cl_target(self)

    def alpha_basis(self):
        return cl_alpha_basis(self)

    def effective(self):
        return cl_effective(self)

    def spectrum(self):
        return cl_spectrum(self)

    def fidelity_analytic(self, t):
        return cl_fidelity_analytic(self, t)

    def transfer_time(self):
        return cl_transfer_time(self)


def cl_step(model, state, out=None):
    a = model.check_state(state)
    n = model.N
    if out is None:
        out = np.empty_like(a)
    kernels.cl_step(a.reshape(n, n), model.si, model.ri, out.reshape(n, n))
    return out


def _row_uniform(model, row):
    m = np.zeros((model.N, model.N), dtype=np.complex128)
    m[row] = 1.0 / np.sqrt(model.N)
    return m.ravel()


def cl_initial(model):
    """Walker on the sender with the uniform coin state."""
    return _row_uniform(model, model.si)


def cl_target(model):
    return _row_uniform(model, model.ri)


def cl_alpha_prime(model):
    """The four auxiliary vectors completing alpha_1, alpha_2 to a U^2-invariant space."""
    n, s, r = model.N, model.si, model.ri
    unmarked = np.ones(n, dtype=bool)
    unmarked[[s, r]] = False

    a3 = np.zeros((n, n), dtype=np.complex128)
    a3[unmarked, s] = a3[unmarked, r] = 1.0 / np.sqrt(2.0 * (n - 2))

    a4 = np.zeros((n, n), dtype=np.complex128)
    a4[np.ix_(unmarked, unmarked)] = 1.0 / (n - 2)

    c_row = np.sqrt(2.0 / (n - 2))
    c_pair = np.sqrt(n / (2.0 * (n - 2)))
    a5 = c_row * cl_initial(model).reshape(n, n)
    a5[s, s] -= c_pair
    a5[s, r] -= c_pair
    a6 = c_row * cl_target(model).reshape(n, n)
    a6[r, s] -= c_pair
    a6[r, r] -= c_pair
    return [v.ravel() for v in (a3, a4, a5, a6)]


def cl_chi_removed(model):
    """Eigenvalue-1 vector of U^2 inside the auxiliary span, orthogonal to alpha_1,2."""
    n = model.N
    a3, a4, a5, a6 = cl_alpha_prime(model)
    return a3 / np.sqrt(n) + np.sqrt((n - 2) / (2.0 * n)) * a4 + 0.5 * a5 + 0.5 * a6


def cl_alpha_basis(model, verify=True):
    n = model.N
    p3, p4, p5, p6 = cl_alpha_prime(model)
    a3 = np.sqrt((n - 2) / n) * p3 - np.sqrt(2.0 / n) * p4
    # built from the auxiliary vectors; the expanded closed form of this
    # vector repeats |s,s> where |s,r> belongs
    a4 = (p5 - p6) / np.sqrt(2.0)
    a5 = p3 / np.sqrt(n) + np.sqrt((n - 2) / (2.0 * n)) * p4 - 0.5 * p5 - 0.5 * p6
    basis = [cl_initial(model), cl_target(model), a3, a4, a5]
    if verify:
        defect = orthonormality_defect(basis)
        if defect > ORTHONORMAL_TOL:
            raise ConsistencyError(f"complete-loops alpha basis not orthonormal (defect {defect:.3e})")
        for k, v in enumerate(basis, start=1):
            res = projection_residual(basis, cl_step(model, cl_step(model, v)))
            if res > CLOSURE_TOL:
                raise ConsistencyError(f"U^2 alpha_{k} leaves the subspace (residual {res:.3e})")
    return basis


def cl_effective(model):
    """Closed-form <alpha_i|U^2|alpha_j> (columns are images)."""
    n = float(model.N)
    n2 = n * n
    q = np.sqrt(n - 2.0)
    r2 = np.sqrt(2.0)
    d11 = (n - 4) * (n - 2) / n2
    d12 = -2 * (n - 4) / n2
    e13 = 4 * r2 * (n - 2) / n2
    e14 = 2 * q / n
    e15 = 2 * r2 * (n - 4) * q / n2
    e35 = 4 * (n - 4) * q / n2
    return np.array(
        [
            [d11, d12, e13, -e14, e15],
            [d12, d11, e13, e14, e15],
            [e13, e13, (n - 4) ** 2 / n2, 0.0, -e35],
            [e14, -e14, 0.0, (n - 4) / n, 0.0],
            [-e15, -e15, e35, 0.0, (n2 - 16 * n + 32) / n2],
        ],
        dtype=np.complex128,
    )


def cl_spectrum(model):
    w = star_omega(model.N)
    r2 = np.sqrt(2.0)
    chi0 = [0.5, 0.5, 1 / r2, 0, 0]
    chi1 = {sg: [0.5, -0.5, 0, -sg * 1j / r2, 0] for sg in (1, -1)}
    chi2 = {sg: [1 / (2 * r2), 1 / (2 * r2), -0.5, 0, sg * 1j / r2] for sg in (1, -1)}
    vectors = [chi0, chi1[1], chi1[-1], chi2[1], chi2[-1]]
    values = [1.0, np.exp(1j * w), np.exp(-1j * w), np.exp(2j * w), np.exp(-2j * w)]
    labels = ("chi0", "chi1+", "chi1-", "chi2+", "chi2-")
    return SpectralData(
        omega=w,
        phases=(0.0, w, 2.0 * w),
        eigenvalues=np.array(values, dtype=np.complex128),
        eigenvectors=np.array(vectors, dtype=np.complex128).T,
        labels=labels,
        exact=labels,
    )


def cl_fidelity_analytic(model, t):
    """Closed form at even t; 0 at odd t, where no closed form is reported."""
    if t < 0:
        raise ValueError(f"step count must be non-negative, got {t}")
    if t % 2:
        return 0.0
    phase = star_omega(model.N) * (t // 2)
    return float(np.cos(phase) ** 2 * np.sin(phase / 2.0) ** 4)


def cl_transfer_time(model):
    return nearest_even_peak(2.0 * np.pi / star_omega(model.N), lambda t: cl_fidelity_analytic(model, t))
