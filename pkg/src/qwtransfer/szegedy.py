"""Szegedy walk with queries on the complete graph.

States are flat vectors of length N^2; entry ``i*N + j`` is the amplitude of
``|i,j>`` with i a vertex of the original graph and j a vertex of its copy.
The transition matrix is uniform over the other N-1 vertices, so diagonal
states ``|i,i>`` are orthogonal to every Phi_i / Psi_j and each reflection
simply negates them. One step is U = R_B R_A R_M.
"""

from dataclasses import dataclass
from typing import ClassVar

import numpy as np

from qwtransfer import kernels
from qwtransfer.base import WalkModel, round_half_away
from qwtransfer.smallmat import (
    CLOSURE_TOL,
    ORTHONORMAL_TOL,
    ConsistencyError,
    inverse_iteration,
    orthonormality_defect,
    projection_residual,
)
from qwtransfer.spectral import SpectralData


@dataclass(frozen=True)
class SzegedyModel(WalkModel):
    family: ClassVar[str] = "szegedy"
    min_n: ClassVar[int] = 5
    period: ClassVar[int] = 1

    @property
    def dim(self):
        return self.N * self.N

    def step(self, state, out=None):
        return sz_step(self, state, out)

    def initial(self):
        return sz_initial(self)

    def target(self):
        return sz_target(self)

    def alpha_basis(self):
        return sz_alpha_basis(self)

    def effective(self):
        return sz_effective(self)

    def spectrum(self):
        return sz_eigenphases(self)

    def fidelity_analytic(self, t):
        return sz_fidelity_analytic(self, t)

    def transfer_time(self):
        return sz_transfer_time(self)


def sz_step(model, state, out=None):
    a = model.check_state(state)
    n = model.N
    if out is None:
        out = np.empty_like(a)
    kernels.sz_step(a.reshape(n, n), model.si, model.ri, out.reshape(n, n))
    return out


def sz_reflectors(model):
    """The three factors of one step as callables on flat states: (R_M, R_A, R_B)."""
    n, s, r = model.N, model.si, model.ri

    def flat(f):
        return lambda v: f(model.check_state(v).reshape(n, n)).ravel()

    return (
        flat(lambda a: kernels.query_reflect(a, s, r)),
        flat(kernels.row_reflect),
        flat(kernels.col_reflect),
    )


def sz_phi(model, i):
    """Phi_i for 1-based vertex ``i``: uniform over row i without the diagonal."""
    n = model.N
    a = np.full((n, n), 0.0, dtype=np.complex128)
    a[i - 1] = 1.0 / np.sqrt(n - 1)
    a[i - 1, i - 1] = 0.0
    return a.ravel()


def sz_psi(model, j):
    n = model.N
    return sz_phi(model, j).reshape(n, n).T.ravel().copy()


def sz_initial(model):
    return sz_phi(model, model.s)


def sz_target(model):
    return sz_phi(model, model.r)


def sz_alpha_basis(model, verify=True):
    n, s, r = model.N, model.si, model.ri
    unmarked = np.ones(n, dtype=bool)
    unmarked[[s, r]] = False

    a3 = np.zeros((n, n), dtype=np.complex128)
    a3[np.ix_(unmarked, unmarked)] = 1.0 / np.sqrt((n - 2) * (n - 3))
    np.fill_diagonal(a3, 0.0)

    def marked_row(row, other):
        a = np.zeros((n, n), dtype=np.complex128)
        a[row, unmarked] = 1.0 / np.sqrt((n - 1) * (n - 2))
        a[row, other] = -np.sqrt((n - 2) / (n - 1))
        return a

    def marked_col(col):
        a = np.zeros((n, n), dtype=np.complex128)
        a[unmarked, col] = 1.0 / np.sqrt(n - 2)
        return a

    rest = [a3, marked_row(s, r), marked_row(r, s), marked_col(s), marked_col(r)]
    basis = [sz_initial(model), sz_target(model)] + [v.ravel() for v in rest]
    if verify:
        defect = orthonormality_defect(basis)
        if defect > ORTHONORMAL_TOL:
            raise ConsistencyError(f"szegedy alpha basis not orthonormal (defect {defect:.3e})")
        for k, v in enumerate(basis, start=1):
            res = projection_residual(basis, sz_step(model, v))
            if res > CLOSURE_TOL:
                raise ConsistencyError(f"U alpha_{k} leaves the subspace (residual {res:.3e})")
    return basis


def sz_effective(model):
    """Closed-form <alpha_i|U|alpha_j> (columns are images)."""
    n = float(model.N)
    m = n - 1.0
    q2 = np.sqrt(n - 2.0)
    q3 = np.sqrt(n - 3.0)
    m15 = m ** 1.5
    m25 = m ** 2.5
    m2 = m * m

    d = (n - 3) / m
    e12 = -2 * (n - 2) / m2
    e13 = 2 * (n - 3) ** 1.5 * q2 / m25
    e15 = 2 * q2 / m2
    e16 = 4 * (n - 2) ** 1.5 / m25
    e17 = 2 * (n - 3) * q2 / m25
    e31 = -2 * np.sqrt((n - 3) * (n - 2) / m ** 3)
    e34 = 2 * q3 / m15
    e36 = 2 * (n - 5) * q3 / m2
    e43 = -2 * q3 * (n + 1) / m25
    e46 = -4 / m25
    e47 = 2 * (n - 3) * n / m25
    e62 = -2 * np.sqrt((n - 2) / m ** 3)
    e63 = 2 * (n - 3) ** 1.5 / m2
    e65 = -2 * (n - 2) / m15
    e66 = -((n - 3) ** 2) / m2
    e67 = 2 * (n - 3) / m2
    return np.array(
        [
            [d, e12, e13, 0.0, e15, e16, e17],
            [e12, d, e13, e15, 0.0, e17, e16],
            [e31, e31, (n - 5) ** 2 / m2, e34, e34, e36, e36],
            [0.0, -e15, e43, -d, 2 / m2, e46, e47],
            [-e15, 0.0, e43, 2 / m2, -d, e47, e46],
            [0.0, e62, e63, 0.0, e65, e66, e67],
            [e62, 0.0, e63, e65, 0.0, e67, e66],
        ],
        dtype=np.complex128,
    )


def sz_delta(n):
    n = float(n)
    return float(np.sqrt(n ** 4 - 10 * n ** 3 + 35 * n ** 2 - 50 * n + 33))


def _arccos(x):
    return float(np.arccos(np.clip(x, -1.0, 1.0)))


def sz_phases(n):
    """(omega_0, omega_1, omega_2, omega_3) from the factorised characteristic polynomial."""
    delta = sz_delta(n)
    m2 = (n - 1.0) ** 2
    return (
        0.0,
        _arccos((4 - n + delta) / m2),
        _arccos((4 - n - delta) / m2),
        _arccos((4 * n - n * n - 5) / m2),
    )


def sz_chi0(model):
    """Closed-form eigenvector of the effective operator for eigenvalue 1."""
    n = float(model.N)
    c = n * (n - 3)
    v = np.zeros(7, dtype=np.complex128)
    v[0] = np.sqrt((c + 2) / (c + 3)) / np.sqrt(2.0)
    v[1] = -v[0]
    v[5] = 1.0 / np.sqrt(2.0 * (c + 3))
    v[6] = -v[5]
    return v


def sz_eigenphases(model):
    phases = sz_phases(model.N)
    ueff = sz_effective(model)
    values = [1.0 + 0j]
    vectors = [sz_chi0(model)]
    labels = ["chi0"]
    for k in (1, 2, 3):
        for sign, tag in ((1, "+"), (-1, "-")):
            lam = np.exp(sign * 1j * phases[k])
            values.append(lam)
            vectors.append(inverse_iteration(ueff, lam))
            labels.append(f"chi{k}{tag}")
    return SpectralData(
        omega=phases[1],
        phases=phases,
        eigenvalues=np.array(values, dtype=np.complex128),
        eigenvectors=np.array(vectors, dtype=np.complex128).T,
        labels=tuple(labels),
        delta=sz_delta(model.N),
        exact=("chi0",),
    )


def sz_fidelity_analytic(model, t):
    """Large-N approximation sin^4(omega_1 t / 2); error is O(N^-1/2)."""
    if t < 0:
        raise ValueError(f"step count must be non-negative, got {t}")
    return float(np.sin(sz_phases(model.N)[1] * t / 2.0) ** 4)


def sz_transfer_time(model):
    return round_half_away(np.pi / sz_phases(model.N)[1])
