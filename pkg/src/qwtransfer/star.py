"""Coined walk on the star graph with N outer vertices.

The Hilbert space has dimension 2N: ``|j,0>`` (walker on outer vertex j) at
index j-1 and ``|0,j>`` (walker on the centre with coin j) at index N+j-1.
One step maps the outer half to the centre half and back, so the state is
confined to one half at every step.
"""

from dataclasses import dataclass
from typing import ClassVar

import numpy as np

from qwtransfer import kernels
from qwtransfer.base import WalkModel, nearest_even_peak
from qwtransfer.smallmat import ConsistencyError, ORTHONORMAL_TOL, orthonormality_defect
from qwtransfer.spectral import SpectralData


@dataclass(frozen=True)
class StarModel(WalkModel):
    family: ClassVar[str] = "star"
    min_n: ClassVar[int] = 3
    period: ClassVar[int] = 2

    @property
    def dim(self):
        return 2 * self.N

    def step(self, state, out=None):
        return star_step(self, state, out)

    def initial(self):
        return star_basis_state(self, self.s)

    def target(self):
        return star_basis_state(self, self.r)

    def alpha_basis(self):
        return star_alpha_basis(self)

    def effective(self):
        return star_effective(self)

    def spectrum(self):
        return star_spectrum(self)

    def fidelity_analytic(self, t):
        return star_fidelity_analytic(self, t)

    def transfer_time(self):
        return star_transfer_time(self)


def star_basis_state(model, vertex, centre=False):
    """``|vertex,0>``, or ``|0,vertex>`` when ``centre`` is true."""
    v = np.zeros(model.dim, dtype=np.complex128)
    v[(model.N if centre else 0) + vertex - 1] = 1.0
    return v


def star_step(model, state, out=None):
    a = model.check_state(state)
    if out is None:
        out = np.empty_like(a)
    return kernels.star_step(a, model.si, model.ri, out)


def star_alpha_basis(model):
    n = model.N
    a1 = star_basis_state(model, model.s)
    a2 = star_basis_state(model, model.r)
    a3 = np.zeros(model.dim, dtype=np.complex128)
    a3[:n] = 1.0 / np.sqrt(n - 2)
    a3[[model.si, model.ri]] = 0.0
    basis = [a1, a2, a3]
    defect = orthonormality_defect(basis)
    if defect > ORTHONORMAL_TOL:
        raise ConsistencyError(f"star alpha basis not orthonormal (defect {defect:.3e})")
    return basis


def star_effective(model):
    """Two walk steps restricted to the alpha basis (columns are images)."""
    n = float(model.N)
    d = 2.0 / n
    q = 2.0 * np.sqrt(n - 2.0) / n
    return np.array(
        [
            [1.0 - d, -d, q],
            [-d, 1.0 - d, q],
            [-q, -q, 1.0 - 2.0 * d],
        ],
        dtype=np.complex128,
    )


def star_omega(n):
    return float(np.arccos((n - 4.0) / n))


def star_spectrum(model):
    w = star_omega(model.N)
    r2 = 1.0 / np.sqrt(2.0)
    chi0 = [r2, -r2, 0.0]
    chi_p = [0.5, 0.5, 1j * r2]
    chi_m = [0.5, 0.5, -1j * r2]
    return SpectralData(
        omega=w,
        phases=(0.0, w),
        eigenvalues=np.array([1.0, np.exp(1j * w), np.exp(-1j * w)]),
        eigenvectors=np.array([chi0, chi_p, chi_m], dtype=np.complex128).T,
        labels=("chi0", "chi+", "chi-"),
        exact=("chi0", "chi+", "chi-"),
    )


def _check_t(t):
    if t < 0:
        raise ValueError(f"step count must be non-negative, got {t}")


def star_fidelity_analytic(model, t):
    """sin^4 of a quarter of the accumulated phase; zero at odd steps."""
    _check_t(t)
    if t % 2:
        return 0.0
    return float(np.sin(star_omega(model.N) * (t // 2) / 2.0) ** 4)


def star_transfer_time(model):
    return nearest_even_peak(2.0 * np.pi / star_omega(model.N), lambda t: star_fidelity_analytic(model, t))
