"""Transfer runs, cross-representation checks, N sweeps and the invariant suite."""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import NamedTuple, Optional

import numpy as np

from qwtransfer import smallmat
from qwtransfer.complete_loop import CompleteLoopModel
from qwtransfer.star import StarModel
from qwtransfer.szegedy import SzegedyModel, sz_reflectors

FAMILIES = {
    StarModel.family: StarModel,
    CompleteLoopModel.family: CompleteLoopModel,
    SzegedyModel.family: SzegedyModel,
}
REPRESENTATIONS = ("full", "reduced", "analytic")


def make_model(family, N, s=1, r=2):
    try:
        cls = FAMILIES[family]
    except KeyError:
        raise ValueError(f"unknown model family {family!r}; choose from {sorted(FAMILIES)}") from None
    return cls(N, s, r)


class SeriesRow(NamedTuple):
    t: int
    fidelity_full: Optional[float]
    fidelity_reduced: Optional[float]
    fidelity_analytic: Optional[float]


@dataclass
class TransferReport:
    model: object
    steps: int
    series: list
    peak_step: int
    peak_fidelity: float
    predicted_T: int
    representations: tuple = REPRESENTATIONS

    def column(self, name):
        """One fidelity column as a float array, NaN where not computed."""
        key = name if name.startswith("fidelity_") else f"fidelity_{name}"
        return np.array([np.nan if getattr(row, key) is None else getattr(row, key) for row in self.series])

    def to_dict(self):
        return {
            "model": self.model.describe(),
            "steps": self.steps,
            "representations": list(self.representations),
            "predicted_T": self.predicted_T,
            "peak_step": self.peak_step,
            "peak_fidelity": self.peak_fidelity,
            "series": [row._asdict() for row in self.series],
        }


def _full_series(model, steps):
    psi = model.initial()
    target = model.target()
    buf = np.empty_like(psi)
    out = [abs(np.vdot(target, psi)) ** 2]
    for _ in range(steps):
        model.step(psi, out=buf)
        psi, buf = buf, psi
        out.append(abs(np.vdot(target, psi)) ** 2)
    return out


def _reduced_series(model, steps):
    """Fidelity from powers of the effective operator; None between its applications."""
    basis = np.array(model.alpha_basis())
    ueff = model.effective()
    coords = basis.conj() @ model.initial()
    target = basis.conj() @ model.target()
    out = []
    for t in range(steps + 1):
        if t % model.period:
            out.append(None)
            continue
        out.append(abs(np.vdot(target, coords)) ** 2)
        coords = ueff @ coords
    return out


def run_transfer(model, steps=None, representations=REPRESENTATIONS):
    """Evolve from the sender state and record the squared overlap with the receiver state."""
    unknown = set(representations) - set(REPRESENTATIONS)
    if unknown or not representations:
        raise ValueError(f"representations must be a non-empty subset of {REPRESENTATIONS}, got {representations}")
    predicted = model.transfer_time()
    if steps is None:
        steps = 3 * predicted
    if steps < 0:
        raise ValueError(f"steps must be non-negative, got {steps}")
    none = [None] * (steps + 1)
    full = _full_series(model, steps) if "full" in representations else none
    reduced = _reduced_series(model, steps) if "reduced" in representations else none
    analytic = [model.fidelity_analytic(t) for t in range(steps + 1)] if "analytic" in representations else none
    series = [SeriesRow(t, *map(_as_float, vals)) for t, vals in enumerate(zip(full, reduced, analytic))]

    # peak is taken on the simulated series; without it, fall back to the next most faithful one
    for name in REPRESENTATIONS:
        if name in representations:
            values = [getattr(row, f"fidelity_{name}") for row in series]
            break
    ranked = [-np.inf if v is None else v for v in values]
    peak = int(np.argmax(ranked))
    return TransferReport(
        model=model,
        steps=steps,
        series=series,
        peak_step=peak,
        peak_fidelity=float(ranked[peak]),
        predicted_T=predicted,
        representations=tuple(r for r in REPRESENTATIONS if r in representations),
    )


def _as_float(v):
    return None if v is None else float(v)


def cross_check(model, steps):
    """Largest |full - reduced| over the steps where the reduced series is defined."""
    report = run_transfer(model, steps, ("full", "reduced"))
    diffs = [abs(row.fidelity_full - row.fidelity_reduced) for row in report.series if row.fidelity_reduced is not None]
    return max(diffs)


class SweepRow(NamedTuple):
    N: int
    predicted_T: int
    peak_step: int
    peak_fidelity: float


@dataclass
class SweepReport:
    family: str
    rows: list = field(default_factory=list)

    def to_dict(self):
        return {"family": self.family, "rows": [row._asdict() for row in self.rows]}


def sweep(family, n_list, s_r_policy=(1, 2), workers=1):
    """Run each N for twice its predicted transfer time and record the peak.

    ``s_r_policy`` is a fixed ``(s, r)`` pair or a callable ``N -> (s, r)``.
    Rows come back in input order even when ``workers > 1``.
    """
    n_list = [int(n) for n in n_list]
    if any(b <= a for a, b in zip(n_list, n_list[1:])):
        raise ValueError(f"N values must be strictly increasing, got {n_list}")
    models = []
    for n in n_list:
        s, r = s_r_policy(n) if callable(s_r_policy) else s_r_policy
        try:
            models.append(make_model(family, n, s, r))
        except ValueError as exc:
            raise ValueError(f"invalid N={n} for {family}: {exc}") from exc

    def one(model):
        t = model.transfer_time()
        rep = run_transfer(model, 2 * t, ("full",))
        return SweepRow(model.N, t, rep.peak_step, rep.peak_fidelity)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(one, models))
    else:
        rows = [one(m) for m in models]
    return SweepReport(family, rows)


# --- invariant suite ---------------------------------------------------------


class Check(NamedTuple):
    name: str
    value: float
    tolerance: float

    @property
    def passed(self):
        return bool(self.value <= self.tolerance)


def apply_power(model, v, power):
    for _ in range(power):
        v = model.step(v)
    return v


def effective_from_simulation(model):
    """<alpha_i|U^period|alpha_j> computed with the full-space step."""
    basis = model.alpha_basis()
    images = [apply_power(model, b, model.period) for b in basis]
    return np.array([[np.vdot(a, img) for img in images] for a in basis])


def random_states(model, count, seed=0):
    rng = np.random.default_rng(seed)
    z = rng.standard_normal((count, model.dim)) + 1j * rng.standard_normal((count, model.dim))
    return z / np.linalg.norm(z, axis=1, keepdims=True)


def norm_defect(model, states):
    return max(abs(np.linalg.norm(model.step(v)) - np.linalg.norm(v)) for v in states)


def invariant_checks(model, seed=0, samples=20):
    """Closure, unitarity, spectral and dynamical checks for one model."""
    basis = model.alpha_basis()
    ueff = model.effective()
    spec = model.spectrum()
    checks = [
        Check("alpha basis orthonormal", smallmat.orthonormality_defect(basis), smallmat.ORTHONORMAL_TOL),
        Check(
            "invariant subspace closure",
            max(smallmat.projection_residual(basis, apply_power(model, b, model.period)) for b in basis),
            smallmat.CLOSURE_TOL,
        ),
        Check(
            "closed-form U_eff matches simulation",
            float(np.max(np.abs(ueff - effective_from_simulation(model)))),
            smallmat.CLOSURE_TOL,
        ),
        Check("U_eff unitary", smallmat.unitarity_defect(ueff), smallmat.ORTHONORMAL_TOL),
        Check("norm conservation", norm_defect(model, random_states(model, samples, seed)), smallmat.ORTHONORMAL_TOL),
    ]
    residuals = spec.residuals(ueff)
    exact = [residuals[spec.labels.index(lbl)] for lbl in spec.exact]
    checks.append(Check("closed-form eigenpairs", float(max(exact)), smallmat.ORTHONORMAL_TOL))
    if isinstance(model, SzegedyModel):
        dets = [abs(smallmat.det(ueff - lam * smallmat.identity(7))) for lam in spec.eigenvalues]
        checks.append(Check("characteristic equation at analytic eigenvalues", max(dets), smallmat.ANALYTIC_TOL))
        numeric = [r for lbl, r in zip(spec.labels, residuals) if lbl not in spec.exact]
        checks.append(Check("numerical eigenpairs", float(max(numeric)), smallmat.CLOSURE_TOL))
        involution = 0.0
        for refl in sz_reflectors(model):
            for v in random_states(model, 3, seed):
                involution = max(involution, float(np.max(np.abs(refl(refl(v)) - v))))
        checks.append(Check("reflectors are involutions", involution, smallmat.ORTHONORMAL_TOL))
    if isinstance(model, CompleteLoopModel):
        doubling = abs(np.angle(spec.value("chi2+")) - 2 * np.angle(spec.value("chi1+")))
        checks.append(Check("eigenphase doubling", float(doubling), smallmat.ORTHONORMAL_TOL))

    steps = 3 * model.transfer_time()
    report = run_transfer(model, steps)
    checks.append(Check("full vs reduced fidelity", cross_check(model, steps), smallmat.CLOSURE_TOL))
    if isinstance(model, SzegedyModel):
        dev = max(abs(row.fidelity_full - row.fidelity_analytic) for row in report.series)
        checks.append(Check("simulated vs asymptotic fidelity", dev, 5.0 / np.sqrt(model.N)))
    else:
        dev = max(abs(row.fidelity_full - row.fidelity_analytic) for row in report.series if row.t % 2 == 0)
        checks.append(Check("simulated vs closed-form fidelity (even t)", dev, smallmat.CLOSURE_TOL))
    return checks
