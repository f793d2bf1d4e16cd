from dataclasses import dataclass, field
from typing import Optional

import numpy as np


@dataclass(frozen=True)
class SpectralData:
    """Eigen-decomposition of an effective operator.

    ``eigenvectors[:, k]`` belongs to ``eigenvalues[k]`` and both are expressed
    in the alpha basis. ``labels[k]`` names the pair (``"chi0"``, ``"chi1+"``,
    ...). ``omega`` is the phase that sets the transfer period; ``phases``
    lists the distinct non-negative eigenphases in ascending label order.
    """

    omega: float
    phases: tuple
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    labels: tuple
    delta: Optional[float] = None
    exact: tuple = field(default=())

    def __post_init__(self):
        if self.eigenvectors.shape != (len(self.eigenvalues), len(self.eigenvalues)):
            raise ValueError("eigenvectors must be square with one column per eigenvalue")
        if len(self.labels) != len(self.eigenvalues):
            raise ValueError("one label per eigenvalue required")

    def vector(self, label):
        return self.eigenvectors[:, self.labels.index(label)]

    def value(self, label):
        return self.eigenvalues[self.labels.index(label)]

    def residuals(self, m):
        """``||M v_k - lambda_k v_k||`` for every eigenpair."""
        m = np.asarray(m)
        diff = m @ self.eigenvectors - self.eigenvectors * self.eigenvalues[None, :]
        return np.linalg.norm(diff, axis=0)
