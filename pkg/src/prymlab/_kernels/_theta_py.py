"""Pure numpy fallback for the theta lattice sum."""
from __future__ import annotations

import numpy as np


def theta_sum(tau, z, a, b, radius: int) -> complex:
    """Sum exp(pi i m tau m + 2 pi i m (z + b)), m = n + a, over |n|_inf <= radius."""
    tau = np.asarray(tau, dtype=np.complex128)
    g = tau.shape[0]
    axis = np.arange(-radius, radius + 1, dtype=np.float64)
    grids = np.meshgrid(*([axis] * g), indexing="ij")
    m = np.stack([gr.ravel() for gr in grids], axis=1) + np.asarray(a, dtype=np.float64)
    shift = np.asarray(z, dtype=np.complex128) + np.asarray(b, dtype=np.float64)
    quad = np.einsum("ki,ij,kj->k", m, tau, m)
    expo = 1j * np.pi * quad + 2j * np.pi * (m @ shift)
    return complex(np.exp(expo).sum())
