"""Hot inner loops.

Each kernel exists twice: a numba ``@njit`` version and a plain numpy version
with identical semantics. ``MOSG_DISABLE_NUMBA=1`` in the environment (or a
missing numba install) selects the numpy path at import time. Both variants are
always importable under explicit names so tests and the benchmark can compare
them directly.
"""
import os

import numpy as np

_DISABLED = os.environ.get("MOSG_DISABLE_NUMBA", "").strip().lower() in {"1", "true", "yes", "on"}

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and not _DISABLED


# --- numpy reference path ---------------------------------------------------

def rk4_linear_numpy(a, f, y0, dt, n_steps):
    """Classical RK4 for ``y' = a @ y + f`` with constant ``a`` and ``f``."""
    y = np.array(y0, dtype=np.complex128)
    for _ in range(n_steps):
        k1 = a @ y + f
        k2 = a @ (y + 0.5 * dt * k1) + f
        k3 = a @ (y + 0.5 * dt * k2) + f
        k4 = a @ (y + dt * k3) + f
        y = y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    return y


def apply_phase_numpy(psi, phase):
    psi *= phase
    return psi


def moments_numpy(x, psi, dx):
    """Return (norm, mean, variance) of |psi|^2 on a uniform grid."""
    rho = psi.real**2 + psi.imag**2
    norm = rho.sum() * dx
    if norm == 0.0:
        return 0.0, np.nan, np.nan
    mean = (x * rho).sum() * dx / norm
    var = ((x - mean) ** 2 * rho).sum() * dx / norm
    return norm, mean, var


# --- numba path -------------------------------------------------------------

if HAVE_NUMBA:

    @njit(cache=True)
    def _matvec_affine(a, y, f, out):
        n = y.shape[0]
        for i in range(n):
            acc = f[i]
            for j in range(n):
                acc += a[i, j] * y[j]
            out[i] = acc

    @njit(cache=True)
    def rk4_linear_numba(a, f, y0, dt, n_steps):
        n = y0.shape[0]
        y = y0.astype(np.complex128).copy()
        k1 = np.empty(n, np.complex128)
        k2 = np.empty(n, np.complex128)
        k3 = np.empty(n, np.complex128)
        k4 = np.empty(n, np.complex128)
        tmp = np.empty(n, np.complex128)
        h2 = 0.5 * dt
        h6 = dt / 6.0
        for _ in range(n_steps):
            _matvec_affine(a, y, f, k1)
            for i in range(n):
                tmp[i] = y[i] + h2 * k1[i]
            _matvec_affine(a, tmp, f, k2)
            for i in range(n):
                tmp[i] = y[i] + h2 * k2[i]
            _matvec_affine(a, tmp, f, k3)
            for i in range(n):
                tmp[i] = y[i] + dt * k3[i]
            _matvec_affine(a, tmp, f, k4)
            for i in range(n):
                y[i] += h6 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i])
        return y

    @njit(cache=True)
    def apply_phase_numba(psi, phase):
        for i in range(psi.shape[0]):
            psi[i] *= phase[i]
        return psi

    @njit(cache=True)
    def moments_numba(x, psi, dx):
        norm = 0.0
        first = 0.0
        for i in range(psi.shape[0]):
            r = psi[i].real * psi[i].real + psi[i].imag * psi[i].imag
            norm += r
            first += x[i] * r
        if norm == 0.0:
            return 0.0, np.nan, np.nan
        mean = first / norm
        second = 0.0
        for i in range(psi.shape[0]):
            r = psi[i].real * psi[i].real + psi[i].imag * psi[i].imag
            d = x[i] - mean
            second += d * d * r
        return norm * dx, mean, second / norm

else:  # pragma: no cover
    rk4_linear_numba = rk4_linear_numpy
    apply_phase_numba = apply_phase_numpy
    moments_numba = moments_numpy


if USE_NUMBA:
    rk4_linear = rk4_linear_numba
    apply_phase = apply_phase_numba
    moments = moments_numba
else:
    rk4_linear = rk4_linear_numpy
    apply_phase = apply_phase_numpy
    moments = moments_numpy

BACKEND = "numba" if USE_NUMBA else "numpy"
