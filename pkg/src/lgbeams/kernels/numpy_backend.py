"""Pure numpy implementation of the hot mode-evaluation kernel.

Always importable; the compiled Cython twin in ``_lgcore`` fuses the same
arithmetic into one pass and is preferred when available.  Both backends
must return the same values to floating-point roundoff — the test suite
pins them against each other.
"""

import numpy as np

name = "numpy"


def lg_mode_samples(X, Y, l, p, w, curvature, gouy, amplitude):
    """Sample one beam mode on arbitrary transverse coordinates.

    Parameters
    ----------
    X, Y : ndarray
        Transverse coordinates (same shape, any layout).
    l, p : int
        Azimuthal (signed) and radial (>= 0) mode indices.
    w : float
        Beam radius at the evaluation plane.
    curvature : float
        Coefficient of r**2 in the phase, ``k / (2 R(z))``.
    gouy : float
        Total axial phase ``(2p + |l| + 1) * arctan(z/b)``.
    amplitude : float
        Normalization constant multiplying the whole profile.

    Returns
    -------
    ndarray of complex128
        ``amplitude * (sqrt(2) r / w)**|l| * exp(-r^2/w^2) * L_p^{|l|}(2 r^2/w^2)
        * exp(i (curvature r^2 + l phi - gouy))``.
    """
    X = np.asarray(X, dtype=np.float64)
    Y = np.asarray(Y, dtype=np.float64)
    r2 = X * X + Y * Y
    s = (2.0 / (w * w)) * r2
    mag = amplitude * np.exp(-0.5 * s) * _laguerre(p, abs(l), s)
    if l != 0:
        mag = mag * s ** (0.5 * abs(l))
    phase = curvature * r2 - gouy
    if l != 0:
        phase = phase + l * np.arctan2(Y, X)
    return mag * np.exp(1j * phase)


def _laguerre(p, alpha, s):
    """Generalized Laguerre L_p^alpha(s) by the three-term recurrence."""
    prev = np.ones_like(s)
    if p == 0:
        return prev
    cur = (1.0 + alpha) - s
    for j in range(2, p + 1):
        prev, cur = cur, ((2.0 * j - 1.0 + alpha - s) * cur
                          - (j - 1.0 + alpha) * prev) / j
    return cur
