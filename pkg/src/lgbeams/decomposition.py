"""Projection of sampled fields onto the mode basis and back.

The basis used for projection carries the *field's own* beam parameters;
decomposing against a mismatched basis is legitimate (coefficients are
still well-defined) but shows up as captured power below the field power,
which callers should surface to users.
"""

from __future__ import annotations

import numpy as np

from .analytic import eval_lg_mode
from .core import (ComplexField, Grid, ModalSpectrum, ModeIndex,
                   inner_product, norm)


def decompose(f: ComplexField, lmax: int, pmax: int) -> ModalSpectrum:
    """Project f onto all modes with |l| <= lmax, p <= pmax at f's plane.

    Coefficients are ``c_{l,p} = <u_{l,p}(z), f>``; captured power is
    ``spectrum.power`` and the out-of-window remainder is
    ``norm(f)**2 - spectrum.power`` (non-negative up to quadrature error).
    """
    if lmax < 0 or pmax < 0:
        raise ValueError("lmax and pmax must be >= 0")
    entries = []
    for l in range(-lmax, lmax + 1):
        for p in range(pmax + 1):
            mode = eval_lg_mode(ModeIndex(l, p), f.params, f.grid, f.z)
            entries.append((ModeIndex(l, p), inner_product(mode, f)))
    return ModalSpectrum(entries=tuple(entries), z=f.z, params=f.params)


def residual_power(f: ComplexField, spectrum: ModalSpectrum) -> float:
    """Field power not captured by the spectrum's mode window."""
    return norm(f) ** 2 - spectrum.power


def reconstruct(spectrum: ModalSpectrum, grid: Grid) -> ComplexField:
    """Coherent sum of the spectrum's modes on a grid at the stored plane."""
    acc = np.zeros((grid.n, grid.n), dtype=np.complex128)
    for idx, c in spectrum.entries:
        mode = eval_lg_mode(idx, spectrum.params, grid, spectrum.z)
        acc += c * mode.samples
    return ComplexField(grid=grid, z=spectrum.z, params=spectrum.params,
                        samples=acc)


def oam_spectrum(spectrum: ModalSpectrum) -> tuple[dict[int, float], float | None]:
    """Power per azimuthal index and its power-weighted mean.

    Returns ``(powers, mean)`` where ``powers[l] = sum_p |c_{l,p}|^2``;
    the mean is None for an empty or zero-power spectrum.  For a field
    fully inside the mode window the mean equals its OAM expectation.
    """
    powers: dict[int, float] = {}
    for idx, c in spectrum.entries:
        powers[idx.l] = powers.get(idx.l, 0.0) + abs(c) ** 2
    total = sum(powers.values())
    if total == 0.0:
        return powers, None
    mean = sum(l * pw for l, pw in powers.items()) / total
    return powers, mean
