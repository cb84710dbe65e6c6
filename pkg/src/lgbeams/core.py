"""Domain types, grids and field arithmetic shared by every other module.

All quantities are expressed in one consistent (but arbitrary) length unit:
the wavenumber ``k`` is in radians per unit length, the Rayleigh range ``b``
in lengths, and grids carry physical coordinates in the same unit.  Fields
are immutable once constructed; every operation here is a pure function.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class BeamParams:
    """Physical constants of a beam family: wavenumber and Rayleigh range.

    The waist radius is derived, not stored: ``w0 = sqrt(2 b / k)``.
    """

    k: float
    b: float

    def __post_init__(self):
        if not (math.isfinite(self.k) and self.k > 0):
            raise ValueError(f"wavenumber k must be finite and > 0, got {self.k}")
        if not (math.isfinite(self.b) and self.b > 0):
            raise ValueError(f"Rayleigh range b must be finite and > 0, got {self.b}")

    @property
    def waist(self) -> float:
        """Beam radius at the focal plane, sqrt(2b/k)."""
        return math.sqrt(2.0 * self.b / self.k)


@dataclass(frozen=True, order=True)
class ModeIndex:
    """Azimuthal index l (signed) and radial index p (non-negative)."""

    l: int
    p: int

    def __post_init__(self):
        if self.l != int(self.l) or self.p != int(self.p):
            raise ValueError("mode indices must be integers")
        if self.p < 0:
            raise ValueError(f"radial index p must be >= 0, got {self.p}")

    @property
    def order(self) -> int:
        """Combined mode order 2p + |l|."""
        return 2 * self.p + abs(self.l)


@dataclass(frozen=True)
class Grid:
    """Uniform, cell-centered square sampling window.

    Coordinates along each axis are ``x_i = -extent + (i + 1/2) * spacing``
    with ``spacing = 2 * extent / n``; no sample falls exactly on the axes,
    which sidesteps r = 0 singularities in polar expressions.
    """

    n: int
    extent: float

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"grid needs n >= 2 samples per axis, got {self.n}")
        if not (math.isfinite(self.extent) and self.extent > 0):
            raise ValueError(f"extent must be finite and > 0, got {self.extent}")

    @property
    def spacing(self) -> float:
        return 2.0 * self.extent / self.n

    def axis(self) -> np.ndarray:
        """Cell-centered sample coordinates, shared by both axes."""
        return -self.extent + (np.arange(self.n) + 0.5) * self.spacing

    def meshgrid(self) -> tuple[np.ndarray, np.ndarray]:
        """(X, Y) coordinate arrays, row-major over (y, x)."""
        c = self.axis()
        return np.meshgrid(c, c, indexing="xy")


def make_grid(n: int, extent: float) -> Grid:
    """Build a cell-centered square grid with n samples per axis."""
    return Grid(n=int(n), extent=float(extent))


@dataclass(frozen=True)
class ComplexField:
    """2D complex samples of a transverse field at a fixed plane z.

    ``samples`` has shape (n, n), row-major over (y, x), and is frozen
    (read-only) after construction so fields can be shared freely.
    """

    grid: Grid
    z: float
    params: BeamParams
    samples: np.ndarray = field(repr=False)

    def __post_init__(self):
        arr = np.ascontiguousarray(self.samples, dtype=np.complex128)
        if arr.shape != (self.grid.n, self.grid.n):
            raise ValueError(
                f"samples shape {arr.shape} does not match grid n={self.grid.n}"
            )
        if not np.all(np.isfinite(arr.view(np.float64))):
            raise ValueError("field samples must be finite (no NaN/Inf)")
        if not math.isfinite(self.z):
            raise ValueError("plane coordinate z must be finite")
        arr.setflags(write=False)
        object.__setattr__(self, "samples", arr)

    def with_samples(self, samples: np.ndarray) -> "ComplexField":
        """New field on the same grid/plane/params with different samples."""
        return ComplexField(self.grid, self.z, self.params, samples)


def _check_same_plane(f: ComplexField, g: ComplexField) -> None:
    if f.grid != g.grid:
        raise ValueError(f"grid mismatch: {f.grid} vs {g.grid}")
    if f.z != g.z:
        raise ValueError(f"plane mismatch: z={f.z} vs z={g.z}")


def inner_product(f: ComplexField, g: ComplexField) -> complex:
    """Discrete L2 inner product <f, g>, conjugate-linear in ``f``.

    Riemann sum ``sum(conj(f) * g) * spacing**2``; for fields that decay
    well inside the window this approximates the continuum integral to
    spectral accuracy.
    """
    _check_same_plane(f, g)
    return complex(np.vdot(f.samples, g.samples)) * f.grid.spacing**2


def norm(f: ComplexField) -> float:
    """L2 norm ||f|| under :func:`inner_product`."""
    return float(np.linalg.norm(f.samples)) * f.grid.spacing


def fidelity(f: ComplexField, g: ComplexField) -> float:
    """|<f, g>| / (||f|| ||g||), in [0, 1]; 1 means equal up to complex scale."""
    nf, ng = norm(f), norm(g)
    if nf == 0.0 or ng == 0.0:
        raise ValueError("fidelity is undefined for zero-norm fields")
    val = abs(inner_product(f, g)) / (nf * ng)
    return min(val, 1.0)


def scale(f: ComplexField, c: complex) -> ComplexField:
    return f.with_samples(f.samples * c)


def add(f: ComplexField, g: ComplexField) -> ComplexField:
    _check_same_plane(f, g)
    return f.with_samples(f.samples + g.samples)


def normalized(f: ComplexField) -> ComplexField:
    """Rescale to unit L2 norm."""
    n = norm(f)
    if n == 0.0:
        raise ValueError("cannot normalize a zero field")
    return scale(f, 1.0 / n)


@dataclass(frozen=True)
class ModalSpectrum:
    """Complex coefficients over a finite set of mode indices at one plane."""

    entries: tuple[tuple[ModeIndex, complex], ...]
    z: float
    params: BeamParams

    def __post_init__(self):
        entries = tuple((idx, complex(c)) for idx, c in self.entries)
        indices = [idx for idx, _ in entries]
        if len(set(indices)) != len(indices):
            raise ValueError("duplicate mode index in spectrum")
        if not all(math.isfinite(abs(c)) for _, c in entries):
            raise ValueError("spectrum coefficients must be finite")
        object.__setattr__(self, "entries", entries)

    @property
    def power(self) -> float:
        """Total captured power sum |c|^2."""
        return float(sum(abs(c) ** 2 for _, c in self.entries))

    def coefficient(self, l: int, p: int) -> complex:
        for idx, c in self.entries:
            if idx.l == l and idx.p == p:
                return c
        return 0.0j
