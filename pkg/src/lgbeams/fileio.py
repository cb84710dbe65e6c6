"""Portable field container ("LGF1") and 16-bit PGM image export.

LGF1 layout, all little-endian:

    magic   4s   b"LGF1"
    version u32  1
    n       u32  samples per axis
    layout  16s  b"row-major y,x" null-padded
    extent  f64  window half-width
    z       f64  plane coordinate
    k       f64  wavenumber
    b       f64  Rayleigh range
    data    n*n complex128 (interleaved re, im float64), row-major (y, x)

A plain-text sidecar ``<path>.manifest`` duplicates the header as
``key: value`` lines for human inspection; only the binary file is read
back, so round trips are bit-exact.
"""

from __future__ import annotations

import struct
from pathlib import Path

import numpy as np

from .core import BeamParams, ComplexField, make_grid

MAGIC = b"LGF1"
LAYOUT_TAG = "row-major y,x"
_HEADER = struct.Struct("<4sII16s4d")


def write_field(f: ComplexField, path: str | Path) -> None:
    """Write the field and its sidecar manifest."""
    path = Path(path)
    header = _HEADER.pack(MAGIC, 1, f.grid.n,
                          LAYOUT_TAG.encode("ascii").ljust(16, b"\0"),
                          f.grid.extent, f.z, f.params.k, f.params.b)
    data = np.ascontiguousarray(f.samples, dtype="<c16").tobytes()
    path.write_bytes(header + data)
    manifest = "".join(f"{key}: {value}\n" for key, value in [
        ("format", MAGIC.decode("ascii")),
        ("version", 1),
        ("n", f.grid.n),
        ("extent", repr(f.grid.extent)),
        ("z", repr(f.z)),
        ("k", repr(f.params.k)),
        ("b", repr(f.params.b)),
        ("layout", LAYOUT_TAG),
        ("samples", f.grid.n * f.grid.n),
    ])
    Path(str(path) + ".manifest").write_text(manifest, encoding="ascii")


def read_field(path: str | Path) -> ComplexField:
    """Read a field written by :func:`write_field`."""
    raw = Path(path).read_bytes()
    if len(raw) < _HEADER.size:
        raise ValueError(f"{path}: truncated field file")
    magic, version, n, layout, extent, z, k, b = _HEADER.unpack_from(raw)
    if magic != MAGIC:
        raise ValueError(f"{path}: not a {MAGIC.decode('ascii')} field file")
    if version != 1:
        raise ValueError(f"{path}: unsupported format version {version}")
    if layout.rstrip(b"\0").decode("ascii") != LAYOUT_TAG:
        raise ValueError(f"{path}: unknown sample layout")
    expected = _HEADER.size + 16 * n * n
    if len(raw) != expected:
        raise ValueError(f"{path}: expected {expected} bytes, found {len(raw)}")
    samples = np.frombuffer(raw, dtype="<c16", offset=_HEADER.size).reshape(n, n)
    return ComplexField(grid=make_grid(n, extent), z=z,
                        params=BeamParams(k=k, b=b), samples=samples)


def intensity_image(f: ComplexField) -> np.ndarray:
    """|u|^2 mapped linearly onto uint16 0..65535 (peak maps to 65535)."""
    intensity = np.abs(f.samples) ** 2
    peak = intensity.max()
    if peak == 0.0:
        return np.zeros_like(intensity, dtype=np.uint16)
    return np.round(intensity * (65535.0 / peak)).astype(np.uint16)


def phase_image(f: ComplexField) -> np.ndarray:
    """arg(u) mapped from (-pi, pi] onto uint16 0..65535."""
    frac = (np.angle(f.samples) + np.pi) / (2.0 * np.pi)
    return np.clip(np.round(frac * 65535.0), 0, 65535).astype(np.uint16)


def write_pgm(image: np.ndarray, path: str | Path) -> None:
    """Binary 16-bit PGM (P5, maxval 65535, big-endian samples)."""
    if image.ndim != 2 or image.dtype != np.uint16:
        raise ValueError("expected a 2D uint16 image")
    h, w = image.shape
    header = f"P5\n{w} {h}\n65535\n".encode("ascii")
    Path(path).write_bytes(header + image.astype(">u2").tobytes())


def read_pgm(path: str | Path) -> np.ndarray:
    """Read back a binary 16-bit PGM written by :func:`write_pgm`."""
    raw = Path(path).read_bytes()
    fields: list[bytes] = []
    pos = 0
    while len(fields) < 4:  # magic, width, height, maxval
        while pos < len(raw) and raw[pos:pos + 1].isspace():
            pos += 1
        if raw[pos:pos + 1] == b"#":
            pos = raw.index(b"\n", pos) + 1
            continue
        start = pos
        while pos < len(raw) and not raw[pos:pos + 1].isspace():
            pos += 1
        fields.append(raw[start:pos])
    pos += 1  # single whitespace after maxval
    if fields[0] != b"P5":
        raise ValueError(f"{path}: not a binary PGM")
    w, h, maxval = int(fields[1]), int(fields[2]), int(fields[3])
    if maxval != 65535:
        raise ValueError(f"{path}: expected maxval 65535, got {maxval}")
    return np.frombuffer(raw, dtype=">u2", offset=pos).reshape(h, w).astype(np.uint16)
