"""Portable float map (PFM) codec.

Wire format: line 1 is ``Pf`` (1 channel) or ``PF`` (3 channels); line 2
is ``<width> <height>``; line 3 is a nonzero scale float whose sign
encodes endianness (negative = little-endian); then raw 4-byte floats,
rows ordered bottom to top.  The writer always emits the canonical form:
little-endian, single ``\\n`` separators, scale ``-1.0`` (magnitude
preserved if not 1).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import PfmParseError, ShapeError


@dataclass(frozen=True)
class PFMImage:
    """Decoded PFM payload.

    ``samples`` keeps the file's row order (bottom row first) with shape
    (height, width, channels); use :meth:`to_array` for a top-down image.
    """

    width: int
    height: int
    channels: int
    scale: float
    samples: np.ndarray

    def __post_init__(self):
        if self.channels not in (1, 3):
            raise ShapeError(f"PFM supports 1 or 3 channels, got {self.channels}")
        if self.scale == 0 or not np.isfinite(self.scale):
            raise ShapeError(f"PFM scale must be a finite nonzero float, got {self.scale}")
        expected = (self.height, self.width, self.channels)
        if self.samples.shape != expected:
            raise ShapeError(f"PFM sample block shape {self.samples.shape}, expected {expected}")

    @property
    def little_endian(self) -> bool:
        return self.scale < 0

    def to_array(self) -> np.ndarray:
        """Top-down image array, (H, W) for grayscale else (H, W, 3)."""
        img = self.samples[::-1]
        return img[:, :, 0] if self.channels == 1 else img

    @staticmethod
    def from_array(img: np.ndarray, scale: float = -1.0) -> "PFMImage":
        """Build from a top-down (H, W) or (H, W, C) image array."""
        arr = np.asarray(img, dtype=np.float32)
        if arr.ndim == 2:
            arr = arr[:, :, None]
        if arr.ndim != 3:
            raise ShapeError(f"image must be 2D or 3D, got shape {np.asarray(img).shape}")
        h, w, c = arr.shape
        return PFMImage(w, h, c, scale, np.ascontiguousarray(arr[::-1]))


def _read_line(data: bytes, pos: int) -> tuple[bytes, int]:
    nl = data.find(b"\n", pos)
    if nl == -1:
        raise PfmParseError("unterminated header line", offset=pos)
    return data[pos:nl], nl + 1


def read_pfm(data: bytes) -> PFMImage:
    """Decode PFM bytes; raises :class:`PfmParseError` with a byte offset."""
    magic, pos = _read_line(data, 0)
    if magic == b"PF":
        channels = 3
    elif magic == b"Pf":
        channels = 1
    else:
        raise PfmParseError(f"bad magic {magic[:8]!r}, expected 'PF' or 'Pf'", offset=0)

    dims_line, dims_pos = _read_line(data, pos)
    parts = dims_line.split()
    try:
        if len(parts) != 2:
            raise ValueError
        width, height = int(parts[0]), int(parts[1])
        if width <= 0 or height <= 0:
            raise ValueError
    except ValueError:
        raise PfmParseError(f"bad dimensions line {dims_line!r}", offset=pos) from None

    scale_line, payload_pos = _read_line(data, dims_pos)
    try:
        scale = float(scale_line)
    except ValueError:
        raise PfmParseError(f"bad scale line {scale_line!r}", offset=dims_pos) from None
    if scale == 0:
        raise PfmParseError("scale must be nonzero", offset=dims_pos)

    count = width * height * channels
    payload = data[payload_pos : payload_pos + count * 4]
    if len(payload) < count * 4:
        raise PfmParseError(
            f"truncated payload: need {count * 4} bytes, have {len(payload)}",
            offset=len(data),
        )
    dtype = "<f4" if scale < 0 else ">f4"
    samples = np.frombuffer(payload, dtype=dtype).astype(np.float32, copy=False)
    return PFMImage(width, height, channels, scale, samples.reshape(height, width, channels))


def _format_scale(scale: float) -> str:
    canonical = -abs(scale)
    if canonical == -1.0:
        return "-1.0"
    return repr(canonical)


def write_pfm(img: PFMImage) -> bytes:
    """Serialize canonically (little-endian, newline separators)."""
    magic = "PF" if img.channels == 3 else "Pf"
    header = f"{magic}\n{img.width} {img.height}\n{_format_scale(img.scale)}\n".encode("ascii")
    body = np.ascontiguousarray(img.samples, dtype="<f4").tobytes()
    return header + body
