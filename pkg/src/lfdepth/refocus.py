"""Sub-pixel EPI shearing (refocusing) and the view-shift geometry.

Shearing an EPI by ``s`` resamples every view row along the spatial axis
so that the apparent disparity of every scene point increases by exactly
``s``: ``out[r, x] = in[r, x + (r - r0) * s]`` with linear interpolation,
where ``r0`` is the reference view row.  Samples falling outside the
image are filled by edge replication and flagged invalid.
"""

from __future__ import annotations

import numpy as np

from .errors import DomainError
from .lightfield import EPI, EPIStack


def shift_linear(
    data: np.ndarray, offsets: np.ndarray, valid: np.ndarray | None = None
) -> tuple[np.ndarray, np.ndarray]:
    """Shift each row of ``data`` along axis 1 by its own sub-pixel offset.

    ``data`` is (rows, space, C); ``offsets`` is (rows,), the source
    displacement per row (out[r, x] = in[r, x + offsets[r]]).  Linear
    interpolation; source coordinates outside [0, space-1] clamp to the
    edge and are marked invalid.  Returns (shifted, valid_mask).
    """
    rows, space, _ = data.shape
    coords = np.arange(space, dtype=np.float64)[None, :] + np.asarray(offsets, np.float64)[:, None]
    in_range = (coords >= 0.0) & (coords <= space - 1)
    clamped = np.clip(coords, 0.0, space - 1)
    lo = np.floor(clamped).astype(np.intp)
    hi = np.minimum(lo + 1, space - 1)
    frac = (clamped - lo)[:, :, None]
    rows_idx = np.arange(rows)[:, None]
    shifted = (1.0 - frac) * data[rows_idx, lo] + frac * data[rows_idx, hi]
    if valid is None:
        mask = in_range
    else:
        mask = in_range & valid[rows_idx, lo] & valid[rows_idx, hi]
    return shifted.astype(data.dtype, copy=False), mask


def shear_epi(epi: EPI, s: float) -> EPI:
    """Refocus an EPI: add ``s`` to the apparent disparity of every point."""
    if not np.isfinite(s):
        raise DomainError(f"shear amount must be finite, got {s}")
    offsets = (np.arange(epi.n_views) - epi.r0) * float(s)
    shifted, mask = shift_linear(epi.data, offsets, epi.valid)
    return EPI(shifted, epi.view_axis, epi.space_axis, dict(epi.fixed), mask)


def shear_epi_stack(stack: EPIStack, s: float) -> EPIStack:
    """Apply :func:`shear_epi` to every block of a stack; masks propagate."""
    if not np.isfinite(s):
        raise DomainError(f"shear amount must be finite, got {s}")
    row_in_block = np.arange(stack.data.shape[0]) % stack.block_height
    offsets = (row_in_block - stack.r0) * float(s)
    shifted, mask = shift_linear(stack.data, offsets, stack.valid)
    return EPIStack(shifted, stack.direction, stack.n_blocks, stack.block_height, mask)


class RefocusGeometry:
    """Scene geometry linking view position to pixel displacement.

    ``u0`` reference view index, ``delta_u`` baseline between adjacent
    views, ``Z`` scene depth, ``f`` focal length (all length units except
    the view indices).
    """

    def __init__(self, u0: float, delta_u: float, z: float, f: float):
        if delta_u <= 0:
            raise DomainError(f"baseline delta_u must be > 0, got {delta_u}")
        if z <= 0:
            raise DomainError(f"scene depth Z must be > 0, got {z}")
        if f <= 0:
            raise DomainError(f"focal length f must be > 0, got {f}")
        self.u0 = u0
        self.delta_u = delta_u
        self.z = z
        self.f = f

    @property
    def disparity(self) -> float:
        """Pixels of shift per unit view step: delta_u * f / Z."""
        return self.delta_u * self.f / self.z


def view_pixel_shift(geometry: RefocusGeometry, u: float) -> float:
    """Pixel displacement of a depth-Z point in view ``u`` vs the reference.

    Equals ``(u0 - u) * (delta_u / Z) * f``: linear in (u0 - u) and f,
    inverse-linear in Z.
    """
    return (geometry.u0 - u) * geometry.disparity
