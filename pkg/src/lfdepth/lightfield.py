"""4D light fields, epipolar plane images, and EPI stacks.

Coordinate conventions used throughout the package:

- A light field is a 5-axis volume ``L[u, v, x, y, c]``: view position
  ``(u, v)``, pixel position ``(x, y)``, color channel ``c``.  ``x`` runs
  along image width (horizontal), ``y`` along image height (vertical).
- Horizontal parallax couples ``u`` with ``x``, vertical parallax couples
  ``v`` with ``y``.  A scene point with disparity ``d`` sits at spatial
  position ``x0 + (u0 - u) * d`` in view ``u``, where ``(u0, v0)`` is the
  reference (center) view.  Disparity is measured in pixels per view step.
- Intensities are floats in ``[0, 1]``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import BoundsError, DomainError, ShapeError

HORIZONTAL = "horizontal"
VERTICAL = "vertical"


def _check_intensities(data: np.ndarray) -> None:
    if not np.isfinite(data).all():
        raise DomainError("light field intensities must be finite")
    if data.size and (data.min() < 0.0 or data.max() > 1.0):
        raise DomainError(
            f"light field intensities must lie in [0, 1], "
            f"got range [{data.min():.4g}, {data.max():.4g}]"
        )


@dataclass
class LightField4D:
    """Dense light field sampled on a (U, V) grid of views.

    ``data`` has shape ``(U, V, X, Y, C)`` with ``C`` in {1, 3}.  The
    reference view ``(u0, v0)`` is the grid center for odd U, V.
    """

    data: np.ndarray

    def __post_init__(self):
        if self.data.ndim != 5:
            raise ShapeError(f"light field must be 5-axis (U,V,X,Y,C), got shape {self.data.shape}")
        if self.shape_uv[0] < 1 or self.shape_uv[1] < 1:
            raise ShapeError("light field needs at least one view on each axis")
        if self.channels not in (1, 3):
            raise ShapeError(f"channel count must be 1 or 3, got {self.channels}")
        _check_intensities(self.data)

    @property
    def shape_uv(self) -> tuple[int, int]:
        return self.data.shape[0], self.data.shape[1]

    @property
    def shape_xy(self) -> tuple[int, int]:
        return self.data.shape[2], self.data.shape[3]

    @property
    def channels(self) -> int:
        return self.data.shape[4]

    @property
    def u0(self) -> int:
        return (self.data.shape[0] - 1) // 2

    @property
    def v0(self) -> int:
        return (self.data.shape[1] - 1) // 2

    def center_view(self) -> np.ndarray:
        """Reference view as an (X, Y, C) array."""
        return self.data[self.u0, self.v0]

    def crop_spatial(self, x0: int, y0: int, width: int, height: int) -> "LightField4D":
        """Spatial window [x0, x0+width) x [y0, y0+height), all views kept."""
        X, Y = self.shape_xy
        if not (0 <= x0 and x0 + width <= X):
            raise BoundsError(f"x window [{x0}, {x0 + width}) outside [0, {X}) on axis x")
        if not (0 <= y0 and y0 + height <= Y):
            raise BoundsError(f"y window [{y0}, {y0 + height}) outside [0, {Y}) on axis y")
        return LightField4D(self.data[:, :, x0 : x0 + width, y0 : y0 + height, :].copy())


@dataclass
class EPI:
    """2D light-field slice: one view axis crossed with one spatial axis.

    ``data`` has shape (views, space, C).  ``view_axis``/``space_axis``
    record which light-field axes were sliced ("u"/"x" for horizontal,
    "v"/"y" for vertical); ``fixed`` holds the held-constant indices.
    ``valid`` flags pixels that carry real scene samples (shearing clears
    edge-extrapolated entries).
    """

    data: np.ndarray
    view_axis: str
    space_axis: str
    fixed: dict[str, int]
    valid: np.ndarray = field(default=None)  # type: ignore[assignment]

    def __post_init__(self):
        if self.data.ndim != 3:
            raise ShapeError(f"EPI must be (views, space, C), got shape {self.data.shape}")
        if self.valid is None:
            self.valid = np.ones(self.data.shape[:2], dtype=bool)
        elif self.valid.shape != self.data.shape[:2]:
            raise ShapeError(
                f"validity mask shape {self.valid.shape} != EPI grid {self.data.shape[:2]}"
            )

    @property
    def n_views(self) -> int:
        return self.data.shape[0]

    @property
    def n_space(self) -> int:
        return self.data.shape[1]

    @property
    def r0(self) -> int:
        """Reference view row (grid center)."""
        return (self.n_views - 1) // 2


@dataclass
class EPIStack:
    """All same-direction EPIs of a scene stacked along the view axis.

    Horizontal stacks have shape ``(U*Y, X, C)``: block ``b`` holds the EPI
    of spatial row ``y=b``, so stack row ``b*U + r`` is view ``r`` of that
    EPI (block-major).  Vertical stacks are ``(V*X, Y, C)`` with blocks
    over ``x``.
    """

    data: np.ndarray
    direction: str
    n_blocks: int
    block_height: int
    valid: np.ndarray = field(default=None)  # type: ignore[assignment]

    def __post_init__(self):
        if self.direction not in (HORIZONTAL, VERTICAL):
            raise DomainError(f"unknown stack direction {self.direction!r}")
        if self.data.ndim != 3:
            raise ShapeError(f"EPI stack must be (rows, space, C), got shape {self.data.shape}")
        if self.data.shape[0] != self.n_blocks * self.block_height:
            raise ShapeError(
                f"stack rows {self.data.shape[0]} != n_blocks*block_height "
                f"({self.n_blocks}*{self.block_height})"
            )
        if self.valid is None:
            self.valid = np.ones(self.data.shape[:2], dtype=bool)
        elif self.valid.shape != self.data.shape[:2]:
            raise ShapeError(
                f"validity mask shape {self.valid.shape} != stack grid {self.data.shape[:2]}"
            )

    @property
    def n_space(self) -> int:
        return self.data.shape[1]

    @property
    def r0(self) -> int:
        return (self.block_height - 1) // 2

    def block(self, b: int) -> np.ndarray:
        """Rows of constituent EPI ``b`` (a view, not a copy)."""
        if not 0 <= b < self.n_blocks:
            raise BoundsError(f"block {b} outside [0, {self.n_blocks}) on axis block")
        lo = b * self.block_height
        return self.data[lo : lo + self.block_height]

    def spatial_valid(self) -> np.ndarray:
        """Per-(block, space) mask: true where all views of a block column are valid.

        For a horizontal stack the result is indexed (y, x); for a vertical
        stack, (x, y).
        """
        per_block = self.valid.reshape(self.n_blocks, self.block_height, self.n_space)
        return per_block.all(axis=1)


@dataclass(frozen=True)
class DisparityMap:
    """Per-pixel disparity indexed ``[x, y]``, in pixels per view step."""

    data: np.ndarray
    valid: np.ndarray = None  # type: ignore[assignment]

    def __post_init__(self):
        if self.data.ndim != 2:
            raise ShapeError(f"disparity map must be 2D (X, Y), got shape {self.data.shape}")
        if self.valid is None:
            object.__setattr__(self, "valid", np.ones(self.data.shape, dtype=bool))
        elif self.valid.shape != self.data.shape:
            raise ShapeError(
                f"validity mask shape {self.valid.shape} != map shape {self.data.shape}"
            )
        if not np.isfinite(self.data[self.valid]).all():
            raise DomainError("disparity values must be finite where valid")

    @property
    def shape_xy(self) -> tuple[int, int]:
        return self.data.shape

    def crop(self, x0: int, y0: int, width: int, height: int) -> "DisparityMap":
        X, Y = self.data.shape
        if not (0 <= x0 and x0 + width <= X and 0 <= y0 and y0 + height <= Y):
            raise BoundsError(f"crop window outside ({X}, {Y}) map")
        return DisparityMap(
            self.data[x0 : x0 + width, y0 : y0 + height].copy(),
            self.valid[x0 : x0 + width, y0 : y0 + height].copy(),
        )


def extract_epi_h(lf: LightField4D, v: int, y: int) -> EPI:
    """Horizontal EPI: fix (v, y), keep (u, x).  E[u, x, c] = L[u, v, x, y, c]."""
    U, V = lf.shape_uv
    X, Y = lf.shape_xy
    if not 0 <= v < V:
        raise BoundsError(f"view index {v} outside [0, {V}) on axis v")
    if not 0 <= y < Y:
        raise BoundsError(f"spatial index {y} outside [0, {Y}) on axis y")
    return EPI(lf.data[:, v, :, y, :].copy(), "u", "x", {"v": v, "y": y})


def extract_epi_v(lf: LightField4D, u: int, x: int) -> EPI:
    """Vertical EPI: fix (u, x), keep (v, y).  E[v, y, c] = L[u, v, x, y, c]."""
    U, V = lf.shape_uv
    X, Y = lf.shape_xy
    if not 0 <= u < U:
        raise BoundsError(f"view index {u} outside [0, {U}) on axis u")
    if not 0 <= x < X:
        raise BoundsError(f"spatial index {x} outside [0, {X}) on axis x")
    return EPI(lf.data[u, :, x, :, :].copy(), "v", "y", {"u": u, "x": x})


def build_epi_stack(lf: LightField4D, direction: str, fixed_view: int) -> EPIStack:
    """Stack every same-direction EPI of the scene along the view axis.

    ``fixed_view`` is the held-constant index on the orthogonal view axis
    (v for horizontal stacks, u for vertical).  Horizontal result:
    (U*Y, X, C); vertical: (V*X, Y, C).
    """
    U, V = lf.shape_uv
    X, Y = lf.shape_xy
    C = lf.channels
    if direction == HORIZONTAL:
        if not 0 <= fixed_view < V:
            raise BoundsError(f"view index {fixed_view} outside [0, {V}) on axis v")
        # L[u, v0, x, y, c] -> rows (y, u), space x
        sub = lf.data[:, fixed_view]  # (U, X, Y, C)
        stacked = np.ascontiguousarray(sub.transpose(2, 0, 1, 3).reshape(Y * U, X, C))
        return EPIStack(stacked, HORIZONTAL, n_blocks=Y, block_height=U)
    if direction == VERTICAL:
        if not 0 <= fixed_view < U:
            raise BoundsError(f"view index {fixed_view} outside [0, {U}) on axis u")
        sub = lf.data[fixed_view]  # (V, X, Y, C)
        stacked = np.ascontiguousarray(sub.transpose(1, 0, 2, 3).reshape(X * V, Y, C))
        return EPIStack(stacked, VERTICAL, n_blocks=X, block_height=V)
    raise DomainError(f"unknown stack direction {direction!r}")


def add_gaussian_noise(lf: LightField4D, sigma: float, seed: int) -> LightField4D:
    """i.i.d. zero-mean Gaussian noise of std ``sigma``, clamped to [0, 1].

    Pure function of (lf, sigma, seed): the same seed always yields the
    same field.
    """
    if sigma < 0:
        raise DomainError(f"noise sigma must be >= 0, got {sigma}")
    if sigma == 0:
        return LightField4D(lf.data.copy())
    rng = np.random.default_rng(seed)
    noisy = lf.data + rng.standard_normal(lf.data.shape) * sigma
    return LightField4D(np.clip(noisy, 0.0, 1.0).astype(lf.data.dtype, copy=False))
