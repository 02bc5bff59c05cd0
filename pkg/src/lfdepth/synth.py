"""Synthetic layered scenes with exact ground-truth disparity.

Scenes are stacks of textured fronto-parallel layers.  Each view (u, v)
renders every layer's texture and opacity mask shifted by
``((u - u0) * d, (v - v0) * d)`` and composites front over back, so a
point with layer disparity ``d`` appears at ``x0 + (u0 - u) * d`` —
exactly the geometry the EPI and refocus code assumes.  The center-view
disparity of the top visible layer is returned as ground truth.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np
from scipy import ndimage

from .errors import DomainError, ShapeError
from .lightfield import DisparityMap, LightField4D
from .refocus import shift_linear


# --------------------------------------------------------------------------
# Layer masks
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class FullMask:
    kind: str = "full"

    def render(self, X: int, Y: int) -> np.ndarray:
        return np.ones((X, Y), dtype=bool)


@dataclass(frozen=True)
class RectMask:
    x0: int
    y0: int
    width: int
    height: int
    kind: str = "rect"

    def render(self, X: int, Y: int) -> np.ndarray:
        m = np.zeros((X, Y), dtype=bool)
        m[max(self.x0, 0) : self.x0 + self.width, max(self.y0, 0) : self.y0 + self.height] = True
        return m


@dataclass(frozen=True)
class DiskMask:
    cx: float
    cy: float
    radius: float
    kind: str = "disk"

    def render(self, X: int, Y: int) -> np.ndarray:
        xs = np.arange(X, dtype=np.float64)[:, None]
        ys = np.arange(Y, dtype=np.float64)[None, :]
        return (xs - self.cx) ** 2 + (ys - self.cy) ** 2 <= self.radius**2


_MASK_KINDS = {"full": FullMask, "rect": RectMask, "disk": DiskMask}


def _mask_from_dict(d: dict) -> FullMask | RectMask | DiskMask:
    kind = d.get("kind")
    if kind not in _MASK_KINDS:
        raise DomainError(f"unknown mask kind {kind!r}; expected one of {sorted(_MASK_KINDS)}")
    args = {k: v for k, v in d.items() if k != "kind"}
    return _MASK_KINDS[kind](**args)


# --------------------------------------------------------------------------
# Scene specification
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class LayerSpec:
    """One fronto-parallel layer: disparity, opaque region, texture recipe."""

    disparity: float
    mask: FullMask | RectMask | DiskMask
    texture_seed: int
    smoothness: float = 2.5  # Gaussian blur std of the noise texture, in pixels
    contrast: tuple[float, float] = (0.08, 0.92)


@dataclass(frozen=True)
class SyntheticSceneSpec:
    """Layered test scene.  ``layers`` are ordered back to front."""

    name: str
    views: tuple[int, int]  # (U, V)
    size: tuple[int, int]  # (X, Y)
    layers: tuple[LayerSpec, ...]
    disparity_range: tuple[float, float] = (-2.0, 2.0)
    channels: int = 3
    seed: int = 0

    def __post_init__(self):
        lo, hi = self.disparity_range
        if not lo < hi:
            raise DomainError(f"disparity range must satisfy lo < hi, got [{lo}, {hi}]")
        for layer in self.layers:
            if not lo <= layer.disparity <= hi:
                raise DomainError(
                    f"layer disparity {layer.disparity} outside declared range [{lo}, {hi}]"
                )

    def to_json(self) -> str:
        layers = [
            {
                "disparity": l.disparity,
                "mask": {k: v for k, v in vars(l.mask).items()},
                "texture_seed": l.texture_seed,
                "smoothness": l.smoothness,
                "contrast": list(l.contrast),
            }
            for l in self.layers
        ]
        return json.dumps(
            {
                "name": self.name,
                "views": list(self.views),
                "size": list(self.size),
                "layers": layers,
                "disparity_range": list(self.disparity_range),
                "channels": self.channels,
                "seed": self.seed,
            },
            indent=2,
            sort_keys=True,
        )

    @staticmethod
    def from_json(text: str) -> "SyntheticSceneSpec":
        raw = json.loads(text)
        known = {"name", "views", "size", "layers", "disparity_range", "channels", "seed"}
        unknown = set(raw) - known
        if unknown:
            raise DomainError(f"unknown scene spec keys: {sorted(unknown)}")
        layers = tuple(
            LayerSpec(
                disparity=l["disparity"],
                mask=_mask_from_dict(l["mask"]),
                texture_seed=l["texture_seed"],
                smoothness=l.get("smoothness", 2.5),
                contrast=tuple(l.get("contrast", (0.08, 0.92))),
            )
            for l in raw["layers"]
        )
        return SyntheticSceneSpec(
            name=raw["name"],
            views=tuple(raw["views"]),
            size=tuple(raw["size"]),
            layers=layers,
            disparity_range=tuple(raw.get("disparity_range", (-2.0, 2.0))),
            channels=raw.get("channels", 3),
            seed=raw.get("seed", 0),
        )


# --------------------------------------------------------------------------
# Rendering
# --------------------------------------------------------------------------


def render_texture(layer: LayerSpec, size: tuple[int, int], channels: int, base_seed: int) -> np.ndarray:
    """Band-limited noise texture on the 8-bit intensity grid, shape (X, Y, C).

    The blur keeps the texture resolvable under sub-pixel shifts; snapping
    to multiples of 1/255 makes PNG export lossless.
    """
    X, Y = size
    rng = np.random.default_rng([base_seed, layer.texture_seed])
    tex = rng.standard_normal((X, Y, channels))
    tex = ndimage.gaussian_filter(tex, sigma=(layer.smoothness, layer.smoothness, 0), mode="wrap")
    lo, hi = layer.contrast
    for c in range(channels):
        ch = tex[:, :, c]
        span = ch.max() - ch.min()
        if span <= 0:
            tex[:, :, c] = 0.5 * (lo + hi)
        else:
            tex[:, :, c] = lo + (ch - ch.min()) * (hi - lo) / span
    return np.round(tex * 255.0) / 255.0


def _shift_xy(img: np.ndarray, dx: float, dy: float) -> np.ndarray:
    """Translate an (X, Y, ...) image by (dx, dy): out[x, y] = in[x+dx, y+dy].

    Bilinear with edge replication, as two 1D passes.
    """
    X, Y = img.shape[0], img.shape[1]
    flat = img.reshape(X, Y, -1)
    if dy != 0.0:
        # shift along y: rows are x, space axis is y
        flat, _ = shift_linear(flat, np.full(X, dy))
    if dx != 0.0:
        swapped = np.ascontiguousarray(flat.transpose(1, 0, 2))
        swapped, _ = shift_linear(swapped, np.full(Y, dx))
        flat = np.ascontiguousarray(swapped.transpose(1, 0, 2))
    return flat.reshape(img.shape)


def synth_lightfield(spec: SyntheticSceneSpec) -> tuple[LightField4D, DisparityMap]:
    """Render a layered scene into a light field plus ground-truth disparity.

    Deterministic per spec (including seeds).  Raises if the layer list is
    empty or leaves pixels uncovered.
    """
    if not spec.layers:
        raise DomainError("scene spec needs at least one layer")
    U, V = spec.views
    X, Y = spec.size
    C = spec.channels
    if U < 1 or V < 1 or X < 1 or Y < 1:
        raise ShapeError(f"degenerate scene dims views={spec.views} size={spec.size}")
    u0, v0 = (U - 1) // 2, (V - 1) // 2

    masks = [layer.mask.render(X, Y) for layer in spec.layers]
    coverage = np.zeros((X, Y), dtype=bool)
    for m in masks:
        coverage |= m
    if not coverage.all():
        raise DomainError("layer masks leave part of the scene uncovered")

    textures = [render_texture(layer, spec.size, C, spec.seed) for layer in spec.layers]

    data = np.zeros((U, V, X, Y, C), dtype=np.float64)
    for u in range(U):
        for v in range(V):
            view = np.zeros((X, Y, C), dtype=np.float64)
            for layer, mask, tex in zip(spec.layers, masks, textures):
                dx = (u - u0) * layer.disparity
                dy = (v - v0) * layer.disparity
                tex_s = _shift_xy(tex, dx, dy)
                alpha = _shift_xy(mask.astype(np.float64)[:, :, None], dx, dy)
                view = alpha * tex_s + (1.0 - alpha) * view
            data[u, v] = view

    gt = np.zeros((X, Y), dtype=np.float64)
    for layer, mask in zip(spec.layers, masks):
        gt[mask] = layer.disparity
    return LightField4D(np.clip(data, 0.0, 1.0)), DisparityMap(gt)


def random_scene_spec(
    name: str,
    seed: int,
    size: tuple[int, int] = (64, 64),
    views: tuple[int, int] = (9, 9),
    disparity_range: tuple[float, float] = (-2.0, 2.0),
    n_foreground: int | None = None,
    channels: int = 3,
    smoothness: float = 2.5,
) -> SyntheticSceneSpec:
    """Random layered scene: full background plus 1-2 foreground shapes."""
    rng = np.random.default_rng(seed)
    X, Y = size
    lo, hi = disparity_range
    if n_foreground is None:
        n_foreground = int(rng.integers(1, 3))
    layers = [
        LayerSpec(
            disparity=float(rng.uniform(lo, hi)),
            mask=FullMask(),
            texture_seed=int(rng.integers(0, 2**31)),
            smoothness=smoothness,
        )
    ]
    for _ in range(n_foreground):
        if rng.random() < 0.5:
            r = float(rng.uniform(0.15, 0.28) * min(X, Y))
            mask = DiskMask(
                cx=float(rng.uniform(0.25 * X, 0.75 * X)),
                cy=float(rng.uniform(0.25 * Y, 0.75 * Y)),
                radius=r,
            )
        else:
            w = int(rng.integers(max(X // 5, 4), max(X // 2, 6)))
            h = int(rng.integers(max(Y // 5, 4), max(Y // 2, 6)))
            mask = RectMask(
                x0=int(rng.integers(0, X - w)),
                y0=int(rng.integers(0, Y - h)),
                width=w,
                height=h,
            )
        layers.append(
            LayerSpec(
                disparity=float(rng.uniform(lo, hi)),
                mask=mask,
                texture_seed=int(rng.integers(0, 2**31)),
                smoothness=smoothness,
            )
        )
    return SyntheticSceneSpec(
        name=name,
        views=views,
        size=size,
        layers=tuple(layers),
        disparity_range=disparity_range,
        channels=channels,
        seed=seed,
    )
