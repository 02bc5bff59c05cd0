"""Scene directories: PNG view grids plus PFM ground-truth disparity.

A scene directory holds one 8-bit PNG per view named by a pattern
(default ``view_{u:02d}_{v:02d}.png``), the center-view disparity as
``gt_disp.pfm``, and a ``scene.cfg`` key-value file with dimensions and
the disparity range.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np
from PIL import Image

from .errors import SceneLoadError
from .lightfield import DisparityMap, LightField4D
from .pfm import PFMImage, read_pfm, write_pfm

CFG_NAME = "scene.cfg"
_CFG_KEYS = (
    "name",
    "U",
    "V",
    "X",
    "Y",
    "C",
    "d_min",
    "d_max",
    "split",
    "view_pattern",
    "disparity_file",
)


@dataclass(frozen=True)
class SceneMeta:
    """Dimensions, disparity range, and file layout of one scene."""

    name: str
    views: tuple[int, int]  # (U, V)
    size: tuple[int, int]  # (X, Y)
    channels: int = 3
    disparity_range: tuple[float, float] = (-2.0, 2.0)
    split: str = "train"
    view_pattern: str = "view_{u:02d}_{v:02d}.png"
    disparity_file: str = "gt_disp.pfm"

    def __post_init__(self):
        lo, hi = self.disparity_range
        if not lo < hi:
            raise SceneLoadError(f"scene {self.name!r}: d_min {lo} must be < d_max {hi}")

    def view_name(self, u: int, v: int) -> str:
        return self.view_pattern.format(u=u, v=v)


@dataclass
class SceneData:
    """A fully loaded scene: metadata, light field, and ground truth."""

    meta: SceneMeta
    lightfield: LightField4D
    gt: DisparityMap


def write_scene_cfg(meta: SceneMeta) -> str:
    lo, hi = meta.disparity_range
    lines = [
        f"name = {meta.name}",
        f"U = {meta.views[0]}",
        f"V = {meta.views[1]}",
        f"X = {meta.size[0]}",
        f"Y = {meta.size[1]}",
        f"C = {meta.channels}",
        f"d_min = {lo!r}",
        f"d_max = {hi!r}",
        f"split = {meta.split}",
        f"view_pattern = {meta.view_pattern}",
        f"disparity_file = {meta.disparity_file}",
    ]
    return "\n".join(lines) + "\n"


def parse_scene_cfg(text: str) -> SceneMeta:
    values: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise SceneLoadError(f"scene.cfg line {lineno}: expected 'key = value', got {raw!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        if key not in _CFG_KEYS:
            raise SceneLoadError(f"scene.cfg line {lineno}: unknown key {key!r}")
        values[key] = value.strip()
    missing = [k for k in ("name", "U", "V", "X", "Y", "d_min", "d_max") if k not in values]
    if missing:
        raise SceneLoadError(f"scene.cfg missing required keys: {missing}")
    try:
        meta = SceneMeta(
            name=values["name"],
            views=(int(values["U"]), int(values["V"])),
            size=(int(values["X"]), int(values["Y"])),
            channels=int(values.get("C", "3")),
            disparity_range=(float(values["d_min"]), float(values["d_max"])),
            split=values.get("split", "train"),
            view_pattern=values.get("view_pattern", "view_{u:02d}_{v:02d}.png"),
            disparity_file=values.get("disparity_file", "gt_disp.pfm"),
        )
    except ValueError as exc:
        raise SceneLoadError(f"scene.cfg has a malformed value: {exc}") from None
    return meta


def _load_view(path: Path, meta: SceneMeta) -> np.ndarray:
    """One 8-bit view as (X, Y, C) floats in [0, 1]."""
    if not path.exists():
        raise SceneLoadError(f"missing view file {path}")
    try:
        with Image.open(path) as im:
            im = im.convert("RGB" if meta.channels == 3 else "L")
            arr = np.asarray(im, dtype=np.float64) / 255.0
    except SceneLoadError:
        raise
    except Exception as exc:
        raise SceneLoadError(f"unreadable image {path}: {exc}") from exc
    if arr.ndim == 2:
        arr = arr[:, :, None]
    X, Y = meta.size
    if arr.shape[0] != Y or arr.shape[1] != X:
        raise SceneLoadError(
            f"view {path.name} is {arr.shape[1]}x{arr.shape[0]} (WxH), "
            f"scene.cfg declares {X}x{Y}"
        )
    # (H=Y, W=X, C) top-down -> (X, Y, C)
    return np.ascontiguousarray(arr.transpose(1, 0, 2))


def load_scene(root: str | Path, meta: SceneMeta | None = None) -> SceneData:
    """Assemble a scene directory into memory, validating against its meta."""
    root = Path(root)
    if meta is None:
        cfg = root / CFG_NAME
        if not cfg.exists():
            raise SceneLoadError(f"missing {CFG_NAME} in {root}")
        meta = parse_scene_cfg(cfg.read_text())
    U, V = meta.views
    X, Y = meta.size
    data = np.zeros((U, V, X, Y, meta.channels), dtype=np.float64)
    for u in range(U):
        for v in range(V):
            data[u, v] = _load_view(root / meta.view_name(u, v), meta)

    gt_path = root / meta.disparity_file
    if not gt_path.exists():
        raise SceneLoadError(f"missing disparity file {gt_path}")
    try:
        pfm = read_pfm(gt_path.read_bytes())
    except Exception as exc:
        raise SceneLoadError(f"unreadable disparity file {gt_path}: {exc}") from exc
    if pfm.channels != 1:
        raise SceneLoadError(f"disparity file {gt_path} must be single-channel")
    arr = pfm.to_array()  # (H=Y, W=X) top-down
    if arr.shape != (Y, X):
        raise SceneLoadError(
            f"disparity map is {arr.shape[1]}x{arr.shape[0]} (WxH), expected {X}x{Y}"
        )
    gt = DisparityMap(np.ascontiguousarray(arr.T, dtype=np.float64))
    return SceneData(meta, LightField4D(data), gt)


def write_scene(root: str | Path, lf: LightField4D, gt: DisparityMap, meta: SceneMeta) -> None:
    """Write a scene directory in the layout :func:`load_scene` reads.

    View intensities are quantized to 8 bits; the disparity map is stored
    losslessly as float32 PFM.
    """
    root = Path(root)
    U, V = lf.shape_uv
    X, Y = lf.shape_xy
    if (U, V) != tuple(meta.views) or (X, Y) != tuple(meta.size):
        raise SceneLoadError(
            f"meta declares views={meta.views} size={meta.size}, "
            f"light field has views=({U}, {V}) size=({X}, {Y})"
        )
    if gt.shape_xy != (X, Y):
        raise SceneLoadError(f"disparity map shape {gt.shape_xy} != scene size ({X}, {Y})")
    root.mkdir(parents=True, exist_ok=True)
    (root / CFG_NAME).write_text(write_scene_cfg(meta))
    for u in range(U):
        for v in range(V):
            img = np.round(lf.data[u, v] * 255.0).astype(np.uint8)  # (X, Y, C)
            img = img.transpose(1, 0, 2)  # -> (Y, X, C) top-down
            pil = Image.fromarray(img[:, :, 0], "L") if meta.channels == 1 else Image.fromarray(img, "RGB")
            pil.save(root / meta.view_name(u, v))
    pfm = PFMImage.from_array(gt.data.T.astype(np.float32))  # (Y, X) top-down
    (root / meta.disparity_file).write_bytes(write_pfm(pfm))


def meta_for_scene(
    name: str,
    lf: LightField4D,
    disparity_range: tuple[float, float],
    split: str = "train",
) -> SceneMeta:
    return SceneMeta(
        name=name,
        views=lf.shape_uv,
        size=lf.shape_xy,
        channels=lf.channels,
        disparity_range=disparity_range,
        split=split,
    )
