"""Random EPI-stack patch sampler producing refocused training pairs.

Each draw picks a scene, a square spatial window, and a shift; the
window's horizontal/vertical EPI stacks are built and sheared copies made
with :func:`lfdepth.refocus.shear_epi_stack`.  Supervised samples also
carry the ground-truth disparity window; the self-supervised sampler
never touches ground truth, so the pretraining path cannot read labels
even by accident.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DomainError
from .lightfield import HORIZONTAL, VERTICAL, DisparityMap, EPIStack, build_epi_stack
from .refocus import shear_epi_stack
from .scenes import SceneData


@dataclass(frozen=True)
class SampleProvenance:
    scene: str
    origin: tuple[int, int]  # window (x0, y0)
    draw_index: int


@dataclass
class PretrainSample:
    """Siamese input pair with a known shift; no disparity label."""

    stack_h: EPIStack
    stack_v: EPIStack
    stack_h_ref: EPIStack
    stack_v_ref: EPIStack
    shift: float
    provenance: SampleProvenance

    @property
    def patch(self) -> int:
        return self.stack_h.n_space


@dataclass
class TrainingSample(PretrainSample):
    """Pretrain pair plus the ground-truth disparity window."""

    gt_patch: DisparityMap = None  # type: ignore[assignment]

    def without_label(self) -> PretrainSample:
        return PretrainSample(
            self.stack_h,
            self.stack_v,
            self.stack_h_ref,
            self.stack_v_ref,
            self.shift,
            self.provenance,
        )


def window_stacks(scene: SceneData, x0: int, y0: int, patch: int) -> tuple[EPIStack, EPIStack]:
    """Horizontal and vertical EPI stacks through one square window."""
    lf = scene.lightfield.crop_spatial(x0, y0, patch, patch)
    return (
        build_epi_stack(lf, HORIZONTAL, lf.v0),
        build_epi_stack(lf, VERTICAL, lf.u0),
    )


def _check_patch(scenes: Sequence[SceneData], patch: int, m: int) -> None:
    if m < 1:
        raise DomainError(f"batch size must be >= 1, got {m}")
    if not scenes:
        raise DomainError("need at least one scene to sample from")
    for scene in scenes:
        X, Y = scene.lightfield.shape_xy
        if patch > min(X, Y):
            raise DomainError(
                f"patch {patch} larger than scene {scene.meta.name!r} ({X}x{Y})"
            )


def _draws(
    scenes: Sequence[SceneData],
    patch: int,
    m: int,
    shift_range: tuple[float, float],
    rng: np.random.Generator,
):
    s_lo, s_hi = shift_range
    if not s_lo <= s_hi:
        raise DomainError(f"shift range must satisfy lo <= hi, got [{s_lo}, {s_hi}]")
    for i in range(m):
        scene = scenes[int(rng.integers(len(scenes)))]
        X, Y = scene.lightfield.shape_xy
        x0 = int(rng.integers(0, X - patch + 1))
        y0 = int(rng.integers(0, Y - patch + 1))
        shift = float(rng.uniform(s_lo, s_hi))
        stack_h, stack_v = window_stacks(scene, x0, y0, patch)
        yield i, scene, x0, y0, shift, stack_h, stack_v


def sample_pretrain_batch(
    scenes: Sequence[SceneData],
    patch: int,
    m: int,
    shift_range: tuple[float, float] = (-2.0, 2.0),
    seed=0,
) -> list[PretrainSample]:
    """Label-free Siamese batch; deterministic per seed."""
    _check_patch(scenes, patch, m)
    rng = np.random.default_rng(seed)
    batch = []
    for i, scene, x0, y0, shift, stack_h, stack_v in _draws(scenes, patch, m, shift_range, rng):
        batch.append(
            PretrainSample(
                stack_h=stack_h,
                stack_v=stack_v,
                stack_h_ref=shear_epi_stack(stack_h, shift),
                stack_v_ref=shear_epi_stack(stack_v, shift),
                shift=shift,
                provenance=SampleProvenance(scene.meta.name, (x0, y0), i),
            )
        )
    return batch


def sample_training_batch(
    scenes: Sequence[SceneData],
    patch: int,
    m: int,
    shift_range: tuple[float, float] = (-2.0, 2.0),
    seed=0,
) -> list[TrainingSample]:
    """Labelled batch: same draw order as the pretrain sampler, plus gt."""
    _check_patch(scenes, patch, m)
    rng = np.random.default_rng(seed)
    batch = []
    for i, scene, x0, y0, shift, stack_h, stack_v in _draws(scenes, patch, m, shift_range, rng):
        batch.append(
            TrainingSample(
                stack_h=stack_h,
                stack_v=stack_v,
                stack_h_ref=shear_epi_stack(stack_h, shift),
                stack_v_ref=shear_epi_stack(stack_v, shift),
                shift=shift,
                provenance=SampleProvenance(scene.meta.name, (x0, y0), i),
                gt_patch=scene.gt.crop(x0, y0, patch, patch),
            )
        )
    return batch
