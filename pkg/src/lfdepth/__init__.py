"""Light-field depth estimation from EPI stacks.

Core pieces: 4D light-field slicing into EPIs and EPI stacks, sub-pixel
refocus shearing, a synthetic layered-scene oracle, a from-scratch
convolutional regressor with a Siamese self-supervised training scheme,
and disparity evaluation metrics.
"""

from .errors import (
    BoundsError,
    ConfigError,
    DomainError,
    LfdepthError,
    NumericsError,
    PfmParseError,
    SceneLoadError,
    ShapeError,
    TrainingError,
)
from .lightfield import (
    HORIZONTAL,
    VERTICAL,
    EPI,
    DisparityMap,
    EPIStack,
    LightField4D,
    add_gaussian_noise,
    build_epi_stack,
    extract_epi_h,
    extract_epi_v,
)
from .refocus import RefocusGeometry, shear_epi, shear_epi_stack, view_pixel_shift
from .slope import SlopeEstimate, structure_tensor_disparity, structure_tensor_slope
from .synth import (
    DiskMask,
    FullMask,
    LayerSpec,
    RectMask,
    SyntheticSceneSpec,
    random_scene_spec,
    synth_lightfield,
)

__version__ = "0.1.0"

__all__ = [
    "BoundsError",
    "ConfigError",
    "DomainError",
    "LfdepthError",
    "NumericsError",
    "PfmParseError",
    "SceneLoadError",
    "ShapeError",
    "TrainingError",
    "HORIZONTAL",
    "VERTICAL",
    "EPI",
    "DisparityMap",
    "EPIStack",
    "LightField4D",
    "add_gaussian_noise",
    "build_epi_stack",
    "extract_epi_h",
    "extract_epi_v",
    "RefocusGeometry",
    "shear_epi",
    "shear_epi_stack",
    "view_pixel_shift",
    "SlopeEstimate",
    "structure_tensor_disparity",
    "structure_tensor_slope",
    "DiskMask",
    "FullMask",
    "LayerSpec",
    "RectMask",
    "SyntheticSceneSpec",
    "random_scene_spec",
    "synth_lightfield",
    "__version__",
]
