"""Image containers, pixel primitives, homography geometry, and raster I/O."""

from .filters import (
    correlate1d,
    gaussian_blur,
    gaussian_kernel1d,
    reflect101_indices,
    resize_bilinear,
    resize_nearest,
    sobel_gradients,
)
from .geometry import (
    PointAtInfinityError,
    as_homography,
    invert_homography,
    project_point,
    project_points,
)
from .image import (
    GRAY_WEIGHTS,
    as_gray,
    as_mask,
    as_rgb,
    degrade_photometric,
    luma_stats,
    rgb_to_gray,
)
from .keypoints import (
    DEFAULT_SCALE,
    KP_SCALE,
    KP_SCORE,
    KP_X,
    KP_Y,
    check_keypoints_in_bounds,
    empty_keypoints,
    load_keypoints_csv,
    make_keypoints,
    save_keypoints_csv,
)
from .pnm import (
    FormatError,
    UnsupportedFormatError,
    load_image,
    load_mask,
    save_image,
    save_mask,
)

__all__ = [
    "GRAY_WEIGHTS",
    "DEFAULT_SCALE",
    "KP_X",
    "KP_Y",
    "KP_SCORE",
    "KP_SCALE",
    "FormatError",
    "PointAtInfinityError",
    "UnsupportedFormatError",
    "as_gray",
    "as_homography",
    "as_mask",
    "as_rgb",
    "check_keypoints_in_bounds",
    "correlate1d",
    "degrade_photometric",
    "empty_keypoints",
    "gaussian_blur",
    "gaussian_kernel1d",
    "invert_homography",
    "load_image",
    "load_keypoints_csv",
    "load_mask",
    "luma_stats",
    "make_keypoints",
    "project_point",
    "project_points",
    "reflect101_indices",
    "resize_bilinear",
    "resize_nearest",
    "rgb_to_gray",
    "save_image",
    "save_keypoints_csv",
    "save_mask",
    "sobel_gradients",
]
