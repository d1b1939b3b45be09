"""Python access to the svtrans C++ core.

Frames are uint8 numpy arrays shaped (H, W) or (H, W, 3); videos add a
leading frame axis. Frame indices are 1-based, as in the CLI.
External-reconstructor glue lives in svtrans.reconstructor.
"""

from ._core import (
    PSNR_CAP,
    SCALE,
    ConfigError,
    CorruptionError,
    DataError,
    DimensionError,
    Error,
    ExternalProcessError,
    FormatError,
    FrameIndexError,
    bpp_saving,
    detect_redundant,
    downsample,
    drop_redundant,
    fixed_interval,
    hann_window,
    interframe_psnr_curve,
    kernel_weight,
    local_maxima,
    mse,
    pack,
    read_png,
    read_raw,
    psnr,
    restore_redundant,
    select_adaptive,
    smooth_curve,
    ssim,
    unpack,
    upsample,
    write_png,
    write_raw,
)

__version__ = "0.1.0"
