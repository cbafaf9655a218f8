"""Binary PGM (P5) / PPM (P6) raster I/O, plus optional PNG via Pillow.

The native header is the ASCII line ``P5|P6 <width> <height> 255`` followed
by raw row-major bytes, which round-trips bit-exactly. Masks are stored as
PGM with pixel values {0, 255}.
"""

from __future__ import annotations

import os

import numpy as np

from .image import as_mask, as_rgb


class FormatError(ValueError):
    """Raster file exists but its header or payload is malformed."""


class UnsupportedFormatError(ValueError):
    """File extension or magic number is not a supported raster format."""


_PNM_EXTENSIONS = {".ppm", ".pgm"}


def _read_pnm(path) -> tuple[str, np.ndarray]:
    with open(path, "rb") as fh:
        data = fh.read()
    tokens = []
    pos = 0
    while len(tokens) < 4 and pos < len(data):
        while pos < len(data) and data[pos : pos + 1].isspace():
            pos += 1
        start = pos
        while pos < len(data) and not data[pos : pos + 1].isspace():
            pos += 1
        if pos > start:
            tokens.append(data[start:pos])
    if len(tokens) < 4:
        raise FormatError(f"{path}: truncated PNM header")
    magic = tokens[0].decode("ascii", errors="replace")
    if magic not in ("P5", "P6"):
        raise UnsupportedFormatError(f"{path}: unsupported magic {magic!r}")
    try:
        width, height, maxval = (int(t) for t in tokens[1:4])
    except ValueError as exc:
        raise FormatError(f"{path}: non-numeric PNM header field") from exc
    if width < 1 or height < 1:
        raise FormatError(f"{path}: invalid dimensions {width}x{height}")
    if maxval != 255:
        raise FormatError(f"{path}: only maxval 255 is supported, got {maxval}")
    pos += 1  # single whitespace byte after maxval
    channels = 3 if magic == "P6" else 1
    expected = width * height * channels
    payload = data[pos : pos + expected]
    if len(payload) != expected:
        raise FormatError(
            f"{path}: expected {expected} pixel bytes, found {len(payload)}"
        )
    arr = np.frombuffer(payload, dtype=np.uint8)
    if channels == 3:
        return magic, arr.reshape(height, width, 3)
    return magic, arr.reshape(height, width)


def _write_pnm(path, arr: np.ndarray) -> None:
    magic = "P6" if arr.ndim == 3 else "P5"
    header = f"{magic} {arr.shape[1]} {arr.shape[0]} 255\n".encode("ascii")
    with open(path, "wb") as fh:
        fh.write(header)
        fh.write(np.ascontiguousarray(arr, dtype=np.uint8).tobytes())


def _png_module():
    try:
        from PIL import Image
    except ImportError as exc:  # pragma: no cover - Pillow present in CI
        raise UnsupportedFormatError(
            "PNG support requires Pillow (pip install densekp[png])"
        ) from exc
    return Image


def load_image(path) -> np.ndarray:
    """Load an image file as an (H, W, 3) uint8 RGB array."""
    if not os.path.exists(path):
        raise FileNotFoundError(path)
    ext = os.path.splitext(str(path))[1].lower()
    if ext == ".png":
        arr = np.asarray(_png_module().open(path).convert("RGB"))
        return np.ascontiguousarray(arr, dtype=np.uint8)
    if ext in _PNM_EXTENSIONS:
        _, arr = _read_pnm(path)
        if arr.ndim == 2:
            arr = np.repeat(arr[:, :, None], 3, axis=2)
        return arr
    raise UnsupportedFormatError(f"{path}: unsupported image extension {ext!r}")


def save_image(img: np.ndarray, path) -> None:
    """Save an RGB image; .ppm is the native lossless format, .png optional."""
    img = as_rgb(img)
    ext = os.path.splitext(str(path))[1].lower()
    if ext == ".ppm":
        _write_pnm(path, img)
    elif ext == ".png":
        _png_module().fromarray(img, mode="RGB").save(path)
    else:
        raise UnsupportedFormatError(f"{path}: unsupported image extension {ext!r}")


def save_mask(mask: np.ndarray, path) -> None:
    """Save a {0,1} mask as a {0,255} binary PGM."""
    mask = as_mask(mask)
    _write_pnm(path, mask * np.uint8(255))


def load_mask(path) -> np.ndarray:
    """Load a {0,255} PGM back into a {0,1} uint8 mask."""
    if not os.path.exists(path):
        raise FileNotFoundError(path)
    magic, arr = _read_pnm(path)
    if magic != "P5":
        raise FormatError(f"{path}: masks must be single-channel PGM")
    values = np.unique(arr)
    if not np.all(np.isin(values, [0, 255])):
        raise FormatError(f"{path}: mask values must be 0 or 255, got {values[:8]}")
    return (arr == 255).astype(np.uint8)
