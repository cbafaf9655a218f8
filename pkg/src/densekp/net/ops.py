"""Hand-written tensor ops with exact backward passes.

Layout is NCHW throughout. The convolution inner loops exist as numba and
numpy (einsum) variants; element-wise ops, normalization, and the bilinear
2x upsampler are plain numpy on both paths. Setting ``DENSEKP_DEBUG_NAN=1``
makes every op assert that its output is finite.
"""

from __future__ import annotations

import os

import numpy as np

from ..accel import njit, select

_DEBUG_NAN = os.environ.get("DENSEKP_DEBUG_NAN", "0").strip().lower() not in {"0", "false", "off", "no", ""}


def _check(name: str, arr: np.ndarray) -> np.ndarray:
    if _DEBUG_NAN and not np.all(np.isfinite(arr)):
        raise FloatingPointError(f"non-finite values in {name}")
    return arr


def _conv_out_size(n: int, k: int, stride: int, dilation: int, padding: int) -> int:
    eff = dilation * (k - 1) + 1
    out = (n + 2 * padding - eff) // stride + 1
    if out < 1:
        raise ValueError(
            f"convolution output collapses: size {n}, kernel {k}, stride {stride}, "
            f"dilation {dilation}, padding {padding}"
        )
    return out


def _pad_input(x: np.ndarray, padding: int) -> np.ndarray:
    if padding == 0:
        return x
    return np.pad(x, ((0, 0), (0, 0), (padding, padding), (padding, padding)))


def _validate_conv_shapes(x: np.ndarray, w: np.ndarray, b: np.ndarray | None):
    if x.ndim != 4 or w.ndim != 4:
        raise ValueError(f"conv2d expects 4-D tensors, got x{x.shape}, w{w.shape}")
    if x.shape[1] != w.shape[1]:
        raise ValueError(f"channel mismatch: input {x.shape} vs weight {w.shape}")
    if b is not None and b.shape != (w.shape[0],):
        raise ValueError(f"bias shape {b.shape} does not match weight {w.shape}")


def _conv2d_forward_numpy(xp, w, stride, dilation, out_h, out_w):
    batch, _, _, _ = xp.shape
    out = np.zeros((batch, w.shape[0], out_h, out_w), dtype=xp.dtype)
    kh, kw = w.shape[2], w.shape[3]
    for u in range(kh):
        for v in range(kw):
            xs = xp[
                :, :,
                u * dilation : u * dilation + stride * (out_h - 1) + 1 : stride,
                v * dilation : v * dilation + stride * (out_w - 1) + 1 : stride,
            ]
            out += np.einsum("bchw,oc->bohw", xs, w[:, :, u, v], optimize=True)
    return out


@njit(cache=True)
def _conv2d_forward_numba(xp, w, stride, dilation, out_h, out_w):
    batch, cin, _, _ = xp.shape
    cout, _, kh, kw = w.shape
    out = np.zeros((batch, cout, out_h, out_w), dtype=xp.dtype)
    for b in range(batch):
        for o in range(cout):
            for i in range(out_h):
                for j in range(out_w):
                    acc = xp[0, 0, 0, 0] * 0
                    for c in range(cin):
                        for u in range(kh):
                            for v in range(kw):
                                acc += (
                                    xp[b, c, i * stride + u * dilation, j * stride + v * dilation]
                                    * w[o, c, u, v]
                                )
                    out[b, o, i, j] = acc
    return out


_conv2d_forward_kernel = select(_conv2d_forward_numba, _conv2d_forward_numpy)


def conv2d_forward(x, w, b=None, stride=1, dilation=1, padding=0):
    """Cross-correlation of x (B,C,H,W) with w (O,C,kh,kw) plus bias."""
    x = np.asarray(x)
    w = np.asarray(w, dtype=x.dtype)
    _validate_conv_shapes(x, w, b)
    out_h = _conv_out_size(x.shape[2], w.shape[2], stride, dilation, padding)
    out_w = _conv_out_size(x.shape[3], w.shape[3], stride, dilation, padding)
    xp = np.ascontiguousarray(_pad_input(x, padding))
    out = _conv2d_forward_kernel(xp, np.ascontiguousarray(w), stride, dilation, out_h, out_w)
    if b is not None:
        out += np.asarray(b, dtype=x.dtype)[None, :, None, None]
    return _check("conv2d_forward", out)


def _conv2d_backward_numpy(xp, w, go, stride, dilation):
    kh, kw = w.shape[2], w.shape[3]
    out_h, out_w = go.shape[2], go.shape[3]
    grad_w = np.zeros_like(w)
    grad_xp = np.zeros_like(xp)
    for u in range(kh):
        for v in range(kw):
            rows = slice(u * dilation, u * dilation + stride * (out_h - 1) + 1, stride)
            cols = slice(v * dilation, v * dilation + stride * (out_w - 1) + 1, stride)
            xs = xp[:, :, rows, cols]
            grad_w[:, :, u, v] = np.einsum("bchw,bohw->oc", xs, go, optimize=True)
            grad_xp[:, :, rows, cols] += np.einsum(
                "bohw,oc->bchw", go, w[:, :, u, v], optimize=True
            )
    return grad_xp, grad_w


@njit(cache=True)
def _conv2d_backward_numba(xp, w, go, stride, dilation):
    batch, cin, _, _ = xp.shape
    cout, _, kh, kw = w.shape
    out_h, out_w = go.shape[2], go.shape[3]
    grad_w = np.zeros_like(w)
    grad_xp = np.zeros_like(xp)
    for b in range(batch):
        for o in range(cout):
            for i in range(out_h):
                for j in range(out_w):
                    g = go[b, o, i, j]
                    for c in range(cin):
                        for u in range(kh):
                            for v in range(kw):
                                y = i * stride + u * dilation
                                x = j * stride + v * dilation
                                grad_w[o, c, u, v] += xp[b, c, y, x] * g
                                grad_xp[b, c, y, x] += w[o, c, u, v] * g
    return grad_xp, grad_w


_conv2d_backward_kernel = select(_conv2d_backward_numba, _conv2d_backward_numpy)


def conv2d_backward(x, w, grad_out, stride=1, dilation=1, padding=0):
    """Exact gradients (grad_x, grad_w, grad_b) of conv2d_forward."""
    x = np.asarray(x)
    w = np.asarray(w, dtype=x.dtype)
    grad_out = np.asarray(grad_out, dtype=x.dtype)
    _validate_conv_shapes(x, w, None)
    out_h = _conv_out_size(x.shape[2], w.shape[2], stride, dilation, padding)
    out_w = _conv_out_size(x.shape[3], w.shape[3], stride, dilation, padding)
    expected = (x.shape[0], w.shape[0], out_h, out_w)
    if grad_out.shape != expected:
        raise ValueError(f"grad_out shape {grad_out.shape} does not match {expected}")
    xp = np.ascontiguousarray(_pad_input(x, padding))
    grad_xp, grad_w = _conv2d_backward_kernel(
        xp, np.ascontiguousarray(w), np.ascontiguousarray(grad_out), stride, dilation
    )
    if padding:
        grad_x = grad_xp[:, :, padding:-padding, padding:-padding]
    else:
        grad_x = grad_xp
    grad_b = grad_out.sum(axis=(0, 2, 3))
    return _check("conv2d_backward", grad_x), grad_w, grad_b


def _upsample_coords(n_out: int, n_in: int):
    src = (np.arange(n_out) + 0.5) / 2.0 - 0.5
    i0 = np.floor(src).astype(np.int64)
    frac = (src - i0).astype(np.float64)
    return np.clip(i0, 0, n_in - 1), np.clip(i0 + 1, 0, n_in - 1), frac


def upsample2x_forward(x: np.ndarray) -> np.ndarray:
    """Bilinear 2x upsampling of (B,C,H,W), half-pixel aligned, edges clamped."""
    _, _, h, w = x.shape
    r0, r1, rf = _upsample_coords(2 * h, h)
    c0, c1, cf = _upsample_coords(2 * w, w)
    rf = rf.astype(x.dtype)[None, None, :, None]
    cf = cf.astype(x.dtype)[None, None, None, :]
    rows = x[:, :, r0, :] * (1 - rf) + x[:, :, r1, :] * rf
    out = rows[:, :, :, c0] * (1 - cf) + rows[:, :, :, c1] * cf
    return _check("upsample2x_forward", out)


def upsample2x_backward(grad_out: np.ndarray, in_shape) -> np.ndarray:
    """Adjoint of upsample2x_forward onto an input of shape in_shape."""
    _, _, h, w = in_shape
    r0, r1, rf = _upsample_coords(2 * h, h)
    c0, c1, cf = _upsample_coords(2 * w, w)
    go = np.asarray(grad_out)
    cf_b = cf.astype(go.dtype)[None, None, None, :]
    rows = np.zeros((go.shape[0], go.shape[1], 2 * h, w), dtype=go.dtype)
    np.add.at(rows, (slice(None), slice(None), slice(None), c0), go * (1 - cf_b))
    np.add.at(rows, (slice(None), slice(None), slice(None), c1), go * cf_b)
    rf_b = rf.astype(go.dtype)[None, None, :, None]
    grad_x = np.zeros(in_shape, dtype=go.dtype)
    np.add.at(grad_x, (slice(None), slice(None), r0, slice(None)), rows * (1 - rf_b))
    np.add.at(grad_x, (slice(None), slice(None), r1, slice(None)), rows * rf_b)
    return _check("upsample2x_backward", grad_x)


def relu_forward(x: np.ndarray):
    mask = x > 0
    return x * mask, mask


def relu_backward(grad_out: np.ndarray, mask: np.ndarray) -> np.ndarray:
    return grad_out * mask


BN_EPS = 1e-5
BN_MOMENTUM = 0.1


def batchnorm_forward(x, gamma, beta, running_mean, running_var, train: bool):
    """Per-channel normalization; batch statistics in training, frozen
    running statistics at inference. Running buffers update in place."""
    axes = (0, 2, 3)
    if train:
        mean = x.mean(axis=axes)
        var = x.var(axis=axes)
        running_mean *= 1.0 - BN_MOMENTUM
        running_mean += BN_MOMENTUM * mean.astype(running_mean.dtype)
        running_var *= 1.0 - BN_MOMENTUM
        running_var += BN_MOMENTUM * var.astype(running_var.dtype)
    else:
        mean = running_mean.astype(x.dtype)
        var = running_var.astype(x.dtype)
    inv_std = 1.0 / np.sqrt(var + np.asarray(BN_EPS, dtype=x.dtype))
    xhat = (x - mean[None, :, None, None]) * inv_std[None, :, None, None]
    y = gamma[None, :, None, None] * xhat + beta[None, :, None, None]
    cache = (xhat, inv_std.astype(x.dtype), gamma, train)
    return _check("batchnorm_forward", y), cache


def batchnorm_backward(grad_out, cache):
    """Gradients (grad_x, grad_gamma, grad_beta); accounts for the
    dependence of batch statistics on the input when in training mode."""
    xhat, inv_std, gamma, train = cache
    axes = (0, 2, 3)
    grad_beta = grad_out.sum(axis=axes)
    grad_gamma = (grad_out * xhat).sum(axis=axes)
    dxhat = grad_out * gamma[None, :, None, None]
    if train:
        m = grad_out.shape[0] * grad_out.shape[2] * grad_out.shape[3]
        term = dxhat - dxhat.sum(axis=axes)[None, :, None, None] / m
        term -= xhat * (dxhat * xhat).sum(axis=axes)[None, :, None, None] / m
        grad_x = term * inv_std[None, :, None, None]
    else:
        grad_x = dxhat * inv_std[None, :, None, None]
    return _check("batchnorm_backward", grad_x), grad_gamma, grad_beta


def sigmoid(z: np.ndarray) -> np.ndarray:
    """Numerically stable logistic function."""
    z = np.asarray(z)
    out = np.empty_like(z, dtype=np.float64)
    pos = z >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    ez = np.exp(z[~pos])
    out[~pos] = ez / (1.0 + ez)
    return out
