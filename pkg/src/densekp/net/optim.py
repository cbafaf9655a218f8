"""Adam optimizer and cosine-annealed learning-rate schedule."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

ADAM_BETA1 = 0.9
ADAM_BETA2 = 0.999
ADAM_EPS = 1e-8


def cosine_lr(step: int, total_steps: int, lr_max: float, lr_min: float) -> float:
    """lr_min + 0.5*(lr_max - lr_min)*(1 + cos(pi * step / total_steps))."""
    if total_steps < 1:
        raise ValueError(f"total_steps must be >= 1, got {total_steps}")
    if not (0 <= step <= total_steps):
        raise ValueError(f"step {step} outside [0, {total_steps}]")
    return lr_min + 0.5 * (lr_max - lr_min) * (1.0 + math.cos(math.pi * step / total_steps))


@dataclass
class AdamState:
    m: dict[str, np.ndarray] = field(default_factory=dict)
    v: dict[str, np.ndarray] = field(default_factory=dict)
    t: int = 0


def adam_step(
    weights: dict[str, np.ndarray],
    grads: dict[str, np.ndarray],
    lr: float,
    state: AdamState,
) -> AdamState:
    """One bias-corrected Adam update, applied in place to ``weights``.

    Only parameters present in ``grads`` are touched; names and shapes must
    match the weight dict.
    """
    for name, g in grads.items():
        if name not in weights:
            raise ValueError(f"gradient for unknown parameter {name!r}")
        if weights[name].shape != g.shape:
            raise ValueError(
                f"gradient shape {g.shape} != parameter shape {weights[name].shape} for {name!r}"
            )
    state.t += 1
    t = state.t
    bias1 = 1.0 - ADAM_BETA1**t
    bias2 = 1.0 - ADAM_BETA2**t
    for name, g in grads.items():
        w = weights[name]
        g = g.astype(w.dtype, copy=False)
        if name not in state.m:
            state.m[name] = np.zeros_like(w)
            state.v[name] = np.zeros_like(w)
        m = state.m[name]
        v = state.v[name]
        m *= ADAM_BETA1
        m += (1.0 - ADAM_BETA1) * g
        v *= ADAM_BETA2
        v += (1.0 - ADAM_BETA2) * (g * g)
        m_hat = m / bias1
        v_hat = v / bias2
        w -= (lr * m_hat / (np.sqrt(v_hat) + ADAM_EPS)).astype(w.dtype)
    return state
