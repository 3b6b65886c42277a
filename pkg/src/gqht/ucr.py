"""Uniformly-controlled RY rotations via Gray-code CNOT ladders.

A uniformly-controlled rotation applies ``RY(theta_j)`` to a target when the
control register is in ``|j>``.  It is realised as

    RY(alpha_0) CNOT RY(alpha_1) CNOT ... RY(alpha_{2^n-1}) CNOT

where the CNOT after rotation ``q`` is controlled by the qubit holding the bit
in which Gray codes ``g_q`` and ``g_{q+1}`` differ (cyclically).  Conjugating
RY by X flips the sign of its angle, so the circuit implements

    theta_j = sum_q (-1)^(j . g_q) alpha_q,   i.e.  theta = A alpha

with ``A`` the unscaled +-1 matrix.  ``A A^T = 2^n I`` gives
``alpha = A^T theta / 2^n``, computed here with a fast Walsh-Hadamard
transform followed by a Gray-order gather.
"""
from __future__ import annotations

import numpy as np

from .errors import ArgumentError, SizeError
from .statevector import CNOT, RY

MAX_MATRIX_BITS = 12


def gray_code(k: int, n: int | None = None):
    """``k XOR (k >> 1)``; returned as an ``n``-bit string when ``n`` is given."""
    g = k ^ (k >> 1)
    return g if n is None else format(g, f"0{n}b") if n > 0 else ""


def gray_order(n: int) -> np.ndarray:
    """Position ``q`` -> integer value of ``g_q``."""
    k = np.arange(1 << n)
    return k ^ (k >> 1)


def _parity(v: np.ndarray) -> np.ndarray:
    v = v.copy()
    out = np.zeros_like(v)
    while v.any():
        out ^= v & 1
        v >>= 1
    return out


def sign_matrix(n: int) -> np.ndarray:
    """Unscaled matrix ``A[s, q] = (-1)^popcount(s & g_q)``."""
    if not 0 <= n <= MAX_MATRIX_BITS:
        raise SizeError(f"n must be in [0, {MAX_MATRIX_BITS}], got {n}")
    b = np.arange(1 << n)[:, None]
    g = gray_order(n)[None, :]
    return 1 - 2 * _parity(b & g).astype(float)


def build_matrix(n: int) -> np.ndarray:
    """Scaled transform ``M = A / 2^n`` for ``1 <= n <= 12``."""
    if not 1 <= n <= MAX_MATRIX_BITS:
        raise SizeError(f"n must be in [1, {MAX_MATRIX_BITS}], got {n}")
    return sign_matrix(n) / (1 << n)


def _num_bits(length: int) -> int:
    if length < 1 or length & (length - 1):
        raise SizeError(f"angle vector length must be a power of two, got {length}")
    return length.bit_length() - 1


def fwht(values) -> np.ndarray:
    """Unnormalized Walsh-Hadamard transform in natural (Sylvester) order."""
    a = np.array(values, dtype=float)
    n = _num_bits(a.shape[0])
    h = 1
    for _ in range(n):
        a = a.reshape(-1, 2, h)
        a = np.stack((a[:, 0] + a[:, 1], a[:, 0] - a[:, 1]), axis=1).reshape(-1)
        h <<= 1
    return a


def angle_transform(theta) -> np.ndarray:
    """Circuit angles ``alpha`` for target angles ``theta``: ``A^T theta / 2^n``."""
    theta = np.asarray(theta, dtype=float)
    n = _num_bits(theta.shape[0])
    return fwht(theta)[gray_order(n)] / (1 << n)


def inverse_angle_transform(alpha) -> np.ndarray:
    """``theta = A alpha``: the rotation each control pattern actually sees."""
    alpha = np.asarray(alpha, dtype=float)
    n = _num_bits(alpha.shape[0])
    scattered = np.empty_like(alpha)
    scattered[gray_order(n)] = alpha
    return fwht(scattered)


def cnot_positions(n: int) -> list:
    """Bit index (0 = least significant) driving the CNOT after each rotation."""
    order = gray_order(n)
    out = []
    for q in range(1 << n):
        diff = int(order[q] ^ order[(q + 1) % (1 << n)])
        out.append(diff.bit_length() - 1)
    return out


def synthesize_ucry(controls, target: int, alpha) -> list:
    """Gate list for a uniformly-controlled RY given circuit angles ``alpha``.

    ``controls[0]`` is the most significant bit of the control index ``j``.
    """
    controls = [int(c) for c in controls]
    alpha = np.asarray(alpha, dtype=float)
    n = len(controls)
    if alpha.shape[0] != 1 << n:
        raise SizeError(f"{n} controls need {1 << n} angles, got {alpha.shape[0]}")
    if len(set(controls + [target])) != n + 1:
        raise ArgumentError(f"duplicate qubit indices in controls={controls}, target={target}")
    if n == 0:
        return [RY(target, alpha[0])]
    gates = []
    for a, bit in zip(alpha, cnot_positions(n)):
        gates.append(RY(target, a))
        gates.append(CNOT(controls[n - 1 - bit], target))
    return gates


def ucry(controls, target: int, theta) -> list:
    """Gate list applying ``RY(theta_j)`` to ``target`` when controls read ``j``."""
    return synthesize_ucry(controls, target, angle_transform(theta))
