"""Fast products for truncated polynomial rings ``F_p[a_1..a_l]/(a_i^d_i)``.

When ``d = p^e`` the substitution ``a = g - 1`` identifies ``F_p[a]/(a^d)``
with the group algebra of a cyclic group of order ``d``, so products become
cyclic convolutions of exact length ``d`` with no padding.  Short axes are
grouped into blocks and transformed with one dense DFT matrix per block
(BLAS does the work); long axes keep the a-basis and use a zero-padded FFT
with truncation.  All basis changes are exact integer maps applied mod p.
"""

from __future__ import annotations

from math import comb, prod

import numpy as np
from scipy import fft as sfft

# Axes up to this length are handled by dense blocks of at most this size.
BLOCK = 32


def _basis_change(d: int, p: int):
    """Integer matrices ``(to_g, to_a)`` for coordinates on ``F_p[a]/(a^d)``.

    ``to_g @ c`` rewrites a-basis coefficients ``c`` in the basis ``g^j``.
    """
    k = np.arange(d)
    binom = np.array([[comb(int(i), int(j)) % p for i in k] for j in k], dtype=np.int64)
    sign = np.where((k[None, :] - k[:, None]) % 2, p - 1, 1)
    to_g = (binom * sign) % p  # entry (j, k) = C(k, j) (-1)^(k-j)
    to_a = binom  # entry (k, j) = C(j, k)
    return to_g, to_a


def _dft(d: int, inverse: bool = False):
    k = np.arange(d)
    sign = 1 if inverse else -1
    return np.exp(sign * 2j * np.pi * np.outer(k, k) / d)


def _apply(x, mat, axis):
    """Multiply ``mat`` into one axis of ``x``."""
    shape = x.shape
    size = shape[axis]
    post = prod(shape[axis + 1 :])
    if post == 1:
        return (x.reshape(-1, size) @ mat.T).reshape(shape)
    return (mat @ x.reshape(-1, size, post)).reshape(shape)


class SpectralPlan:
    """Transform plan for the box ``dims`` over ``F_p``."""

    def __init__(self, dims: tuple, p: int):
        self.dims = tuple(dims)
        self.p = p
        self.N = prod(self.dims)
        self.blocks = []  # ("cyclic", size, to_g, to_a, W, Winv) or ("linear", d, L)
        run: list = []

        def flush():
            if not run:
                return
            to_g = to_a = W = np.ones((1, 1))
            for d in run:
                g, a = _basis_change(d, p)
                to_g, to_a = np.kron(to_g, g), np.kron(to_a, a)
                W = np.kron(W, _dft(d))
            size = prod(run)
            self.blocks.append(
                ("cyclic", size, to_g.astype(np.float64), to_a.astype(np.float64),
                 W, W.conj() / size)
            )
            run.clear()

        for d in self.dims:
            if d > BLOCK:
                flush()
                self.blocks.append(("linear", d, sfft.next_fast_len(2 * d - 1)))
            elif prod(run) * d <= BLOCK:
                run.append(d)
            else:
                flush()
                run.append(d)
        flush()
        self.shape = tuple(b[1] for b in self.blocks)
        self.freq_shape = tuple(b[2] if b[0] == "linear" else b[1] for b in self.blocks)
        self.K = prod(self.freq_shape)
        # A lone long axis can use the half-spectrum real transform.
        self.real = len(self.blocks) == 1 and self.blocks[0][0] == "linear"
        if self.real:
            self.K = self.freq_shape[0] // 2 + 1

    def _centered(self, x):
        x = np.asarray(x, np.float64) % self.p
        x[x > self.p // 2] -= self.p
        return x

    def forward(self, x):
        """Integer array ``(B, N)`` to spectra ``(B, K)``."""
        B = x.shape[0]
        if self.real:
            _, d, L = self.blocks[0]
            return sfft.rfft(self._centered(x), n=L, axis=-1)
        z = np.asarray(x, np.float64).reshape((B,) + self.shape)
        for ax, blk in enumerate(self.blocks, start=1):
            if blk[0] == "cyclic":
                z = _apply(z, blk[2], ax) % self.p
        z = self._centered(z).astype(np.complex128)
        for ax, blk in enumerate(self.blocks, start=1):
            if blk[0] == "cyclic":
                z = _apply(z, blk[4], ax)
            else:
                z = sfft.fft(z, n=blk[2], axis=ax)
        return z.reshape(B, -1)

    def backward(self, X):
        """Spectra ``(B, K)`` back to reduced integer coefficients ``(B, N)``."""
        B = X.shape[0]
        if self.real:
            _, d, L = self.blocks[0]
            full = sfft.irfft(X, n=L, axis=-1)[:, :d]
            return np.rint(full).astype(np.int64) % self.p
        z = X.reshape((B,) + self.freq_shape)
        for ax, blk in enumerate(self.blocks, start=1):
            if blk[0] == "cyclic":
                z = _apply(z, blk[5], ax)
            else:
                z = np.take(sfft.ifft(z, axis=ax), np.arange(blk[1]), axis=ax)
        z = np.rint(z.real) % self.p
        for ax, blk in enumerate(self.blocks, start=1):
            if blk[0] == "cyclic":
                z = _apply(z, blk[3], ax) % self.p
        return z.reshape(B, self.N).astype(np.int64)
