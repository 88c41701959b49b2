"""Exact arithmetic in the model local ring ``B = F_p[a_1..a_l] / (a_i^(p^e_i) - R_i)``.

Elements are stored densely: a vector of ``N = prod p^e_i`` coefficients
over the normal-form monomial basis ``{a^nu : 0 <= nu_i < p^e_i}`` in
C order (last generator varies fastest).

Product kernels sit behind :meth:`LocalRing.mul` and
:meth:`LocalRing.matmul`.  Without relations the ring is a group algebra
and products run through :class:`~weilexp._spectral.SpectralPlan`.  With
relations we use a Kronecker substitution with no carries (each exponent
gets ``2 p^e_i - 1`` slots), one real FFT, and a precomputed reduction
matrix that folds overflow monomials back into normal form.  The
Kronecker kernel can also be forced on a modular ring, which makes it a
cross-check for the spectral one.  A third kernel, ``"table"``, multiplies
small rings (``N <= 16``) with structure constants read off the sparse
normal form; it is only used when asked for.

The sparse rewriting in :func:`normalize` is the reference semantics; every
dense kernel is tested against it.
"""

from __future__ import annotations

from functools import lru_cache
from math import prod

import numpy as np
from scipy import fft as sfft
from scipy import sparse

from ._random import derive_rng
from ._spectral import SpectralPlan
from ._text import format_terms, monomial_key, parse_terms
from .errors import (
    DeskScaleExceeded,
    IndexOutOfRange,
    NotAUnit,
    NotInIdeal,
    NotNilpotent,
    ProfileMismatch,
)
from .profile import ExtensionProfile, m_invariant

MAX_DEGREE = 2**16
# Largest padded box the Kronecker kernel will allocate.
FFT_LIMIT = 2**21
# Largest dimension for the structure-constant table kernel.
TABLE_LIMIT = 16
# Cap on complex work buffers per FFT batch (number of complex entries).
_CHUNK = 2**22


class LocalRing:
    """The model ring for one :class:`ExtensionProfile`.

    Use :meth:`of` to get the shared instance for a profile.  Array methods
    (``mul``, ``matmul``, ...) act on integer arrays whose last axis has
    length ``N`` and broadcast over the leading axes.
    """

    def __init__(self, profile: ExtensionProfile, kernel: str = "auto"):
        if profile.degree > MAX_DEGREE:
            raise DeskScaleExceeded(
                f"ring dimension {profile.degree} exceeds the desk-scale limit {MAX_DEGREE}"
            )
        self.profile = profile
        self.p = profile.p
        self.l = profile.l
        self.dims = profile.dims
        self.N = profile.degree
        if self.l:
            self.monomials = np.indices(self.dims).reshape(self.l, -1).T.astype(np.int64)
        else:
            self.monomials = np.zeros((1, 0), np.int64)
        self.degrees = self.monomials.sum(axis=1) if self.l else np.zeros(1, np.int64)
        self._strides = np.array(
            [prod(self.dims[i + 1 :]) for i in range(self.l)], dtype=np.int64
        )
        self._nf_cache: dict = {}
        self._reduction = None
        if kernel not in ("auto", "table", "spectral", "kronecker"):
            raise ValueError(f"unknown kernel {kernel!r}")
        if kernel == "auto":
            kernel = "spectral" if profile.is_modular else "kronecker"
        if kernel == "table" and self.N > TABLE_LIMIT:
            raise ValueError(f"the table kernel is for rings of dimension <= {TABLE_LIMIT}")
        if kernel == "spectral" and not profile.is_modular:
            raise ValueError("the spectral kernel needs a profile without relations")
        self.kernel = kernel
        if kernel == "table":
            self._table = self._build_table()
            self.K = self.N * self.N
        elif kernel == "spectral":
            self._plan = SpectralPlan(self.dims, self.p)
            self.K = self._plan.K
        else:
            self.pad = tuple(2 * d - 1 for d in self.dims)
            self.F = prod(self.pad)
            if self.F > FFT_LIMIT:
                raise DeskScaleExceeded(f"padded size {self.F} exceeds {FFT_LIMIT}")
            kron = np.array([prod(self.pad[i + 1 :]) for i in range(self.l)], dtype=np.int64)
            self._kron = self.monomials @ kron if self.l else np.zeros(1, np.int64)
            self.nfft = sfft.next_fast_len(self.F, real=True)
            self.K = self.nfft // 2 + 1
            if not profile.is_modular:
                self._reduction = self._build_reduction()

    @staticmethod
    @lru_cache(maxsize=None)
    def of(profile: ExtensionProfile) -> "LocalRing":
        return LocalRing(profile)

    def __repr__(self):
        return f"LocalRing({self.profile})"

    # -- indexing -----------------------------------------------------------

    def index(self, nu) -> int:
        """Flat position of a normal-form exponent vector."""
        nu = tuple(int(k) for k in nu)
        if len(nu) != self.l or any(not 0 <= k < d for k, d in zip(nu, self.dims)):
            raise IndexOutOfRange(f"{nu} is not a normal-form exponent vector for {self.dims}")
        return int(np.dot(nu, self._strides)) if self.l else 0

    def monomial(self, idx: int) -> tuple:
        return tuple(int(k) for k in self.monomials[idx])

    # -- element constructors ----------------------------------------------

    def zero(self) -> "RingElement":
        return RingElement(self, np.zeros(self.N, np.int64))

    def one(self) -> "RingElement":
        return self.scalar(1)

    def scalar(self, c: int) -> "RingElement":
        v = np.zeros(self.N, np.int64)
        v[0] = c % self.p
        return RingElement(self, v)

    def gen(self, i: int) -> "RingElement":
        """The generator ``a_i`` (1-based)."""
        if not 1 <= i <= self.l:
            raise IndexOutOfRange(f"generator index {i} outside 1..{self.l}")
        nu = [0] * self.l
        nu[i - 1] = 1
        return normalize(self, {tuple(nu): 1})

    def gens(self) -> list:
        return [self.gen(i) for i in range(1, self.l + 1)]

    def element(self, value) -> "RingElement":
        """Coerce an int, text, term map or coefficient vector into the ring."""
        if isinstance(value, RingElement):
            if value.ring is not self:
                raise ProfileMismatch(f"element of {value.ring} used in {self}")
            return value
        if isinstance(value, (int, np.integer)):
            return self.scalar(int(value))
        if isinstance(value, str):
            return normalize(self, parse_terms(value, self.l))
        if isinstance(value, dict):
            return normalize(self, value)
        value = list(value)
        if all(isinstance(t, (list, tuple)) and len(t) == 2 for t in value):
            # list of [exponents, coeff] pairs (the JSON term-list form)
            return normalize(self, {tuple(int(k) for k in nu): int(c) for nu, c in value})
        arr = np.asarray(value)
        if arr.shape != (self.N,):
            raise ValueError(f"cannot read {value!r} as an element of {self}")
        return RingElement(self, arr)

    # -- sparse normal form -------------------------------------------------

    def _nf_monomial(self, nu: tuple) -> dict:
        """Normal form of ``a^nu`` for arbitrary non-negative exponents."""
        hit = self._nf_cache.get(nu)
        if hit is not None:
            return hit
        top = None
        for i in reversed(range(self.l)):
            if nu[i] >= self.dims[i]:
                top = i
                break
        if top is None:
            out = {nu: 1}
        else:
            rel = self.profile.relation(top + 1)
            if rel is None or not rel.terms:
                out = {}
            else:
                q, rem = divmod(nu[top], self.dims[top])
                base = list(nu)
                base[top] = rem
                acc = self._normalize_dict({tuple(base): 1})
                rhs = dict(rel.terms)
                for _ in range(q):
                    if not acc:
                        break
                    acc = self._normalize_dict(_poly_mul(acc, rhs))
                out = acc
        self._nf_cache[nu] = out
        return out

    def _normalize_dict(self, raw: dict) -> dict:
        p = self.p
        out: dict = {}
        for nu, c in raw.items():
            c %= p
            if not c:
                continue
            for w, c2 in self._nf_monomial(tuple(nu)).items():
                out[w] = (out.get(w, 0) + c * c2) % p
        return {w: c for w, c in out.items() if c}

    def _build_reduction(self):
        rows, cols, vals = [], [], []
        pad_monomials = np.indices(self.pad).reshape(self.l, -1).T
        for f, nu in enumerate(pad_monomials):
            for w, c in self._nf_monomial(tuple(int(k) for k in nu)).items():
                rows.append(f)
                cols.append(self.index(w))
                vals.append(c)
        return sparse.csr_matrix(
            (np.array(vals, np.int64), (rows, cols)), shape=(self.F, self.N)
        )

    def _build_table(self):
        """``T[i * N + j, k]``: coefficient of monomial ``k`` in ``a^nu_i a^nu_j``."""
        T = np.zeros((self.N * self.N, self.N), np.float64)
        for i, u in enumerate(self.monomials):
            for j, w in enumerate(self.monomials):
                nf = self._nf_monomial(tuple(int(k) for k in u + w))
                for nu, c in nf.items():
                    T[i * self.N + j, self.index(nu)] = c
        return T

    def _table_mul(self, x, y):
        outer = (x.astype(np.float64)[:, :, None] * y.astype(np.float64)[:, None, :])
        z = outer.reshape(x.shape[0], -1) @ self._table
        return np.rint(z).astype(np.int64) % self.p

    # -- dense kernel -------------------------------------------------------

    def _centered(self, x):
        x = np.asarray(x, np.int64) % self.p
        return np.where(x > self.p // 2, x - self.p, x).astype(np.float64)

    def _forward(self, x):
        """Spectra of a ``(B, N)`` batch of coefficient vectors."""
        if self.kernel == "spectral":
            return self._plan.forward(x)
        buf = np.zeros(x.shape[:-1] + (self.nfft,), np.float64)
        buf[..., self._kron] = self._centered(x)
        return sfft.rfft(buf, axis=-1)

    def _backward(self, X):
        if self.kernel == "spectral":
            return self._plan.backward(X)
        full = sfft.irfft(X, n=self.nfft, axis=-1)[..., : self.F]
        z = np.rint(full).astype(np.int64) % self.p
        if self._reduction is None:
            return z[..., self._kron]
        out = (self._reduction.T @ z.T).T % self.p
        return np.asarray(out)

    def mul(self, x, y):
        """Elementwise ring product of coefficient arrays (broadcasting)."""
        same = x is y
        x = np.asarray(x, np.int64)
        y = x if same else np.asarray(y, np.int64)
        if self.N == 1:
            return (x * y) % self.p
        x, y = np.broadcast_arrays(x, y)
        lead = x.shape[:-1]
        xf = x.reshape(-1, self.N)
        yf = y.reshape(-1, self.N)
        out = np.empty_like(xf)
        step = max(1, _CHUNK // self.K)
        for s in range(0, xf.shape[0], step):
            if self.kernel == "table":
                out[s : s + step] = self._table_mul(xf[s : s + step] % self.p, yf[s : s + step] % self.p)
                continue
            X = self._forward(xf[s : s + step])
            Y = X if same else self._forward(yf[s : s + step])
            out[s : s + step] = self._backward(X * Y)
        return out.reshape(lead + (self.N,))

    def matmul(self, A, B):
        """Matrix product over the ring; ``A`` is ``(..., r, s, N)``, ``B`` is ``(..., s, t, N)``."""
        same = A is B
        A = np.asarray(A, np.int64)
        B = np.asarray(B, np.int64)
        if self.N == 1:
            return np.einsum("...ik,...kj->...ij", A[..., 0], B[..., 0])[..., None] % self.p
        lead = np.broadcast_shapes(A.shape[:-3], B.shape[:-3])
        A = np.broadcast_to(A, lead + A.shape[-3:])
        B = np.broadcast_to(B, lead + B.shape[-3:])
        r, s, t = A.shape[-3], A.shape[-2], B.shape[-2]
        if B.shape[-3] != s:
            raise ValueError(f"inner sizes differ: {A.shape[-3:-1]} @ {B.shape[-3:-1]}")
        if self.kernel == "table":
            prods = self.mul(A[..., :, :, None, :], B[..., None, :, :, :])
            return prods.sum(axis=-3) % self.p
        Af = A.reshape((-1, r, s, self.N))
        Bf = B.reshape((-1, s, t, self.N))
        out = np.empty((Af.shape[0], r, t, self.N), np.int64)
        step = max(1, _CHUNK // (self.K * max(r * s, s * t, r * t)))
        for lo in range(0, Af.shape[0], step):
            X = self._spectra(Af[lo : lo + step])
            Y = X if same else self._spectra(Bf[lo : lo + step])
            Z = np.moveaxis(X @ Y, -3, -1)
            n, rr, tt = Z.shape[:3]
            back = self._backward(Z.reshape(-1, self.K))
            out[lo : lo + step] = back.reshape(n, rr, tt, self.N)
        return out.reshape(lead + (r, t, self.N))

    def _spectra(self, M):
        """``(n, r, s, N)`` matrices to ``(n, K, r, s)`` spectra."""
        n, r, s = M.shape[:3]
        X = self._forward(M.reshape(-1, self.N)).reshape(n, r, s, self.K)
        return np.moveaxis(X, -1, -3)

    def power(self, x, n: int):
        """``x**n`` for a coefficient array (binary exponentiation)."""
        if n < 0:
            raise ValueError("negative exponent")
        x = np.asarray(x, np.int64)
        result = np.zeros_like(x)
        result[..., 0] = 1
        base = x
        while n:
            if n & 1:
                result = self.mul(result, base)
            n >>= 1
            if n:
                base = self.mul(base, base)
        return result

    def power_each(self, x, exps):
        """Batched power with a separate exponent per leading index."""
        x = np.asarray(x, np.int64)
        exps = np.asarray(exps, np.int64)
        result = np.zeros_like(x)
        result[..., 0] = 1
        base = x
        while exps.any():
            bit = (exps & 1).astype(bool)
            if bit.any():
                result[bit] = self.mul(result[bit], base[bit])
            exps = exps >> 1
            live = exps > 0
            if live.any():
                base = base.copy()
                b = base[live]
                base[live] = self.mul(b, b)
        return result

    # -- random elements ----------------------------------------------------

    def random_ideal_array(self, rng, shape=(), max_terms: int = 3):
        """Random elements of the maximal ideal with at most ``max_terms`` monomials."""
        shape = (shape,) if isinstance(shape, int) else tuple(shape)
        out = np.zeros(shape + (self.N,), np.int64)
        if self.N == 1:
            return out
        count = int(np.prod(shape, dtype=np.int64))
        k = rng.integers(1, max_terms + 1, size=count)
        idx = rng.integers(1, self.N, size=(count, max_terms))
        coeff = rng.integers(1, self.p, size=(count, max_terms))
        keep = np.arange(max_terms)[None, :] < k[:, None]
        flat = out.reshape(count, self.N)
        rows = np.repeat(np.arange(count), max_terms).reshape(count, max_terms)
        np.add.at(flat, (rows[keep], idx[keep]), coeff[keep])
        return flat.reshape(shape + (self.N,)) % self.p

    def random_array(self, rng, shape=()):
        """Uniform random elements of the whole ring."""
        return rng.integers(0, self.p, size=tuple(shape) + (self.N,), dtype=np.int64)

    def ideal_elements(self):
        """Every element of the maximal ideal, as a ``(p^(N-1), N)`` array."""
        k = self.N - 1
        digits = np.indices((self.p,) * k).reshape(k, -1).T if k else np.zeros((1, 0), np.int64)
        out = np.zeros((digits.shape[0], self.N), np.int64)
        out[:, 1:] = digits
        return out


def as_ring(obj) -> LocalRing:
    if isinstance(obj, LocalRing):
        return obj
    if isinstance(obj, ExtensionProfile):
        return LocalRing.of(obj)
    if isinstance(obj, RingElement):
        return obj.ring
    raise TypeError(f"expected a profile or ring, got {type(obj).__name__}")


def _poly_mul(x: dict, y: dict) -> dict:
    out: dict = {}
    for u, a in x.items():
        for v, b in y.items():
            w = tuple(i + j for i, j in zip(u, v))
            out[w] = out.get(w, 0) + a * b
    return out


class RingElement:
    """Immutable element of a :class:`LocalRing`."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: LocalRing, coeffs):
        arr = np.array(coeffs, dtype=np.int64) % ring.p
        if arr.shape != (ring.N,):
            raise ValueError(f"expected {ring.N} coefficients, got shape {arr.shape}")
        arr.flags.writeable = False
        self.ring = ring
        self.coeffs = arr

    @property
    def terms(self) -> dict:
        """Sparse view ``{exponents: coeff}`` without zero coefficients."""
        return {self.ring.monomial(i): int(self.coeffs[i]) for i in np.flatnonzero(self.coeffs)}

    def constant_term(self) -> int:
        return int(self.coeffs[0])

    def is_zero(self) -> bool:
        return not self.coeffs.any()

    def in_ideal(self) -> bool:
        return self.coeffs[0] == 0

    def __bool__(self):
        return not self.is_zero()

    def _coerce(self, other):
        if isinstance(other, RingElement):
            if other.ring is not self.ring and other.ring.profile != self.ring.profile:
                raise ProfileMismatch(f"{self.ring.profile} vs {other.ring.profile}")
            return other.coeffs
        if isinstance(other, (int, np.integer)):
            v = np.zeros(self.ring.N, np.int64)
            v[0] = int(other)
            return v
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return RingElement(self.ring, self.coeffs + o)

    __radd__ = __add__

    def __neg__(self):
        return RingElement(self.ring, -self.coeffs)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return RingElement(self.ring, self.coeffs - o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return RingElement(self.ring, o - self.coeffs)

    def __mul__(self, other):
        if isinstance(other, (int, np.integer)):
            return RingElement(self.ring, self.coeffs * (int(other) % self.ring.p))
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return RingElement(self.ring, self.ring.mul(self.coeffs, o))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        return RingElement(self.ring, self.ring.power(self.coeffs, int(n)))

    def __eq__(self, other):
        if isinstance(other, (int, np.integer)):
            return bool(np.array_equal(self.coeffs, self._coerce(other) % self.ring.p))
        if not isinstance(other, RingElement):
            return NotImplemented
        return self.ring.profile == other.ring.profile and bool(
            np.array_equal(self.coeffs, other.coeffs)
        )

    def __hash__(self):
        return hash((self.ring.profile, self.coeffs.tobytes()))

    def __str__(self):
        return format_terms(self.terms)

    def __repr__(self):
        return f"RingElement({str(self)!r})"

    def to_terms(self) -> list:
        """JSON term list ``[[exponents, coeff], ...]`` in canonical order."""
        t = self.terms
        return [[list(nu), t[nu]] for nu in sorted(t, key=monomial_key, reverse=True)]


# -- element-level operations ----------------------------------------------------


def normalize(ring, raw: dict) -> RingElement:
    """Reduce a formal combination of monomials (any exponents) to normal form.

    Rewrites ``a_i^(p^e_i)`` by its relation, highest generator first.
    """
    ring = as_ring(ring)
    coeffs = np.zeros(ring.N, np.int64)
    for nu, c in ring._normalize_dict(
        {tuple(int(k) for k in nu): int(c) for nu, c in raw.items()}
    ).items():
        coeffs[ring.index(nu)] = c
    return RingElement(ring, coeffs)


def parse_element(ring, text: str) -> RingElement:
    ring = as_ring(ring)
    return normalize(ring, parse_terms(text, ring.l))


def generator(ring, i: int) -> RingElement:
    return as_ring(ring).gen(i)


def frobenius_pow(x: RingElement, s: int) -> RingElement:
    """``x^(p^s)``, computed by raising every monomial's exponents to ``p^s``.

    Coefficients in F_p are fixed by Frobenius, so only exponents change.
    """
    if s < 0:
        raise ValueError("s must be >= 0")
    q = x.ring.p**s
    return normalize(x.ring, {tuple(q * k for k in nu): c for nu, c in x.terms.items()})


def invert_unit(x: RingElement) -> RingElement:
    """Inverse of a unit via the terminating geometric series."""
    ring = x.ring
    c = x.constant_term()
    if c == 0:
        raise NotAUnit(f"{x} has zero constant term")
    c_inv = pow(c, -1, ring.p)
    u = (x - c) * c_inv  # nilpotent part of x / c
    term = ring.one()
    total = ring.one()
    for _ in range(m_invariant(ring.profile)):
        term = term * (-u)
        if term.is_zero():
            break
        total = total + term
    return total * c_inv


def nilpotency_index(x: RingElement) -> int:
    """Least ``n >= 1`` with ``x**n == 0``."""
    if not x.in_ideal():
        raise NotNilpotent(f"{x} has nonzero constant term")
    n, y = 1, x
    while not y.is_zero():
        y = y * x
        n += 1
    return n


def row_basis_mod_p(rows, p: int):
    """Row-reduced basis of the F_p-span of ``rows``, sorted by pivot column.

    Rows with a single nonzero entry are taken as pivots directly (they
    dominate for monomial ideals); Gaussian elimination runs on the rest.
    """
    A = np.array(rows, dtype=np.int64) % p
    if A.ndim != 2 or A.size == 0:
        return A.reshape(0, A.shape[-1] if A.ndim == 2 else 0)
    single = np.count_nonzero(A, axis=1) == 1
    unit_cols = np.unique(np.argmax(A[single] != 0, axis=1))
    rest = A[~single]
    rest[:, unit_cols] = 0
    rest = np.ascontiguousarray(rest[rest.any(axis=1)])
    if rest.shape[0] > 1:
        keys = rest.view(np.dtype((np.void, rest.dtype.itemsize * rest.shape[1])))
        rest = rest[np.sort(np.unique(keys.ravel(), return_index=True)[1])]
    rest = _eliminate(rest, p)
    units = np.zeros((unit_cols.size, A.shape[1]), np.int64)
    units[np.arange(unit_cols.size), unit_cols] = 1
    out = np.vstack([units, rest])
    return out[np.argsort(np.argmax(out != 0, axis=1), kind="stable")]


def _eliminate(A, p: int):
    rank = 0
    for col in np.flatnonzero(A.any(axis=0)):
        if rank == A.shape[0]:
            break
        nz = np.flatnonzero(A[rank:, col])
        if nz.size == 0:
            continue
        piv = rank + nz[0]
        if piv != rank:
            A[[rank, piv]] = A[[piv, rank]]
        A[rank] = A[rank] * pow(int(A[rank, col]), -1, p) % p
        others = np.flatnonzero(A[:, col])
        others = others[others != rank]
        if others.size:
            A[others] = (A[others] - A[others, col][:, None] * A[rank]) % p
        rank += 1
    return A[:rank]


def ideal_power_bases(ring):
    """F_p-bases of ``m, m^2, ...`` up to the first zero power (exclusive)."""
    ring = as_ring(ring)
    if ring.N == 1:
        return []
    basis = np.eye(ring.N, dtype=np.int64)[1:]
    # row nu of a generator's matrix holds a_i * a^nu
    eye = np.eye(ring.N, dtype=np.int64)
    mats = [sparse.csr_matrix(ring.mul(eye, g.coeffs)) for g in ring.gens()]
    out = []
    while basis.shape[0]:
        out.append(basis)
        prods = np.vstack([np.asarray((sparse.csr_matrix(basis) @ M).todense()) for M in mats])
        prods %= ring.p
        basis = row_basis_mod_p(prods[prods.any(axis=1)], ring.p)
    return out


def ideal_nilpotency_index(ring) -> int:
    """Least ``n`` with ``m^n = 0``, found by spanning ``m^k`` and multiplying by generators."""
    return len(ideal_power_bases(ring)) + 1


def product_vanishes(elements, powers) -> bool:
    """Whether ``prod elements[i] ** powers[i]`` is zero, computed directly."""
    elements = list(elements)
    powers = [int(f) for f in powers]
    if len(elements) != len(powers):
        raise ValueError("elements and powers differ in length")
    if not elements:
        return False
    ring = elements[0].ring
    acc = ring.one()
    for x, f in zip(elements, powers):
        if x.ring.profile != ring.profile:
            raise ProfileMismatch("elements come from different rings")
        if not x.in_ideal():
            raise NotInIdeal(f"{x} is not in the maximal ideal")
        if f < 0:
            raise ValueError("powers must be non-negative")
        acc = acc * x**f
        if acc.is_zero():
            return True
    return acc.is_zero()


def subalgebra_basis(ring, i: int):
    """Row basis of ``F_p[a_1^q, ..., a_{i-1}^q]`` intersected with the ideal, ``q = p^e_i``."""
    ring = as_ring(ring)
    q = ring.dims[i - 1]
    m = m_invariant(ring.profile)
    vecs = []
    for ks in np.ndindex(*[(m - 1) // q + 1 for _ in range(i - 1)]):
        if not any(ks) or sum(ks) * q >= m:
            continue
        nu = tuple(k * q for k in ks) + (0,) * (ring.l - i + 1)
        vecs.append(normalize(ring, {nu: 1}).coeffs)
    if not vecs:
        return np.zeros((0, ring.N), np.int64)
    return row_basis_mod_p(np.stack(vecs), ring.p)


def subalgebra_membership(x: RingElement, i: int) -> bool:
    """Whether ``x`` lies in ``F_p[a_1^q, ..., a_{i-1}^q] ∩ m`` with ``q = p^e_i``."""
    ring = x.ring
    if not 1 <= i <= ring.l:
        raise IndexOutOfRange(f"index {i} outside 1..{ring.l}")
    if x.is_zero():
        return True
    if not x.in_ideal():
        return False
    if ring.profile.is_modular:
        q = ring.dims[i - 1]
        return all(
            not any(nu[i - 1 :]) and all(k % q == 0 for k in nu[: i - 1]) for nu in x.terms
        )
    basis = subalgebra_basis(ring, i)
    if basis.shape[0] == 0:
        return False
    return row_basis_mod_p(np.vstack([basis, x.coeffs]), ring.p).shape[0] == basis.shape[0]


def random_ideal_element(ring, seed: int, max_terms: int = 3) -> RingElement:
    """Seed-reproducible element of the maximal ideal with at most ``max_terms`` terms."""
    ring = as_ring(ring)
    if max_terms < 1:
        raise ValueError("max_terms must be >= 1")
    rng = derive_rng(seed, "random_ideal_element")
    return RingElement(ring, ring.random_ideal_array(rng, (), max_terms))
