"""Integer-indexed Fourier coefficient windows and discrete transforms.

A 1-periodic function f(x) = sum_k c_k e^{2 pi i k x} with fast-decaying
coefficients is represented by a contiguous window of values c_k,
k = kmin .. kmin + len - 1.  Everything downstream (frame construction,
uncertainty constants, analysis/synthesis) works on these windows, so the
arithmetic here is deliberately conservative: long sums are exactly rounded
via compensated summation and the transforms are validated against direct
summation in the test suite.
"""

import json
import math
from dataclasses import dataclass

import numpy as np

TWO_PI = 2.0 * math.pi

# Direct O(n^2) transforms stay below this many matrix elements per block.
_DFT_BLOCK_ELEMS = 1 << 21


def csum(values) -> float:
    """Exactly rounded sum of real terms (Shewchuk compensated summation)."""
    if isinstance(values, np.ndarray):
        values = values.tolist()
    return math.fsum(values)


def csum_complex(values: np.ndarray) -> complex:
    """Exactly rounded sum of complex terms, real and imaginary parts separately."""
    arr = np.asarray(values, dtype=np.complex128)
    return complex(math.fsum(arr.real.tolist()), math.fsum(arr.imag.tolist()))


@dataclass(frozen=True, eq=False)
class FourierSeq:
    """Contiguous window of Fourier coefficients c_k, k = kmin .. kmin+n-1."""

    kmin: int
    coeffs: np.ndarray

    def __post_init__(self):
        arr = np.array(self.coeffs, dtype=np.complex128)
        if arr.ndim != 1 or arr.size == 0:
            raise ValueError("coefficient window must be a nonempty 1-d sequence")
        if not np.all(np.isfinite(arr.real)) or not np.all(np.isfinite(arr.imag)):
            raise ValueError("coefficient window contains non-finite entries")
        arr.setflags(write=False)
        object.__setattr__(self, "coeffs", arr)
        object.__setattr__(self, "kmin", int(self.kmin))

    @property
    def width(self) -> int:
        return self.coeffs.size

    @property
    def kmax(self) -> int:
        return self.kmin + self.coeffs.size - 1

    def indices(self) -> np.ndarray:
        return np.arange(self.kmin, self.kmin + self.coeffs.size, dtype=np.int64)


@dataclass(frozen=True, eq=False)
class GridSignal:
    """Samples of a 1-periodic function on the uniform grid x = n/N, n = 0..N-1."""

    samples: np.ndarray

    def __post_init__(self):
        arr = np.array(self.samples, dtype=np.complex128)
        if arr.ndim != 1 or arr.size == 0:
            raise ValueError("grid signal must be a nonempty 1-d sequence")
        arr.setflags(write=False)
        object.__setattr__(self, "samples", arr)

    @property
    def size(self) -> int:
        return self.samples.size


def norm_sq(f: FourierSeq) -> float:
    """Squared L2 norm, sum_k |c_k|^2 (Parseval form)."""
    c = f.coeffs
    return csum(c.real * c.real + c.imag * c.imag)


def derivative_norm_sq(f: FourierSeq) -> float:
    """Squared L2 norm of f', equal to 4 pi^2 sum_k k^2 |c_k|^2."""
    c = f.coeffs
    k = f.indices().astype(np.float64)
    return 4.0 * math.pi ** 2 * csum(k * k * (c.real * c.real + c.imag * c.imag))


def _is_pow2(n: int) -> bool:
    return n & (n - 1) == 0


def _dft_pow2(v: np.ndarray, sign: float) -> np.ndarray:
    """Iterative radix-2 transform; v.size must be a power of two."""
    n = v.size
    levels = n.bit_length() - 1
    rev = np.zeros(n, dtype=np.intp)
    tmp = np.arange(n, dtype=np.intp)
    for _ in range(levels):
        rev = (rev << 1) | (tmp & 1)
        tmp >>= 1
    out = v[rev].astype(np.complex128)
    half = 1
    while half < n:
        tw = np.exp(sign * 1j * np.pi * np.arange(half) / half)
        blocks = out.reshape(-1, 2 * half)
        even = blocks[:, :half].copy()
        odd = blocks[:, half:] * tw
        blocks[:, :half] = even + odd
        blocks[:, half:] = even - odd
        half *= 2
    return out


def _dft_direct(v: np.ndarray, sign: float) -> np.ndarray:
    """Direct O(n^2) transform, evaluated in bounded-memory row blocks."""
    n = v.size
    out = np.empty(n, dtype=np.complex128)
    cols = np.arange(n)
    step = max(1, _DFT_BLOCK_ELEMS // n)
    base = sign * 2j * np.pi / n
    for start in range(0, n, step):
        rows = np.arange(start, min(start + step, n))
        out[start:start + rows.size] = np.exp(base * rows[:, None] * cols[None, :]) @ v
    return out


def dft(values) -> np.ndarray:
    """Unnormalized forward transform X[m] = sum_n v[n] e^{-2 pi i m n / N}.

    Power-of-two lengths go through an iterative radix-2 kernel, other
    lengths through blocked direct summation.
    """
    v = np.asarray(values, dtype=np.complex128)
    if v.ndim != 1 or v.size == 0:
        raise ValueError("dft input must be a nonempty 1-d sequence")
    if _is_pow2(v.size):
        return _dft_pow2(v, -1.0)
    return _dft_direct(v, -1.0)


def idft(values) -> np.ndarray:
    """Unnormalized inverse transform, so that idft(dft(v)) / len(v) == v."""
    v = np.asarray(values, dtype=np.complex128)
    if v.ndim != 1 or v.size == 0:
        raise ValueError("idft input must be a nonempty 1-d sequence")
    if _is_pow2(v.size):
        return _dft_pow2(v, +1.0)
    return _dft_direct(v, +1.0)


def evaluate_grid(f: FourierSeq, n_samples: int) -> GridSignal:
    """Evaluate f on the grid x = n/N: samples[n] = sum_k c_k e^{2 pi i k n / N}.

    Coefficients are folded modulo N first, so the call stays exact for
    N >= window width and aliases (by construction) below that.
    """
    if int(n_samples) < 1:
        raise ValueError("grid must have at least one sample")
    n_samples = int(n_samples)
    folded = np.zeros(n_samples, dtype=np.complex128)
    np.add.at(folded, np.mod(f.indices(), n_samples), f.coeffs)
    return GridSignal(idft(folded))


def difference_norm_sq(f: FourierSeq, g: FourierSeq) -> float:
    """Squared L2 distance between two coefficient windows (zero-padded union)."""
    kmin = min(f.kmin, g.kmin)
    kmax = max(f.kmax, g.kmax)
    width = kmax - kmin + 1
    buf = np.zeros(width, dtype=np.complex128)
    buf[f.kmin - kmin:f.kmin - kmin + f.width] += f.coeffs
    buf[g.kmin - kmin:g.kmin - kmin + g.width] -= g.coeffs
    return csum(buf.real * buf.real + buf.imag * buf.imag)


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

def fourier_to_dict(f: FourierSeq) -> dict:
    """JSON-ready encoding {"kmin": int, "coeffs": [[re, im], ...]}."""
    return {
        "kmin": f.kmin,
        "coeffs": [[float(c.real), float(c.imag)] for c in f.coeffs],
    }


def fourier_from_dict(data: dict) -> FourierSeq:
    if not isinstance(data, dict):
        raise ValueError("expected a JSON object for a coefficient window")
    try:
        kmin = int(data["kmin"])
        pairs = data["coeffs"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed coefficient window: {exc}") from exc
    if not isinstance(pairs, list) or not pairs:
        raise ValueError("coeffs must be a nonempty list of [re, im] pairs")
    try:
        coeffs = np.array([complex(float(re), float(im)) for re, im in pairs])
    except (TypeError, ValueError) as exc:
        raise ValueError(f"malformed coefficient pair: {exc}") from exc
    return FourierSeq(kmin, coeffs)


def save_fourier(f: FourierSeq, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(fourier_to_dict(f), fh)
        fh.write("\n")


def load_fourier(path) -> FourierSeq:
    with open(path, "r", encoding="utf-8") as fh:
        return fourier_from_dict(json.load(fh))


def grid_to_csv(sig: GridSignal) -> str:
    """CSV encoding with header n,re,im and one row per sample."""
    lines = ["n,re,im"]
    for n, s in enumerate(sig.samples):
        lines.append("%d,%.17g,%.17g" % (n, s.real, s.imag))
    return "\n".join(lines) + "\n"


def save_grid_csv(sig: GridSignal, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(grid_to_csv(sig))
