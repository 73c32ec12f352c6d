"""Masks and Fourier coefficients of a Gaussian family of periodic Parseval frames.

For a family parameter a > 1 and dyadic level j, the construction is driven by
a 2^j-periodic "base" mask on one period k = -2^(j-2)+1 .. 3*2^(j-2):

    base(j, a, k) = exp(-(k^2 + a^2) / (j (j-1) a))              central half
    base(j, a, k) = sqrt(1 - exp(-2 ((k - 2^(j-1))^2 + a^2)
                                   / (j (j-1) a)))               outer half

with base(1, a, k) = sqrt(1/2).  Squares of the two halves are power
complementary: base(k)^2 + base(k + 2^(j-1))^2 = 1.  From it derive

    refine mask   mu(j, k)     = sqrt(2) base(j, k)
    wavelet mask  lam(j, k)    = e^{2 pi i k / 2^j} mu(j, k + 2^(j-1))
    scaling coef  phi_hat(j,k) = 2^{-j/2} prod_{r > j} base(r, k)
    wavelet coef  psi_hat(j,k) = lam(j+1, k) phi_hat(j+1, k)

The infinite product telescopes: wherever all remaining levels keep k in the
central half it collapses to exp(-(k^2 + a^2) / (j a)), which is what makes
level-millions evaluations cheap.  `verify_uep` checks the filter-bank
identities (power complementarity, cross orthogonality, two-scale refinement)
numerically on one period.
"""

import math
from dataclasses import dataclass

import numpy as np

from .fourier import FourierSeq

DEFAULT_EPSILON = 1e-16
WINDOW_HARD_CAP = 1 << 26
_SQRT2 = math.sqrt(2.0)
_SQRT_HALF = math.sqrt(0.5)
_LOG_SQRT_HALF = 0.5 * math.log(0.5)


class WindowCapError(RuntimeError):
    """A coefficient window would exceed the configured hard cap."""


@dataclass(frozen=True)
class FrameParams:
    """Family parameter a, dyadic level j and relative truncation tolerance."""

    a: float
    j: int
    epsilon: float = DEFAULT_EPSILON

    def __post_init__(self):
        if not (self.a > 1.0):
            raise ValueError(f"family parameter must satisfy a > 1, got {self.a}")
        if int(self.j) != self.j or self.j < 0:
            raise ValueError(f"level must be an integer >= 0, got {self.j}")
        if not (0.0 < self.epsilon < 1.0):
            raise ValueError(f"truncation tolerance must lie in (0, 1), got {self.epsilon}")
        object.__setattr__(self, "j", int(self.j))
        object.__setattr__(self, "a", float(self.a))
        object.__setattr__(self, "epsilon", float(self.epsilon))

    def at_level(self, j: int) -> "FrameParams":
        return FrameParams(self.a, j, self.epsilon)


@dataclass(frozen=True, eq=False)
class MaskSeq:
    """One period (length 2^j) of a 2^j-periodic mask; lookups reduce k mod 2^j."""

    j: int
    values: np.ndarray

    def __post_init__(self):
        arr = np.array(self.values, dtype=np.complex128)
        if arr.size != (1 << self.j):
            raise ValueError(f"mask period must have length 2^{self.j}")
        arr.setflags(write=False)
        object.__setattr__(self, "values", arr)

    def value(self, k: int) -> complex:
        return complex(self.values[k % self.values.size])


@dataclass(frozen=True)
class UepReport:
    """Worst-case defects of the filter-bank identities at one level."""

    j: int
    max_row_defect: float
    max_cross_defect: float
    max_refine_defect: float
    norm_limit_sample: float


def _require_mask_level(p: FrameParams) -> None:
    if p.j < 1:
        raise ValueError(f"masks are defined for levels j >= 1, got {p.j}")


def _fsq(n: int) -> float:
    # squared index as float; huge reductions saturate to inf (exp then underflows)
    if abs(n) > 10 ** 154:
        return math.inf
    x = float(n)
    return x * x


def _switch_level(k: int) -> int:
    """Smallest level beyond which index k always falls in the central mask half."""
    arg = k if k >= 1 else 1 - k
    return arg.bit_length() + 2


def _reduce_mask_index(k: int, j: int) -> int:
    """Reduce k modulo 2^j into the fundamental window (-2^(j-2), 3*2^(j-2)]."""
    period = 1 << j
    r = k % period
    if r > 3 * (period >> 2):
        r -= period
    return r


def _unit_phase(num: int, j: int) -> complex:
    """e^{2 pi i num / 2^j} with the fraction reduced exactly in integers."""
    r = num % (1 << j)
    if j > 60:
        r >>= j - 60
        j = 60
    x = math.tau * (r / (1 << j))
    return complex(math.cos(x), math.sin(x))


def mask_base(p: FrameParams, k: int) -> float:
    """Base mask value at integer index k (2^j-periodic, in [0, 1])."""
    _require_mask_level(p)
    j, a = p.j, p.a
    if j == 1:
        return _SQRT_HALF
    quarter = 1 << (j - 2)
    r = _reduce_mask_index(k, j)
    den = float(j) * float(j - 1) * a
    if r <= quarter:
        return math.exp(-(_fsq(r) + a * a) / den)
    return math.sqrt(-math.expm1(-2.0 * (_fsq(r - 2 * quarter) + a * a) / den))


def mask_refine(p: FrameParams, k: int) -> float:
    """Refinement (low-pass) mask sqrt(2) * base; appears in the two-scale relation."""
    return _SQRT2 * mask_base(p, k)


def mask_wavelet(p: FrameParams, k: int) -> complex:
    """Wavelet (high-pass) mask e^{2 pi i k / 2^j} * refine(k + 2^(j-1))."""
    _require_mask_level(p)
    return _unit_phase(k, p.j) * mask_refine(p, k + (1 << (p.j - 1)))


def _mask_base_window(p: FrameParams, ks: np.ndarray) -> np.ndarray:
    """Vectorized base mask over an int64 index array (levels j <= 62)."""
    _require_mask_level(p)
    j, a = p.j, p.a
    ks = np.asarray(ks, dtype=np.int64)
    if j == 1:
        return np.full(ks.shape, _SQRT_HALF)
    period = np.int64(1) << j
    quarter = period >> 2
    r = np.mod(ks, period)
    r = np.where(r > 3 * quarter, r - period, r).astype(np.float64)
    den = float(j) * float(j - 1) * a
    central = np.exp(-(r * r + a * a) / den)
    shifted = r - float(2 * quarter)
    outer = np.sqrt(-np.expm1(-2.0 * (shifted * shifted + a * a) / den))
    return np.where(r <= quarter, central, outer)


def _unit_phase_window(ks: np.ndarray, j: int) -> np.ndarray:
    if j <= 60:
        frac = np.mod(np.asarray(ks, dtype=np.int64), np.int64(1) << j) / float(1 << j)
    else:
        frac = np.asarray(ks, dtype=np.float64) * math.pow(2.0, -j)
    return np.exp(2j * np.pi * frac)


def mask_period(p: FrameParams, kind: str = "base") -> MaskSeq:
    """Materialize one period of a mask as a MaskSeq."""
    _require_mask_level(p)
    ks = np.arange(1 << p.j, dtype=np.int64)
    base = _mask_base_window(p, ks)
    if kind == "base":
        vals = base.astype(np.complex128)
    elif kind == "refine":
        vals = (_SQRT2 * base).astype(np.complex128)
    elif kind == "wavelet":
        half = 1 << (p.j - 1)
        vals = _unit_phase_window(ks, p.j) * _SQRT2 * np.roll(base, -half)
    else:
        raise ValueError(f"unknown mask kind {kind!r}")
    return MaskSeq(p.j, vals)


# ---------------------------------------------------------------------------
# scaling / wavelet Fourier coefficients
# ---------------------------------------------------------------------------

def _xi_log(p: FrameParams, k: int) -> float:
    """log of the level-normalized scaling coefficient 2^{j/2} phi_hat_j(k).

    Central-branch factors of the remaining-level product use the index
    reduced modulo 2^r; all log contributions are accumulated exactly (fsum)
    so that huge a^2/(j a) pieces cancel before any exponentiation.
    """
    j, a = p.j, p.a
    switch = _switch_level(k)
    if j >= 1 and j > switch - 2:
        return -(_fsq(k) + a * a) / (float(j) * a)
    terms = [-(_fsq(k) + a * a) / (float(switch - 1) * a)]
    for r in range(j + 1, switch):
        if r == 1:
            terms.append(_LOG_SQRT_HALF)
            continue
        quarter = 1 << (r - 2)
        red = _reduce_mask_index(k, r)
        den_r = float(r) * float(r - 1)
        if red <= quarter:
            terms.append(-(_fsq(red) + a * a) / (den_r * a))
        else:
            ring = -math.expm1(-2.0 * (_fsq(red - 2 * quarter) + a * a) / (den_r * a))
            terms.append(0.5 * math.log(ring))
    return math.fsum(terms)


def _xi_scaled(p: FrameParams, k: int, shift: float) -> float:
    """Level-normalized scaling coefficient times e^shift (0 when it underflows)."""
    expo = shift + _xi_log(p, k)
    if expo > 709.0:
        raise ValueError(
            f"scaled window value overflows at k={k}: far-field coefficients dominate "
            f"this (j={p.j}, a={p.a}) regime")
    return math.exp(expo)


def _xi_scaled_window(p: FrameParams, ks: np.ndarray, shift: float) -> np.ndarray:
    ks = np.asarray(ks, dtype=np.int64)
    out = np.empty(ks.size, dtype=np.float64)
    j, a = p.j, p.a
    if j >= 1:
        if j >= 63:
            inner = np.ones(ks.size, dtype=bool)
        else:
            half = np.int64(1) << (j - 1)
            inner = (ks > -half) & (ks <= half)
        kk = ks[inner].astype(np.float64)
        out[inner] = np.exp(shift - (kk * kk + a * a) / (float(j) * a))
        rest = np.nonzero(~inner)[0]
    else:
        rest = np.arange(ks.size)
    for i in rest:
        out[i] = _xi_scaled(p, int(ks[i]), shift)
    return out


def scaling_hat_normalized(p: FrameParams, k: int) -> float:
    """2^{j/2} * scaling coefficient; tends to 1 for fixed k as j grows."""
    return _xi_scaled(p, k, 0.0)


def scaling_hat(p: FrameParams, k: int) -> float:
    """Fourier coefficient phi_hat_j(k) of the level-j scaling function."""
    return math.pow(2.0, -0.5 * p.j) * _xi_scaled(p, k, 0.0)


def scaling_hat_window(p: FrameParams, ks: np.ndarray) -> np.ndarray:
    return math.pow(2.0, -0.5 * p.j) * _xi_scaled_window(p, ks, 0.0)


def _eta_scaled(p: FrameParams, k: int, shift: float) -> complex:
    """Level-normalized wavelet coefficient (2^{j/2} psi_hat) times e^shift."""
    up = p.at_level(p.j + 1)
    phase = _unit_phase(k, p.j + 1)
    return phase * mask_base(up, k + (1 << p.j)) * _xi_scaled(up, k, shift)


def _eta_scaled_window(p: FrameParams, ks: np.ndarray, shift: float) -> np.ndarray:
    ks = np.asarray(ks, dtype=np.int64)
    out = np.empty(ks.size, dtype=np.complex128)
    j, a = p.j, p.a
    if j >= 1:
        if j >= 63:
            inner = np.ones(ks.size, dtype=bool)
        else:
            half = np.int64(1) << (j - 1)
            inner = (ks > -half) & (ks <= half)
        kk = ks[inner].astype(np.float64)
        ring = np.sqrt(-np.expm1(-2.0 * (kk * kk + a * a) / (float(j) * float(j + 1) * a)))
        gauss = np.exp(shift - (kk * kk + a * a) / (float(j + 1) * a))
        out[inner] = _unit_phase_window(ks[inner], j + 1) * ring * gauss
        rest = np.nonzero(~inner)[0]
    else:
        rest = np.arange(ks.size)
    for i in rest:
        out[i] = _eta_scaled(p, int(ks[i]), shift)
    return out


def wavelet_hat_normalized(p: FrameParams, k: int) -> complex:
    """2^{j/2} * wavelet coefficient psi_hat_j(k)."""
    return _eta_scaled(p, k, 0.0)


def wavelet_hat(p: FrameParams, k: int) -> complex:
    """Fourier coefficient psi_hat_j(k) = wavelet-mask(j+1, k) * phi_hat_{j+1}(k)."""
    return math.pow(2.0, -0.5 * p.j) * _eta_scaled(p, k, 0.0)


def wavelet_hat_window(p: FrameParams, ks: np.ndarray) -> np.ndarray:
    return math.pow(2.0, -0.5 * p.j) * _eta_scaled_window(p, ks, 0.0)


# ---------------------------------------------------------------------------
# truncation windows and builders
# ---------------------------------------------------------------------------

def truncation_window(p: FrameParams) -> int:
    """Half-width K of the retained index range [-K, K].

    K is the smallest integer with exp(-K^2 / (max(j,1) a)) < epsilon, plus a
    safety margin of 8 indices.  The criterion is relative to the window peak,
    matching the builders' contract that omitted coefficients stay below
    epsilon times the largest retained magnitude.
    """
    s = max(p.j, 1) * p.a
    target = math.log(1.0 / p.epsilon)
    k = int(math.sqrt(s * target)) + 1
    while k > 1 and math.exp(-float(k - 1) * (k - 1) / s) < p.epsilon:
        k -= 1
    while math.exp(-float(k) * k / s) >= p.epsilon:
        k += 1
    return k + 8


def _grow_window(eval_fn, k_start: int, epsilon: float, max_width: int) -> FourierSeq:
    """Extend [-K, K] until edge magnitudes drop below epsilon * peak."""
    k = int(k_start)
    while True:
        if 2 * k + 1 > max_width:
            raise WindowCapError(f"window of {2 * k + 1} coefficients exceeds cap {max_width}")
        ks = np.arange(-k, k + 1, dtype=np.int64)
        vals = np.asarray(eval_fn(ks), dtype=np.complex128)
        mags = np.abs(vals)
        peak = mags.max()
        if peak == 0.0 or max(mags[0], mags[-1]) < epsilon * peak:
            return FourierSeq(-k, vals)
        k += max(8, k >> 2)


def build_scaling_seq(p: FrameParams, max_width: int = WINDOW_HARD_CAP) -> FourierSeq:
    """Windowed scaling coefficients phi_hat_j over the truncation window."""
    return _grow_window(lambda ks: scaling_hat_window(p, ks),
                        truncation_window(p), p.epsilon, max_width)


def build_wavelet_seq(p: FrameParams, max_width: int = WINDOW_HARD_CAP) -> FourierSeq:
    """Windowed wavelet coefficients psi_hat_j over the truncation window."""
    return _grow_window(lambda ks: wavelet_hat_window(p, ks),
                        truncation_window(p.at_level(p.j + 1)), p.epsilon, max_width)


def _xi_log_window(p: FrameParams, ks: np.ndarray) -> np.ndarray:
    ks = np.asarray(ks, dtype=np.int64)
    out = np.empty(ks.size, dtype=np.float64)
    j, a = p.j, p.a
    if j >= 1:
        if j >= 63:
            inner = np.ones(ks.size, dtype=bool)
        else:
            half = np.int64(1) << (j - 1)
            inner = (ks > -half) & (ks <= half)
        kk = ks[inner].astype(np.float64)
        out[inner] = -(kk * kk + a * a) / (float(j) * a)
        rest = np.nonzero(~inner)[0]
    else:
        rest = np.arange(ks.size)
    for i in rest:
        out[i] = _xi_log(p, int(ks[i]))
    return out


def _eta_log(p: FrameParams, k: int) -> float:
    up = p.at_level(p.j + 1)
    ring = mask_base(up, k + (1 << p.j))
    if ring == 0.0:
        return -math.inf
    return math.log(ring) + _xi_log(up, k)


def _eta_log_window(p: FrameParams, ks: np.ndarray) -> np.ndarray:
    ks = np.asarray(ks, dtype=np.int64)
    out = np.empty(ks.size, dtype=np.float64)
    j, a = p.j, p.a
    if j >= 1:
        if j >= 63:
            inner = np.ones(ks.size, dtype=bool)
        else:
            half = np.int64(1) << (j - 1)
            inner = (ks > -half) & (ks <= half)
        kk = ks[inner].astype(np.float64)
        ring_sq = -np.expm1(-2.0 * (kk * kk + a * a) / (float(j) * float(j + 1) * a))
        out[inner] = 0.5 * np.log(ring_sq) - (kk * kk + a * a) / (float(j + 1) * a)
        rest = np.nonzero(~inner)[0]
    else:
        rest = np.arange(ks.size)
    for i in rest:
        out[i] = _eta_log(p, int(ks[i]))
    return out


def _grow_window_log(log_fn, k_start: int, epsilon: float, max_width: int):
    """Extend [-K, K] until edge log-magnitudes fall below log(eps) + peak."""
    k = int(k_start)
    floor = math.log(epsilon)
    while True:
        if 2 * k + 1 > max_width:
            raise WindowCapError(f"window of {2 * k + 1} coefficients exceeds cap {max_width}")
        ks = np.arange(-k, k + 1, dtype=np.int64)
        logs = log_fn(ks)
        peak = logs.max()
        if max(logs[0], logs[-1]) - peak < floor:
            return ks, logs, peak
        k += max(8, k >> 2)


def build_scaling_seq_peak(p: FrameParams, max_width: int = WINDOW_HARD_CAP) -> FourierSeq:
    """Scaling window normalized to unit peak magnitude.

    Same shape as the scaling sequence (uncertainty constants agree by
    homogeneity); evaluated in log space, so it stays finite in regimes where
    the faithful normalization under- or overflows.
    """
    ks, logs, peak = _grow_window_log(lambda kk: _xi_log_window(p, kk),
                                      truncation_window(p), p.epsilon, max_width)
    return FourierSeq(int(ks[0]), np.exp(logs - peak).astype(np.complex128))


def build_wavelet_seq_peak(p: FrameParams, max_width: int = WINDOW_HARD_CAP) -> FourierSeq:
    """Wavelet window normalized to unit peak magnitude; see build_scaling_seq_peak."""
    ks, logs, peak = _grow_window_log(lambda kk: _eta_log_window(p, kk),
                                      truncation_window(p.at_level(p.j + 1)),
                                      p.epsilon, max_width)
    vals = _unit_phase_window(ks, p.j + 1) * np.exp(logs - peak)
    return FourierSeq(int(ks[0]), vals)


# ---------------------------------------------------------------------------
# filter-bank identity verification
# ---------------------------------------------------------------------------

def verify_uep(p: FrameParams, corrupt: float = 0.0, period_cap: int = 1 << 24) -> UepReport:
    """Numerically check the frame identities at level j and report worst defects.

    Checked on one full period: both row identities |mu_k|^2 + |mu_{k+h}|^2 = 2
    and |lam_k|^2 + |lam_{k+h}|^2 = 2 (h = 2^(j-1)), both cross products
    mu_k conj(mu_{k+h}) + lam_k conj(lam_{k+h}) and
    mu_k conj(lam_k) + mu_{k+h} conj(lam_{k+h}) (both must vanish), and the
    two-scale relation phi_hat_{j-1}(k) = mu_k phi_hat_j(k) over the
    level-(j-1) truncation window (relative defect).

    `corrupt` is a test hook adding a perturbation to one mask value so that
    negative controls can demonstrate a detected defect.  Defects are data,
    not exceptions.
    """
    _require_mask_level(p)
    period = 1 << p.j
    if period > period_cap:
        raise ValueError(f"period 2^{p.j} exceeds the verification cap {period_cap}")
    ks = np.arange(period, dtype=np.int64)
    mu = _SQRT2 * _mask_base_window(p, ks)
    if corrupt:
        mu = mu.copy()
        mu[0] += corrupt
    half = period >> 1
    mu_s = np.roll(mu, -half)
    lam = _unit_phase_window(ks, p.j) * mu_s
    lam_s = np.roll(lam, -half)

    row_mu = np.abs(mu * mu + mu_s * mu_s - 2.0)
    row_lam = np.abs(lam.real * lam.real + lam.imag * lam.imag
                     + lam_s.real * lam_s.real + lam_s.imag * lam_s.imag - 2.0)
    max_row = float(max(row_mu.max(), row_lam.max()))

    cross_cols = np.abs(mu * mu_s + lam * np.conj(lam_s))
    cross_rows = np.abs(mu * np.conj(lam) + mu_s * np.conj(lam_s))
    max_cross = float(max(cross_cols.max(), cross_rows.max()))

    coarse = build_scaling_seq(p.at_level(p.j - 1))
    wk = coarse.indices()
    lhs = coarse.coeffs.real
    rhs = _SQRT2 * _mask_base_window(p, wk) * scaling_hat_window(p, wk)
    nonzero = lhs != 0.0
    if np.any(nonzero):
        max_refine = float((np.abs(lhs[nonzero] - rhs[nonzero]) / np.abs(lhs[nonzero])).max())
    else:
        max_refine = 0.0

    return UepReport(
        j=p.j,
        max_row_defect=max_row,
        max_cross_defect=max_cross,
        max_refine_defect=max_refine,
        norm_limit_sample=_xi_scaled(p, 0, 0.0),
    )


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

def frame_seq_to_dict(f: FourierSeq, p: FrameParams, kind: str) -> dict:
    """Coefficient-window JSON with the frame header {"a", "j", "kind"}."""
    if kind not in ("scaling", "wavelet"):
        raise ValueError(f"kind must be 'scaling' or 'wavelet', got {kind!r}")
    out = {"a": p.a, "j": p.j, "kind": kind}
    from .fourier import fourier_to_dict

    out.update(fourier_to_dict(f))
    return out
