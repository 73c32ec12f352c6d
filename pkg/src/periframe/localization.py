"""Breitenberger uncertainty constants and closed-form reference sequences.

For f(x) = sum_k c_k e^{2 pi i k x} the periodic uncertainty constant is
UC(f) = sqrt(var_A(f) * var_F(f)) with

    tau(f)   = -2 pi sum_k c_k conj(c_{k+1})          (first trig. moment)
    var_A(f) = ||f||^4 / |tau|^2 - 1 / (4 pi^2)       (angular variance)
    var_F(f) = 4 pi^2 [ sum k^2|c_k|^2 / sum |c_k|^2
                        - (sum k|c_k|^2)^2 / (sum |c_k|^2)^2 ]

UC is scale invariant and strictly above 1/2 for anything that is not a
single exponential.  `uc_scaling` / `uc_wavelet` evaluate the family member
at any level: once the dyadic period dwarfs the coefficient window the
windows coincide with the closed-form Gaussian reference sequences

    scaling ref:  exp(-(k^2 + a^2) / (j a))
    wavelet ref:  e^{2 pi i k / 2^(j+1)}
                  sqrt(1 - exp(-2 (k^2 + a^2) / (j (j+1) a)))
                  exp(-(k^2 + a^2) / ((j+1) a))

and are evaluated directly, never materializing 2^j data, which keeps levels
in the millions at sub-millisecond cost.  The asymptotic predictors
(`asym_*`) give the main terms of the wavelet reference moments in the
reparameterization h = 1/(j+1), q = 1/a.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import frame as _frame
from .fourier import FourierSeq, csum, csum_complex

_FOUR_PI_SQ = 4.0 * math.pi ** 2
_TAU_FLOOR = 1e-300


class UndefinedUCError(ValueError):
    """The first trigonometric moment vanishes, so the UC is undefined."""


@dataclass(frozen=True)
class UcReport:
    """Norms, first trigonometric moment, variances and the resulting UC."""

    norm_sq: float
    deriv_norm_sq: float
    tau: complex
    var_a: float
    var_f: float
    uc: float


@dataclass(frozen=True)
class AsymParams:
    """Reparameterization h = 1/(level+1), q = 1/a used by the predictors."""

    h: float
    q: float

    def __post_init__(self):
        if not (0.0 < self.h <= 0.5):
            raise ValueError(f"h must lie in (0, 1/2], got {self.h}")
        if not (0.0 < self.q <= 1.0):
            raise ValueError(f"q must lie in (0, 1], got {self.q}")

    @classmethod
    def from_frame(cls, p: _frame.FrameParams) -> "AsymParams":
        return cls(h=1.0 / (p.j + 1), q=1.0 / p.a)


# ---------------------------------------------------------------------------
# uncertainty constant of a coefficient window
# ---------------------------------------------------------------------------

def trig_moment(f: FourierSeq) -> complex:
    """First trigonometric moment tau(f) = -2 pi sum_k c_k conj(c_{k+1})."""
    c = f.coeffs
    if c.size < 2:
        return 0j
    return -math.tau * csum_complex(c[:-1] * np.conj(c[1:]))


def angular_variance(f: FourierSeq) -> float:
    """Angular variance ||f||^4/|tau|^2 - 1/(4 pi^2); needs tau != 0."""
    s0 = _sum_mag2(f)
    if s0 == 0.0:
        raise ValueError("angular variance of the zero sequence is undefined")
    tau = trig_moment(f)
    t = abs(tau) / math.tau
    if abs(tau) < _TAU_FLOOR:
        raise UndefinedUCError(
            "first trigonometric moment vanishes (single-exponential-type input)")
    x = s0 / t
    return (x - 1.0) * (x + 1.0) / _FOUR_PI_SQ


def frequency_variance(f: FourierSeq) -> float:
    """Frequency variance in coefficient form (second minus squared first moment)."""
    c = f.coeffs
    mag2 = c.real * c.real + c.imag * c.imag
    s0 = csum(mag2)
    if s0 == 0.0:
        raise ValueError("frequency variance of the zero sequence is undefined")
    k = f.indices().astype(np.float64)
    m1 = csum(k * mag2)
    m2 = csum(k * k * mag2)
    return _FOUR_PI_SQ * (m2 / s0 - (m1 / s0) ** 2)


def breitenberger_uc(f: FourierSeq) -> UcReport:
    """Full uncertainty report for a coefficient window."""
    c = f.coeffs
    mag2 = c.real * c.real + c.imag * c.imag
    s0 = csum(mag2)
    if s0 == 0.0:
        raise ValueError("uncertainty constant of the zero sequence is undefined")
    k = f.indices().astype(np.float64)
    m1 = csum(k * mag2)
    m2 = csum(k * k * mag2)
    tau = trig_moment(f)
    if abs(tau) < _TAU_FLOOR:
        raise UndefinedUCError(
            "first trigonometric moment vanishes (single-exponential-type input)")
    t = abs(tau) / math.tau
    x = s0 / t
    var_a = (x - 1.0) * (x + 1.0) / _FOUR_PI_SQ
    var_f = _FOUR_PI_SQ * (m2 / s0 - (m1 / s0) ** 2)
    return UcReport(
        norm_sq=s0,
        deriv_norm_sq=_FOUR_PI_SQ * m2,
        tau=tau,
        var_a=var_a,
        var_f=var_f,
        uc=math.sqrt(var_a * var_f),
    )


def _sum_mag2(f: FourierSeq) -> float:
    c = f.coeffs
    return csum(c.real * c.real + c.imag * c.imag)


# ---------------------------------------------------------------------------
# closed-form reference sequences
# ---------------------------------------------------------------------------

def scaling_ref_hat(p: _frame.FrameParams, k: int) -> float:
    """Gaussian reference coefficient exp(-(k^2 + a^2)/(j a)); equals the
    level-normalized scaling coefficient on the central index range."""
    if p.j < 1:
        raise ValueError("reference sequences are defined for levels j >= 1")
    x = float(k)
    return math.exp(-(x * x + p.a * p.a) / (p.j * p.a))


def wavelet_ref_hat(p: _frame.FrameParams, k: int) -> complex:
    """Closed-form reference wavelet coefficient (level-normalized)."""
    if p.j < 1:
        raise ValueError("reference sequences are defined for levels j >= 1")
    a, j = p.a, p.j
    x = float(k)
    ring = math.sqrt(-math.expm1(-2.0 * (x * x + a * a) / (j * (j + 1.0) * a)))
    gauss = math.exp(-(x * x + a * a) / ((j + 1.0) * a))
    return _frame._unit_phase(k, j + 1) * ring * gauss


def _ref_window_halfwidth(p: _frame.FrameParams) -> int:
    """Window half-width for the reference wavelet at relative tolerance epsilon.

    The Gaussian scale is (j+1) a; the target is widened by the small
    center amplitude sqrt(1 - exp(-2a/(j(j+1)))) so the relative-to-peak
    truncation contract holds for the ring-shaped wavelet profile too.
    """
    a, j = p.a, p.j
    s = (j + 1.0) * a
    w0 = math.sqrt(-math.expm1(-2.0 * a / (j * (j + 1.0))))
    extra = max(0.0, -math.log(w0)) if w0 > 0.0 else 0.0
    return int(math.ceil(math.sqrt(s * (math.log(1.0 / p.epsilon) + extra)))) + 8


def _scaling_closed_seq(p: _frame.FrameParams) -> FourierSeq:
    # unit-peak normalization: the constant exp(-a/j) cancels in the UC
    half = _frame.truncation_window(p)
    ks = np.arange(-half, half + 1, dtype=np.float64)
    return FourierSeq(-half, np.exp(-ks * ks / (p.j * p.a)).astype(np.complex128))


def _wavelet_closed_seq(p: _frame.FrameParams) -> FourierSeq:
    # constant exp(-a/(j+1)) dropped for the same scale-invariance reason
    a, j = p.a, p.j
    half = _ref_window_halfwidth(p)
    ks = np.arange(-half, half + 1, dtype=np.float64)
    ring = np.sqrt(-np.expm1(-2.0 * (ks * ks + a * a) / (j * (j + 1.0) * a)))
    gauss = np.exp(-ks * ks / ((j + 1.0) * a))
    phase = np.exp(2j * np.pi * ks * math.pow(2.0, -(j + 1)))
    return FourierSeq(-half, phase * ring * gauss)


def uc_scaling(p: _frame.FrameParams) -> UcReport:
    """UC of the level-j scaling sequence.

    Past the full-window regime (dyadic half-period above the truncation
    window) the Gaussian closed form stands in for the exact window; below
    it the windowed sequence is built from the mask products.  Reported
    norms are those of the level-normalized window, so `uc` is the
    scale-invariant quantity in both regimes.
    """
    if p.j >= 1 and (1 << (p.j - 1)) > _frame.truncation_window(p):
        return breitenberger_uc(_scaling_closed_seq(p))
    return breitenberger_uc(_frame.build_scaling_seq_peak(p))


def uc_wavelet(p: _frame.FrameParams) -> UcReport:
    """UC of the level-j wavelet sequence (closed form past the full-window regime)."""
    if p.j >= 1 and (1 << (p.j - 1)) > _ref_window_halfwidth(p):
        return breitenberger_uc(_wavelet_closed_seq(p))
    return breitenberger_uc(_frame.build_wavelet_seq_peak(p))


# ---------------------------------------------------------------------------
# asymptotic predictors (main terms; the common factor exp(-2h/q) shared by
# the direct series and the predictor is omitted so that extreme parameter
# ranges stay inside double range; ratios are unaffected)
# ---------------------------------------------------------------------------

def asym_norm_sq(ap: AsymParams) -> float:
    """Two-term main part of the squared norm of the reference wavelet window."""
    h, q = ap.h, ap.q
    u = 2.0 * h * h / (q * (1.0 - h))
    paren = -math.expm1(0.5 * math.log1p(-h) - u)
    return math.sqrt(math.pi / (2.0 * h * q)) * paren


def asym_deriv_norm_sq(ap: AsymParams) -> float:
    """Two-term main part of the squared derivative norm (times 4 pi^2)."""
    h, q = ap.h, ap.q
    u = 2.0 * h * h / (q * (1.0 - h))
    paren = -math.expm1(1.5 * math.log1p(-h) - u)
    return _FOUR_PI_SQ * 0.5 * math.sqrt(math.pi / (2.0 * h * q) ** 3) * paren


def asym_freq_var(ap: AsymParams, regime: str) -> float:
    """Leading frequency variance: 4 pi^2 * 3/(4hq) as h -> 0, 1/(4hq) as q -> 0."""
    if regime == "h_to_0":
        return _FOUR_PI_SQ * 3.0 / (4.0 * ap.h * ap.q)
    if regime == "q_to_0":
        return _FOUR_PI_SQ * 1.0 / (4.0 * ap.h * ap.q)
    raise ValueError(f"regime must be 'h_to_0' or 'q_to_0', got {regime!r}")


def asym_tau(ap: AsymParams, regime: str) -> float:
    """Main term of |tau|/(2 pi) for the reference wavelet window."""
    h, q = ap.h, ap.q
    if regime == "h_to_0":
        lead = math.exp(-h * q / 2.0) / (1.0 - h) * math.sqrt(math.pi / (8.0 * q))
        corr = ((1.0 - h) * (16.0 - 4.0 * q * q) - 3.0 * q) / (4.0 * q * (1.0 - h))
        return lead * (math.sqrt(h) + corr * h * math.sqrt(h))
    if regime == "q_to_0":
        return math.exp(-h * q / 2.0) * math.sqrt(math.pi / (2.0 * h * q))
    raise ValueError(f"regime must be 'h_to_0' or 'q_to_0', got {regime!r}")


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

def uc_report_to_dict(rep: UcReport, a: float, j: int, kind: str) -> dict:
    """JSON-ready encoding of a UC report with its parameter context."""
    return {
        "a": a,
        "j": j,
        "kind": kind,
        "norm_sq": rep.norm_sq,
        "deriv_norm_sq": rep.deriv_norm_sq,
        "tau": [rep.tau.real, rep.tau.imag],
        "var_a": rep.var_a,
        "var_f": rep.var_f,
        "uc": rep.uc,
    }
