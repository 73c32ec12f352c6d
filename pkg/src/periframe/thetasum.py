"""Gaussian-quadratic lattice sums evaluated two independent ways.

The sums

    S_m(b) = sum_{k in Z} (alpha k^2 + beta k + gamma)^m
             e^{-b (alpha k^2 + beta k + gamma)}

are computed either by direct compensated summation (`theta_direct`) or
through the Poisson-side series (`theta_poisson`): completing the square
turns the k-sum into a shifted Gaussian lattice sum, Poisson summation maps
it to a rapidly convergent dual series, and the m-th b-derivative of each
dual term is carried out symbolically (each term is a finite combination
c * e^{-c0 b - w/b} * b^{-1/2-r}).  Agreement of the two routes is a strong
end-to-end check on every Gaussian-series consumer in this package and is
enforced to 1e-12 relative in the acceptance suite.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import localization as _loc
from .fourier import csum
from .frame import FrameParams

THETA_B_MAX = 4.0
_DUAL_RELATIVE_CUTOFF = 1e-18
_FOUR_PI_SQ = 4.0 * math.pi ** 2


@dataclass(frozen=True)
class ThetaParams:
    """Quadratic form coefficients, decay rate b, power m, and Poisson shift."""

    alpha: float
    beta: float = 0.0
    gamma: float = 0.0
    b: float = 1.0
    m: int = 0
    t: float | None = None

    def __post_init__(self):
        if not (self.alpha > 0.0):
            raise ValueError(f"alpha must be positive, got {self.alpha}")
        if not (0.0 < self.b < THETA_B_MAX):
            raise ValueError(f"b must lie in (0, {THETA_B_MAX}), got {self.b}")
        if int(self.m) != self.m or self.m < 0:
            raise ValueError(f"m must be an integer >= 0, got {self.m}")
        object.__setattr__(self, "m", int(self.m))

    @property
    def shift(self) -> float:
        """Poisson shift; defaults to the square-completing value -beta/(2 alpha)."""
        if self.t is not None:
            return self.t
        return -self.beta / (2.0 * self.alpha)


def theta_direct(p: ThetaParams) -> float:
    """Direct summation over k, truncated far beyond double underflow."""
    alpha, beta, gamma, b, m = p.alpha, p.beta, p.gamma, p.b, p.m
    vertex = -beta / (2.0 * alpha)
    radius = int(math.ceil(math.sqrt(830.0 / (b * alpha)))) + int(math.ceil(abs(vertex))) + 12
    k = np.arange(-radius, radius + 1, dtype=np.float64)
    poly = alpha * k * k + beta * k + gamma
    terms = np.exp(-b * poly)
    if m:
        terms = terms * poly ** m
    return csum(terms)


def _derivative_coeffs(m: int, c0: float, w: float) -> dict:
    """b-derivative coefficients of e^{-c0 b - w/b} b^{-1/2} as {power: coef}.

    d/db maps a term A b^{-p} (times the fixed exponential) to
    -c0 A b^{-p} + w A b^{-p-2} - p A b^{-p-1}.
    """
    coeffs = {0.5: 1.0}
    for _ in range(m):
        new: dict = {}
        for power, amp in coeffs.items():
            new[power] = new.get(power, 0.0) - c0 * amp
            new[power + 2.0] = new.get(power + 2.0, 0.0) + w * amp
            new[power + 1.0] = new.get(power + 1.0, 0.0) - power * amp
        coeffs = new
    return coeffs


def theta_poisson(p: ThetaParams) -> float:
    """Poisson-side evaluation: dual series with symbolic b-derivatives (m <= 3)."""
    if p.m > 3:
        raise ValueError("the Poisson route carries analytic b-derivatives for m <= 3 only")
    alpha, beta, gamma, b, m = p.alpha, p.beta, p.gamma, p.b, p.m
    c0 = gamma - beta * beta / (4.0 * alpha)
    t = -beta / (2.0 * alpha)  # square-completing shift; the identity needs this one
    root = math.sqrt(math.pi / alpha)
    sign = -1.0 if m % 2 else 1.0

    def dual_term(n: int) -> tuple:
        w = math.pi ** 2 * n * n / alpha
        coeffs = _derivative_coeffs(m, c0, w)
        envelope = math.exp(-c0 * b - w / b)
        if envelope == 0.0:
            return 0.0, 0.0
        series = math.fsum(amp * b ** (-power) for power, amp in coeffs.items())
        bound = math.fsum(abs(amp) * b ** (-power) for power, amp in coeffs.items())
        return envelope * series, envelope * bound

    main, main_env = dual_term(0)
    pieces = [main]
    scale = abs(main_env)
    n = 1
    while n < 512:
        value, env = dual_term(n)
        weight = 2.0 * math.cos(math.tau * n * t)
        pieces.append(weight * value)
        scale = max(scale, abs(env))
        if env == 0.0 or 2.0 * env < _DUAL_RELATIVE_CUTOFF * scale:
            break
        n += 1
    return sign * root * math.fsum(pieces)


def gaussian_shift_sum(b: float, alpha: float, t: float) -> float:
    """Direct side of the Poisson identity: sum_k e^{-b alpha (k - t)^2}."""
    if b <= 0.0 or alpha <= 0.0:
        raise ValueError("b and alpha must be positive")
    radius = int(math.ceil(math.sqrt(830.0 / (b * alpha)))) + int(math.ceil(abs(t))) + 12
    k = np.arange(-radius, radius + 1, dtype=np.float64)
    return csum(np.exp(-b * alpha * (k - t) ** 2))


def poisson_dual_sum(b: float, alpha: float, t: float) -> float:
    """Dual side: sqrt(pi/(b alpha)) sum_k cos(2 pi k t) e^{-pi^2 k^2/(b alpha)}."""
    if b <= 0.0 or alpha <= 0.0:
        raise ValueError("b and alpha must be positive")
    root = math.sqrt(math.pi / (b * alpha))
    pieces = [1.0]
    n = 1
    while n < 512:
        env = math.exp(-math.pi ** 2 * n * n / (b * alpha))
        pieces.append(2.0 * math.cos(math.tau * n * t) * env)
        if 2.0 * env < _DUAL_RELATIVE_CUTOFF:
            break
        n += 1
    return root * math.fsum(pieces)


def ref_moment_direct(p: FrameParams, moment: str) -> float:
    """Direct-summation moments of the reference wavelet window.

    moment = "norm"  -> sum |eta(k)|^2
    moment = "dnorm" -> 4 pi^2 sum k^2 |eta(k)|^2
    moment = "tau"   -> 2 pi |sum eta(k) conj(eta(k+1))|

    The overall factor exp(-2a/(j+1)) shared with the asymptotic predictors
    is omitted (it cancels in every ratio and underflows for extreme a).
    """
    if p.j < 1:
        raise ValueError("reference moments are defined for levels j >= 1")
    a, j = p.a, p.j
    half = _loc._ref_window_halfwidth(p)
    ks = np.arange(-half, half + 1, dtype=np.float64)
    ring_sq = -np.expm1(-2.0 * (ks * ks + a * a) / (j * (j + 1.0) * a))
    gauss = np.exp(-ks * ks / ((j + 1.0) * a))
    if moment == "norm":
        return csum(ring_sq * gauss * gauss)
    if moment == "dnorm":
        return _FOUR_PI_SQ * csum(ks * ks * ring_sq * gauss * gauss)
    if moment == "tau":
        amp = np.sqrt(ring_sq) * gauss
        return math.tau * csum(amp[:-1] * amp[1:])
    raise ValueError(f"moment must be 'norm', 'dnorm' or 'tau', got {moment!r}")
