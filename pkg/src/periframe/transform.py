"""Frame analysis and synthesis in the Fourier domain.

The frame elements at level j are translates g_{j,k}(x) = g_j(x - k/2^j) of
the scaling or wavelet function, so the inner products

    <f, g_{j,k}> = sum_m f_hat(m) conj(g_hat_j(m)) e^{2 pi i m k / 2^j}

are computed by folding the summand modulo 2^j and applying one length-2^j
inverse-style DFT.  The energy cascade and the telescoped Parseval identity
follow from the mask identities checked in `frame.verify_uep`; here they are
measured as defects on concrete signals.
"""

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import frame as _frame
from .fourier import FourierSeq, csum, csum_complex, dft, idft, difference_norm_sq, norm_sq

LEVEL_CAP = 1 << 16


@dataclass(frozen=True, eq=False)
class LevelCoeffs:
    """Inner products with all 2^j translates of one frame generator."""

    j: int
    kind: str
    values: np.ndarray

    def __post_init__(self):
        if self.kind not in ("scaling", "wavelet"):
            raise ValueError(f"kind must be 'scaling' or 'wavelet', got {self.kind!r}")
        arr = np.array(self.values, dtype=np.complex128)
        if arr.size != (1 << self.j):
            raise ValueError(f"level {self.j} must hold exactly 2^{self.j} coefficients")
        arr.setflags(write=False)
        object.__setattr__(self, "values", arr)

    def energy(self) -> float:
        v = self.values
        return csum(v.real * v.real + v.imag * v.imag)


@dataclass(frozen=True, eq=False)
class FrameDecomposition:
    """Coarsest-level coefficient plus wavelet levels j = 0 .. J-1."""

    a: float
    J: int
    phi0: complex
    wavelet_levels: tuple

    def total_energy(self) -> float:
        return abs(self.phi0) ** 2 + math.fsum(lc.energy() for lc in self.wavelet_levels)


class ParsevalReport(NamedTuple):
    """Relative defects of the telescoped Parseval identity."""

    telescoping: float
    completeness: float


def _generator_hat(p: _frame.FrameParams, kind: str, ks: np.ndarray) -> np.ndarray:
    if kind == "scaling":
        return _frame.scaling_hat_window(p, ks).astype(np.complex128)
    if kind == "wavelet":
        return _frame.wavelet_hat_window(p, ks)
    raise ValueError(f"kind must be 'scaling' or 'wavelet', got {kind!r}")


def analyze_level(f: FourierSeq, p: _frame.FrameParams, kind: str,
                  level_cap: int = LEVEL_CAP) -> LevelCoeffs:
    """Inner products <f, g_{j,k}> for k = 0 .. 2^j - 1 via fold plus DFT."""
    n = 1 << p.j
    if n > level_cap:
        raise ValueError(f"level 2^{p.j} exceeds the per-level cap {level_cap}")
    ks = f.indices()
    ghat = _generator_hat(p, kind, ks)
    folded = np.zeros(n, dtype=np.complex128)
    np.add.at(folded, np.mod(ks, n), f.coeffs * np.conj(ghat))
    return LevelCoeffs(p.j, kind, idft(folded))


def decompose(f: FourierSeq, a: float, J: int, epsilon: float = _frame.DEFAULT_EPSILON,
              constant_base: bool = False) -> FrameDecomposition:
    """Frame coefficients of f: coarsest-level inner product plus wavelet levels 0..J-1.

    The coarsest-level reference is the two-scale-consistent level-0 scaling
    function; `constant_base` swaps in the constant function instead (a
    comparison mode; the telescoped energy identity then degrades at level 0).
    """
    if J < 1:
        raise ValueError(f"decomposition depth must satisfy J >= 1, got {J}")
    p0 = _frame.FrameParams(a, 0, epsilon)
    ks = f.indices()
    if constant_base:
        sel = np.nonzero(ks == 0)[0]
        phi0 = complex(f.coeffs[sel[0]]) if sel.size else 0j
    else:
        ghat = _frame.scaling_hat_window(p0, ks)
        phi0 = csum_complex(f.coeffs * ghat)
    levels = tuple(
        analyze_level(f, _frame.FrameParams(a, j, epsilon), "wavelet")
        for j in range(J)
    )
    return FrameDecomposition(a=float(a), J=int(J), phi0=phi0, wavelet_levels=levels)


def cascade_defect(f: FourierSeq, p: _frame.FrameParams) -> float:
    """Relative defect of the one-level energy split.

    |sum_k |<f, phi_{j,k}>|^2 - sum_k |<f, phi_{j-1,k}>|^2
     - sum_k |<f, psi_{j-1,k}>|^2| / ||f||^2.
    """
    if p.j < 1:
        raise ValueError("cascade needs a level j >= 1")
    total = norm_sq(f)
    if total == 0.0:
        return 0.0
    fine = analyze_level(f, p, "scaling").energy()
    coarse = analyze_level(f, p.at_level(p.j - 1), "scaling").energy()
    detail = analyze_level(f, p.at_level(p.j - 1), "wavelet").energy()
    return abs(fine - coarse - detail) / total


def parseval_defect(f: FourierSeq, a: float, J: int,
                    epsilon: float = _frame.DEFAULT_EPSILON,
                    constant_base: bool = False) -> ParsevalReport:
    """Telescoping and completeness defects of the depth-J expansion.

    telescoping:  | |phi0|^2 + sum_{j<J} E_psi(j)  -  E_phi(J) | / ||f||^2
    completeness: | E_phi(J) - ||f||^2 | / ||f||^2
    where E_g(j) = sum_k |<f, g_{j,k}>|^2.
    """
    total = norm_sq(f)
    if total == 0.0:
        return ParsevalReport(0.0, 0.0)
    deco = decompose(f, a, J, epsilon, constant_base)
    top = analyze_level(f, _frame.FrameParams(a, J, epsilon), "scaling").energy()
    telescoping = abs(deco.total_energy() - top) / total
    completeness = abs(top - total) / total
    return ParsevalReport(telescoping, completeness)


def synthesize(d: FrameDecomposition, epsilon: float = _frame.DEFAULT_EPSILON,
               constant_base: bool = False) -> FourierSeq:
    """Plain frame expansion phi0 * phi_0 + sum_{j,k} c_{j,k} psi_{j,k}.

    Output coefficients at mode m collect psi_hat_j(m) times the forward DFT
    of each level's coefficients at m mod 2^j.
    """
    half = _frame.truncation_window(_frame.FrameParams(d.a, max(d.J, 1), epsilon)) + 8
    ks = np.arange(-half, half + 1, dtype=np.int64)
    out = np.zeros(ks.size, dtype=np.complex128)
    if constant_base:
        out[half] += d.phi0
    else:
        p0 = _frame.FrameParams(d.a, 0, epsilon)
        out += d.phi0 * _frame.scaling_hat_window(p0, ks)
    for lc in d.wavelet_levels:
        p = _frame.FrameParams(d.a, lc.j, epsilon)
        spectrum = dft(lc.values)
        out += _frame.wavelet_hat_window(p, ks) * spectrum[np.mod(ks, 1 << lc.j)]
    return FourierSeq(-half, out)


def roundtrip_error(f: FourierSeq, a: float, J: int,
                    epsilon: float = _frame.DEFAULT_EPSILON,
                    constant_base: bool = False) -> float:
    """Relative L2 error of decompose-then-synthesize against the input."""
    total = norm_sq(f)
    if total == 0.0:
        return 0.0
    rec = synthesize(decompose(f, a, J, epsilon, constant_base), epsilon, constant_base)
    return math.sqrt(difference_norm_sq(f, rec) / total)


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

def decomposition_to_dict(d: FrameDecomposition) -> dict:
    return {
        "a": d.a,
        "J": d.J,
        "phi0": [d.phi0.real, d.phi0.imag],
        "levels": [
            {
                "j": lc.j,
                "kind": lc.kind,
                "values": [[v.real, v.imag] for v in lc.values],
            }
            for lc in d.wavelet_levels
        ],
    }


def decomposition_from_dict(data: dict) -> FrameDecomposition:
    try:
        a = float(data["a"])
        J = int(data["J"])
        phi0 = complex(data["phi0"][0], data["phi0"][1])
        levels = tuple(
            LevelCoeffs(
                int(entry["j"]),
                str(entry["kind"]),
                np.array([complex(re, im) for re, im in entry["values"]]),
            )
            for entry in data["levels"]
        )
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise ValueError(f"malformed decomposition: {exc}") from exc
    return FrameDecomposition(a=a, J=J, phi0=phi0, wavelet_levels=levels)
