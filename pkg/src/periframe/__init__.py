"""Periodic Parseval wavelet frames with Gaussian masks and sharp time-frequency localization."""

from .fourier import (FourierSeq, GridSignal, csum, csum_complex,
                      derivative_norm_sq, dft, difference_norm_sq,
                      evaluate_grid, fourier_from_dict, fourier_to_dict,
                      grid_to_csv, idft, load_fourier, norm_sq, save_fourier,
                      save_grid_csv)
from .frame import (DEFAULT_EPSILON, FrameParams, MaskSeq, UepReport,
                    WindowCapError, build_scaling_seq, build_wavelet_seq,
                    frame_seq_to_dict, mask_base, mask_period, mask_refine,
                    mask_wavelet, scaling_hat, scaling_hat_normalized,
                    scaling_hat_window, truncation_window, verify_uep,
                    wavelet_hat, wavelet_hat_normalized, wavelet_hat_window)
from .localization import (AsymParams, UcReport, UndefinedUCError,
                           angular_variance, asym_deriv_norm_sq,
                           asym_freq_var, asym_norm_sq, asym_tau,
                           breitenberger_uc, frequency_variance,
                           scaling_ref_hat, trig_moment, uc_report_to_dict,
                           uc_scaling, uc_wavelet, wavelet_ref_hat)
from .thetasum import (ThetaParams, gaussian_shift_sum, poisson_dual_sum,
                       ref_moment_direct, theta_direct, theta_poisson)
from .transform import (FrameDecomposition, LevelCoeffs, ParsevalReport,
                        analyze_level, cascade_defect, decompose,
                        decomposition_from_dict, decomposition_to_dict,
                        parseval_defect, roundtrip_error, synthesize)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
