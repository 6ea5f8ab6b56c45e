"""
Scaling functions and wavelets built as truncated series of B-spline translates.
"""

from .spec import WaveletSpec, iter_specs
from .series import TranslateSeries, series_to_polynomial, window_tail_mass, refine_series
from .factory import phi_series, psi_series, wavelet_system, inner_vector, truncation_length, validate_epsilon
from .verification import GramMatrix, gram_matrix, gram_report, vanishing_moments, moments_report
from .verification import DecayCheck, decay_check, smoothness_check
