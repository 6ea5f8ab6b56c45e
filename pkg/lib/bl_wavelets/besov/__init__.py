"""
Besov space norms: the wavelet sequence norm, the B-spline localised norm, and a modulus of smoothness oracle.
"""

from .params import BesovParams, CoefficientGrid, Level, lp_norm, lq_combine, sequence_norm, parse_exponent
from .transform import WaveletPairings, wavelet_pairings, analyze, synthesize
from .norms import NormBlocks, LevelTerm, star_blocks, circ_blocks, norm_star, norm_circ, level_decay_slope
from .norms import EquivalenceBounds, EquivalenceReport, equivalence_bounds, equivalence_report
from .modulus import DyadicGrid, modulus_norm, modulus_of_smoothness, lp_function_norm, finite_difference
from .samples import interpolate_samples
