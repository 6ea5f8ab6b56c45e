from .config import WaveletConfig, config
from .enums import Sign, TChoice, SystemKind, SeriesKind, NormKind, OutputFormat, ShiftKind
from .exceptions import BLWaveletError, InvalidParameters, DomainError, ShiftOperatorError, RootFindingError
from .exceptions import VerificationFailed, SerializationError
from .reports import VerificationReport, CheckResult

from .poly_core import DyadicRational, PiecewisePolynomial, dyadic
from .bspline import bspline, high_order_derivative, verify_bspline_properties
from .euler_frobenius import euler_frobenius_data, constants, find_alphas, pn_product, pn_direct
from .wavelets import *  # noqa
from .localisation import build_Phi, build_Lambda, build_Psi, LambdaChoice, ShiftOperatorSpec, verify_localisation
from .besov import *  # noqa
