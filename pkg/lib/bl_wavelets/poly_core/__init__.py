"""
Exact-knot piecewise polynomial algebra and calculus.
"""

from .dyadic import DyadicRational, dyadic, HALF
from .piecewise import PiecewisePolynomial, evaluate, linear_combine, translate_dilate, differentiate, inner_product
from .piecewise import moment, sup_distance, reflect, restrict, taylor_shift, pair_with_translates
