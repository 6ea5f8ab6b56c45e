__title__ = 'bl_wavelets'
__description__ = 'Battle-Lemarie spline wavelets: construction, localisation identities, and Besov sequence norms'
__url__ = 'https://github.com/dskrypa/bl_wavelets'
__version__ = '2026.10.17-0'
__author__ = 'Doug Skrypa'
__author_email__ = 'dskrypa@gmail.com'
__copyright__ = 'Copyright 2026 Doug Skrypa'
