#!/usr/bin/env python

import sys

from bl_wavelets.cli import main


if __name__ == '__main__':
    sys.exit(main())
