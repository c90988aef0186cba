"""
One module per cooperation strategy. Every module exposes ``user1_terms``,
the two arguments of the rate minimum for User1 (relay decoding term and
destination term, in bits, before the one-half factor), plus the flags
``NEEDS_ALLOCATION``, ``NEEDS_ORDERING`` and ``THROUGHPUT_FACTOR``.
User2 is obtained by relabeling, see :mod:`coopnc.rates`.
"""
import math

import numpy as np

LN2 = math.log(2.0)


def log2_1p(x):
    """log2(1 + x), computed as a scaled natural log."""
    return np.log1p(x) / LN2
