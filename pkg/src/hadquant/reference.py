"""Published worked examples used as regression fixtures.

The intermediate vectors of both 16-point examples are listed in a
different component order from the Sylvester-ordered transform: printed
component ``r`` is Sylvester component ``DISPLAY_ORDER[r]``.  In the first
example the reconstruction is listed in that order too, while the source
block is not; the second example lists its reconstruction in natural order.
"""

from fractions import Fraction

from .quantization import QuantizerBank

DISPLAY_ORDER = (0, 2, 8, 10, 1, 3, 9, 11, 4, 6, 12, 14, 5, 7, 13, 15)

# first example: n = 16, Delta = Gamma = 1000, no offsets
EXAMPLE1_BANK = QuantizerBank.uniform(16, 1000, 1000, 0, 0)
EXAMPLE1_X = (4016, 4000, 4000, 4000, 4000, -4000, 4000, -4000,
              4000, 4000, -4000, -4000, 4000, -4000, -4000, 4000)
EXAMPLE1_T1 = (1001, 1001, 1001, -999, 1001, 1001, 1001, -999,
               1001, 1001, 1001, -999, -999, -999, -999, 1001)
EXAMPLE1_T2 = (1, 1, 1, 0, 1, 1, 1, 0, 1, 1, 1, 0, 0, 0, 0, 1)
EXAMPLE1_T3 = tuple(1000 * v for v in EXAMPLE1_T2)
EXAMPLE1_X_PRIME = (10000, 2000, 2000, -2000, 2000, 2000, 2000, -2000,
                    2000, 2000, 2000, -2000, -2000, -2000, -2000, 2000)
EXAMPLE1_ERR_INF = 5984

# second example: rounding toward zero, Delta = Gamma = 1
RZ_BANK = QuantizerBank.uniform(16, 1, 1, 0, 0)
EXAMPLE2_X = (55, -5, -5, -5, -4096, -5, -5, -4096, -5, -4096, -5, -4, -5, -2, -5, -4)
EXAMPLE2_T1 = tuple(Fraction(v) for v in (
    "-768", "-251.875", "-252.25", "259.375", "259.125", "-252", "-251.625", "-763.25",
    "259.25", "-252.125", "771", "259.625", "259.625", "771", "-252.125", "259.25",
))
EXAMPLE2_T2 = (-768, -251, -252, 259, 259, -252, -251, -763,
               259, -252, 771, 259, 259, 771, -252, 259)
EXAMPLE2_X_PRIME = (55, -5, -5, -5, -4093, -5, -5, -4097, -5, -4093, -9, -5, -5, -1, -5, -5)
EXAMPLE2_X_INF = 4096
EXAMPLE2_X_PRIME_INF = 4097

# bounds for n = 16, Delta = Gamma = 800, delta = -1000, gamma = 1400
OFFSET_BANK = QuantizerBank.uniform(16, 800, 800, -1000, 1400)
OFFSET_ERROR_BOUND = 28800
OFFSET_XMAX = 2048
OFFSET_MAG_VIA_ERROR = 30848
OFFSET_MAG_COUNT = 8800
RZ_XMAX = 4096
RZ_MAG_VIA_ERROR = 4112

# bit-width planning: |x'| <= 1.5 |x|, 16-bit signed inputs
PLANNER_SCALE = Fraction(3, 2)
PLANNER_INPUT_BITS = 16
PLANNER_RANGE = 49152
PLANNER_BITS = 17

# ||H_{2^k}||_{inf,1}
NORM_TABLE = {0: 1, 1: 2, 2: 8, 3: 20, 4: 64, 5: 160}

# mass argument: seven components of 10000 do not fit under 64 * 1000
MASS_XMAX = 1000
MASS_COMPONENT = 10000
MASS_COUNT = 7


def display(values, order=DISPLAY_ORDER):
    """Reorder a Sylvester-ordered vector into the printed layout."""
    return tuple(values[i] for i in order)
