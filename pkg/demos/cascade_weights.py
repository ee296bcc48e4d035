"""
Where the 4- and 8-periodic contributions switch on
===================================================

The exponential weights are tied to cycle multipliers: a pole where the
multiplier vanishes, a sign change of the real part where it reaches -1.
"""

import numpy as np

from translogistic import classify_region, profile_f4, profile_f8

grid = np.linspace(0.01, 0.6, 60)
p4 = profile_f4(grid)
print("4-periodic weight: pole %.15f, sign change %.15f" % (p4.poles[0], p4.sign_changes[0]))
print("   compare sqrt(5) - 2 = %.15f, sqrt(6) - 2 = %.15f" % (np.sqrt(5) - 2, np.sqrt(6) - 2))

for e in (0.1, 0.3, 0.5):
    print("   eps = %.1f  f = %s  region %s" % (e, np.round(profile_f4([e]).f_values[0], 4),
                                             classify_region(p4, e).label))

# the 8-periodic weight needs the 4-cycle, followed numerically in eps
p8 = profile_f8(np.linspace(0.451, 0.6, 50))
print("8-periodic weight: pole %.13f, sign change %.13f" % (p8.poles[0], p8.sign_changes[0]))
labels = [classify_region(p8, e).label for e in p8.eps_grid]
print("regions along the grid:", "".join(s[1] for s in labels))
