"""
Slow passage through the first period doubling
==============================================

With lambda = 3 + eps n the orbit lingers near the unstable fixed point and
then jumps onto the 2-cycle.  The transasymptotic form follows it across.
"""

import numpy as np

from translogistic import DynamicMapConfig, find_z0, iterate_dynamic, landmarks, onset_index, r_app_dynamic

eps = 1e-3
n = np.arange(301)
exact = iterate_dynamic(DynamicMapConfig(eps), 300).values
approx = r_app_dynamic(eps * n, eps)
err = np.abs(exact - approx)

lm = landmarks(eps)
print("K = %.4f, landmarks n1, n2, n3 = %d, %d, %d" % (lm.K, lm.n1, lm.n2, lm.n3))
for k in lm.as_tuple():
    print("   n = %3d  y = %.8f  approx = %.8f  error = %.2e" % (k, exact[k], approx[k], err[k]))
print("largest error %.2e at n = %d" % (err.max(), err.argmax()))

# 4-periodic behaviour appears once the real part of its weight turns negative
z0 = find_z0()
print("z0 = %.12f; onset for eps = 0.012^2 at n = %d" % (z0, onset_index(0.012**2, z0)))
