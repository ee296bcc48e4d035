"""
Approaching the 2-cycle of the static logistic map
==================================================

Iterate y(n+1) = (3 + eps) y(n)(1 - y(n)) from y0 = 2/3 and compare with
the resummed 2-periodic approximation.
"""

import numpy as np

from translogistic import StaticMapConfig, iterate_static, r2_app, residual_2per, solve_sigma0, two_cycle

eps = 0.05
n = np.arange(601)
exact = iterate_static(StaticMapConfig(eps), 600).values
approx = r2_app(eps * n, eps)

# the initial-condition series for the transseries parameter
sigma0 = solve_sigma0(2)
print("sigma0 coefficients:", [str(c) for c in sigma0.coefficients])
print("sigma0(%.2f) = %.10f" % (eps, sigma0(eps)))

err = np.abs(exact - approx)
print("max |y - R2app| over n <= 600: %.3e at n = %d" % (err.max(), err.argmax()))

# the orbit settles on the 2-cycle; so does the approximation
cyc = two_cycle(eps)
print("2-cycle points:", cyc.points)
print("last two exact values:  ", exact[-2:])
print("last two approx values: ", approx[-2:])

# one-step defect of the approximation; it shrinks roughly like eps^3
for e in (0.08, 0.04, 0.02, 0.01):
    print("eps = %.2f  defect = %.3e" % (e, residual_2per(e, 2000)))
