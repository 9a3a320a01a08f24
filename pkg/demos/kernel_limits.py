"""
Kernel limits
=============

As eta -> 0 the sin-modulated kernel tends to the exponential one, and as
mu -> 0 the rational mix tends to the double exponential. Start from the
closed-form wave of the limiting equation and measure how far each run
drifts from it by T = 10.
"""

import nlwave as nw

values = [10.0, 5.0, 1.0, 0.1]

# on 112 points kappa_max^2 < pi, so the sin kernel stays positive even at eta = 10
rows = nw.kernel_limit_study("sin", values, nw.IBQ_SECH2, nw.Grid(100.0, 112))
for r in rows:
    print(f"eta = {r.param:5.1f}   distance {r.linf_at_T:.4e}")

grid = nw.Grid(100.0, 1024)
speed = nw.calibrate_speed(nw.HBQ_SECH4, grid)
print("calibrated sech^4 speed:", speed, "(closed form", nw.HBQ_SECH4.speed, ")")
rows = nw.kernel_limit_study("rational", values, nw.HBQ_SECH4.with_speed(speed), grid)
for r in rows:
    print(f"mu  = {r.param:5.1f}   distance {r.linf_at_T:.4e}")
