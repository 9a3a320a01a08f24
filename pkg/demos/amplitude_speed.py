"""
Amplitude against speed
=======================

Sweep the wave speed and record the peak of the solitary profile for the
exponential and sin-modulated kernels.
"""

import numpy as np
import nlwave as nw
from nlwave.sweeps import default_speeds

grid = nw.Grid(100.0, 1024)
base = nw.SolitarySolveConfig(c=1.1, initial_guess=np.exp(-grid.nodes**2))

exp_rows = nw.amplitude_speed(nw.Exponential(), grid, default_speeds(), base, workers=4)
sin_rows = nw.amplitude_speed(nw.SinModulated(eta=1.0), grid, default_speeds(), base, workers=4)

print("   c     exp kernel   1.5(c^2-1)   sin kernel")
for a, b in zip(exp_rows, sin_rows):
    print(f"{a.c:5.2f}   {a.amplitude:10.6f}   {1.5 * (a.c**2 - 1):10.6f}   {b.amplitude:10.6f}")
