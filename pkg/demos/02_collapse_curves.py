"""Singularity and apparent-horizon curves near the centre.

The exact curves are compared with their leading series; the gaps shrink
faster than the offsets themselves.
"""

import numpy as np

from szekeres import collapse_curves, model

mdl = model(2, [1.0, -0.3])
curves = collapse_curves(mdl, np.geomspace(1e-4, 1e-1, 7))
for r, ts, tss, ta in zip(curves.r, curves.t_s_exact, curves.t_s_series, curves.t_ah_exact):
    print(f"r={r:.1e}  t_s={ts:.12f}  series gap={ts - tss:+.2e}  t_s - t_ah={ts - ta:.2e}")
