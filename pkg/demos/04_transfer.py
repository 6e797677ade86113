# # Perfect state transfer and fractional revival
#
# Starting from the corner (0, 0), the walk with alpha = 1, beta = 2 at N = 7
# lands on the opposite corner (7, 0) at t = pi/2. At t = pi/4 the whole state
# sits on the j = 0 edge, spread over several sites.

import math

import numpy as np

from ohwalk.krawtchouk import build_spectral
from ohwalk.transfer import classify_ratio, detect_fr, detect_pst, find_events, scan_times

N = 7
sd = build_spectral(N, 1.0, 2.0)
print(detect_pst(sd, math.pi / 2).to_dict())
print(detect_fr(sd, (0, 0), math.pi / 4).to_dict())

# # Which ratios alpha/beta give transfer?
#
# Coprime a/b with one even and one odd entry predict PST at pi*b/(2*beta).

for a, b in ((1, 2), (2, 1), (0, 1), (1, 1), (1, 3), (3, 4)):
    rc = classify_ratio(a, b)
    print(f"{a}/{b}: {rc.tag:9s} predicted T = {rc.pst_time}")

# # Scanning a period
#
# A time grid locates the maxima of the corner probability; each is refined
# and certified.

trace = scan_times(sd, (0, 0), math.pi, 2000)
for ev in find_events(sd, (0, 0), trace):
    print(f"{ev.kind:6s} t = {ev.time:.12f} fidelity = {ev.fidelity:.12f}")

# The negative control never gets close.
bad = build_spectral(5, 1.0, 1.0)
print("ratio 1/1, N=5: best corner probability",
      float(np.max(scan_times(bad, (0, 0), 2 * math.pi, 4000).corner)))

# # Figure data
#
# Probabilities along the j = 0 edge over one period, plotted if matplotlib
# is around.

trace = scan_times(sd, (0, 0), math.pi, 400)
try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

if plt is not None:
    fig, ax = plt.subplots()
    ax.plot(trace.times, trace.corner, label="corner (7, 0)")
    ax.plot(trace.times, trace.edge_sum, label="edge j = 0")
    ax.set_xlabel("t")
    ax.legend()
    fig.savefig("transfer.png", dpi=100)
    print("wrote transfer.png")
