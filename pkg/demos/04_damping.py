# %% [markdown]
# # Damping: phase-independent decay without a pump
#
# Damping enters as a uniform `-i*gamma` on every site, so without a drive the
# total population decays as `exp(-2 gamma t)` regardless of the phase or of
# any quench. With the pump on, the topological phase keeps accumulating
# population at the ends while the gapless phase saturates.

# %%
import math

import numpy as np

from sshq.dynamics import ProtocolConfig, PumpConfig, RunContext, run_protocol
from sshq.model import LatticeParams, QuenchSchedule
from sshq.observables import site_populations

for gamma in (0.0, 0.0005, 0.0025, 0.005, 0.0075):
    finals = []
    for frac in (0.25, 0.5, 0.75):
        ctx = RunContext(LatticeParams(gamma=gamma), QuenchSchedule.constant(frac * math.pi), PumpConfig.off())
        finals.append(site_populations(run_protocol(ProtocolConfig(ctx, init="both_edges"))).total[-1])
    print(f"gamma={gamma:<7} P_tot(40) by phase: " + "  ".join(f"{v:.6f}" for v in finals)
          + f"   2exp(-2 gamma t)={2 * math.exp(-2 * gamma * 80 * math.pi):.6f}")

# %%
for frac in (0.75, 0.5):
    ctx = RunContext(LatticeParams(gamma=0.0025), QuenchSchedule.constant(frac * math.pi), PumpConfig())
    tot = site_populations(run_protocol(ProtocolConfig(ctx))).total
    print(f"pumped, alpha={frac}pi: P_tot at 10/20/30/40 T_p =", np.round(tot[160::160], 4))
