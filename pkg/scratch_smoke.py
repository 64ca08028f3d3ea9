"""Dev smoke test of the IPM core (deleted before ship)."""
import numpy as np
import isacprec as ip
from isacprec.problem import ConicProblem, ConstraintRow

# --- scalar toy: min t s.t. tr(T) >= 1, t - tr(T) >= 0  -> t* = 1
one = np.array([[1.0 + 0j]])
rows = (
    ConstraintRow("lb", "comm", {0: one.copy()}, 0.0, 1.0),
    ConstraintRow("tpc", "power", {0: -one.copy()}, 1.0, 0.0),
)
toy = ConicProblem(n_antennas=1, n_users=1, stations=(0,), mode="tpc",
                   interference="own", rows=rows, block_of={(0, 0): 0},
                   power_scale=1.0, assembly_flops=0)
sol = ip.solve(toy, ip.SolverOptions(verbose=True))
print("toy:", sol.status, sol.t_star, "gap", sol.gap, "iters", sol.iterations)
assert sol.status == "optimal" and abs(sol.t_star - 1.0) < 1e-6

# --- single-user oracle: one BS, K=1, N=2, h=[1,1], zeta 10 dB, sigma 1 -> t* = 5
cfg = ip.ScenarioConfig(n_antennas=2, n_users=1, stream_len=2,
                        sigma_c_dbm=30.0, sigma_r_dbm=30.0, seed=1)
ch = ip.generate_channels(cfg)
# override user channel deterministically: h = [1, 1]
h = list(list(r) for r in ch.h)
import dataclasses
ch = dataclasses.replace(ch, h=((np.array([1.0 + 0j, 1.0 + 0j]),), ch.h[1]))
th = ip.Thresholds.from_db(None, 10.0, n_users=1)
prob = ip.build_problem(ch, th, cfg, mode="tpc", stations=(0,))
sol = ip.solve(prob, ip.SolverOptions(verbose=True))
print("oracle:", sol.status, sol.t_star, "expect 5.0; gap", sol.gap, "iters", sol.iterations)

# --- infeasible two-user contradiction: N=1, zeta = 0 dB
cfg2 = ip.ScenarioConfig(n_antennas=1, n_users=2, stream_len=2,
                         sigma_c_dbm=30.0, sigma_r_dbm=30.0, seed=2)
ch2 = ip.generate_channels(cfg2)
ch2 = dataclasses.replace(
    ch2, h=((np.array([1.0 + 0j]), np.array([1.0 + 0j])), ch2.h[1]))
th2 = ip.Thresholds.from_db(None, 0.0, n_users=2)
prob2 = ip.build_problem(ch2, th2, cfg2, mode="tpc", stations=(0,))
sol2 = ip.solve(prob2, ip.SolverOptions(verbose=True))
print("contradiction:", sol2.status, "iters", sol2.iterations)
if sol2.infeasibility:
    c = sol2.infeasibility
    print("  farkas", c.farkas_value, "cone", c.cone_residual, "tco", c.t_coeff_residual)
