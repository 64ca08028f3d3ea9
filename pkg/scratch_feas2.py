"""Debug 4: isolate which coupling kills feasibility (dev only)."""
import dataclasses
import numpy as np
import isacprec as ip

cfg = ip.ScenarioConfig(seed=3)
K, N = cfg.n_users, cfg.n_antennas
ch = ip.generate_channels(cfg)
th = ip.Thresholds.from_db(None, 10.0, n_users=K)

# 1) single station, no radar, zc=10dB
prob = ip.build_problem(ch, th, cfg, mode="tpc", stations=(0,))
sol = ip.solve(prob)
print("single-station comm-only:", sol.status, "t*=", sol.t_star,
      "t~=", sol.t_star / prob.power_scale, "iters", sol.iterations)

# conditioning of the full direction set (own + mirrored cross)
A = np.stack([ip.make_steering(a, N) for a in cfg.user_angles_deg[0]] +
             [ip.make_steering(-a, N) for a in cfg.user_angles_deg[0]])
sv = np.linalg.svd(A, compute_uv=False)
print("own+mirror steering svals:", np.round(sv, 6))

# 2) two stations, comm only, mirrored cross channels (current model)
prob2 = ip.build_problem(ch, th, cfg, mode="tpc")
sol2 = ip.solve(prob2, ip.SolverOptions(max_iter=150))
print("two-station mirrored:", sol2.status, "t*=", sol2.t_star,
      "iters", sol2.iterations, sol2.diagnostics)

# 3) two stations, comm only, isotropic cross channels
rng = np.random.default_rng(123)
iso = tuple(
    tuple((rng.standard_normal(N) + 1j * rng.standard_normal(N)) / np.sqrt(2)
          for _ in range(K))
    for _ in range(2))
ch3 = dataclasses.replace(ch, cross_h=iso)
prob3 = ip.build_problem(ch3, th, cfg, mode="tpc")
sol3 = ip.solve(prob3, ip.SolverOptions(max_iter=150))
print("two-station isotropic:", sol3.status, "t*=", sol3.t_star,
      "iters", sol3.iterations, sol3.diagnostics)

# 4) wider user sector for reference: 10..40 deg
cfg4 = ip.ScenarioConfig(seed=3, user_angles_deg=list(np.linspace(10, 40, K)))
ch4 = ip.generate_channels(cfg4)
prob4 = ip.build_problem(ch4, th, cfg4, mode="tpc")
sol4 = ip.solve(prob4, ip.SolverOptions(max_iter=150))
print("two-station wide sector:", sol4.status, "t*=", sol4.t_star,
      "iters", sol4.iterations)
