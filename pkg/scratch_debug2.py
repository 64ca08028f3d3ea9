"""Debug 2: disable infeasibility detection and watch convergence (dev only)."""
import numpy as np
import isacprec as ip

cfg = ip.ScenarioConfig(seed=3)
ch = ip.generate_channels(cfg)
th = ip.Thresholds.from_db(10.0, 10.0, n_users=cfg.n_users)
prob = ip.build_problem(ch, th, cfg, mode="tpc")

opts = ip.SolverOptions(cert_tol=1e-30, max_iter=150, verbose=True)
sol = ip.solve(prob, opts)
print("status:", sol.status, "t*:", sol.t_star, "iters:", sol.iterations)
print("diag:", sol.diagnostics)
