"""Debug 5: landscape after interference-default retune (dev only)."""
import time
import numpy as np
import isacprec as ip

def probe(zr, zc, seeds, mode="tpc", **cfg_kw):
    out = []
    for seed in seeds:
        cfg = ip.ScenarioConfig(seed=seed, **cfg_kw)
        ch = ip.generate_channels(cfg)
        th = ip.Thresholds.from_db(zr, zc, n_users=cfg.n_users)
        prob = ip.build_problem(ch, th, cfg, mode=mode)
        sol = ip.solve(prob)
        out.append((sol.status, sol.iterations, sol.t_star))
    return out

t0 = time.perf_counter()
grid = [0.0, 10.0, 20.0, 30.0]
print("--- tpc, table-scale (K=5, N=10), 5 seeds")
for zr in grid:
    cells = []
    for zc in grid:
        res = probe(zr, zc, range(5))
        n_opt = sum(s == "optimal" for s, _, _ in res)
        n_inf = sum(s == "infeasible" for s, _, _ in res)
        n_max = sum(s == "max_iterations" for s, _, _ in res)
        cells.append(f"zc={zc:>2.0f}: {n_opt}o/{n_inf}i/{n_max}m")
    print(f" zr={zr:>2.0f} | " + "  ".join(cells))

print("--- stress points")
for kw, label in [
    (dict(n_users=5, n_antennas=6, stream_len=50), "K=5 N=6 @(10,10)"),
    (dict(n_users=4, n_antennas=6, stream_len=50), "K=4 N=6 @(10,10)"),
]:
    res = probe(10.0, 10.0, range(5), **kw)
    print(label, [(s[:3], it) for s, it, _ in res])
res = probe(30.0, 10.0, range(5))
print("K=5 N=10 @(30,10)", [(s[:3], it) for s, it, _ in res])
res = probe(30.0, 10.0, range(5), mode="ppc")
print("K=5 N=10 @(30,10) ppc", [(s[:3], it) for s, it, _ in res])
print(f"total {time.perf_counter()-t0:.1f}s")
