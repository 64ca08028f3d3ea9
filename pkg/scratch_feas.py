"""Debug 3: feasibility landscape over seeds and thresholds (dev only)."""
import time
import numpy as np
import isacprec as ip

grid = [0.0, 10.0, 20.0, 30.0]
t0 = time.perf_counter()
for mode in ("tpc", "ppc"):
    print(f"--- {mode}")
    for zr in grid:
        line = []
        for zc in grid:
            n_ok = 0
            iters = []
            for seed in range(5):
                cfg = ip.ScenarioConfig(seed=seed)
                ch = ip.generate_channels(cfg)
                th = ip.Thresholds.from_db(zr, zc, n_users=cfg.n_users)
                prob = ip.build_problem(ch, th, cfg, mode=mode)
                sol = ip.solve(prob)
                if sol.status == "optimal":
                    n_ok += 1
                iters.append((sol.status[:3], sol.iterations))
            line.append(f"zc={zc:>4}: {n_ok}/5")
        print(f" zr={zr:>4} | " + "  ".join(line))
print(f"total {time.perf_counter()-t0:.1f}s")
