"""Debug: is the default two-station instance genuinely infeasible? (dev only)"""
import numpy as np
import isacprec as ip
from isacprec.problem import check_feasible

cfg = ip.ScenarioConfig(seed=3)
ch = ip.generate_channels(cfg)
th = ip.Thresholds.from_db(10.0, 10.0, n_users=cfg.n_users)
prob = ip.build_problem(ch, th, cfg, mode="tpc")
N, K = cfg.n_antennas, cfg.n_users

# Try an explicit design: per station, ZF directions for users against
# (co-users, foreign users, partner bearing, own clutter angles), plus pour
# power into user blocks; scale up until SINR rows pass or give up.
def zf_direction(target, null_rows):
    A = np.stack(null_rows) if null_rows else np.zeros((0, N), dtype=complex)
    # project target onto null space of A
    if A.shape[0]:
        Q, _ = np.linalg.qr(A.conj().T, mode="reduced")
        proj = target - Q @ (Q.conj().T @ target)
    else:
        proj = target.copy()
    n = np.linalg.norm(proj)
    return proj / n if n > 1e-9 else None

blocks = np.zeros((2, K, N, N), dtype=complex)
for b in range(2):
    other = 1 - b
    for i in range(K):
        nulls = [ch.h[b][j] for j in range(K) if j != i]           # co-users
        nulls += [ch.cross_h[other][j] for j in range(K)]          # partner's users hear us via cross_h[other]
        nulls += [ch.cross_los[other]]                             # partner radar hears us
        nulls += list(ch.radar_paths[b][1:])                       # own clutter
        d = zf_direction(ch.h[b][i].conj(), nulls)
        if d is None:
            print("no ZF direction", b, i)
            continue
        blocks[b, i] = np.outer(d, d.conj())

for p in [1e-12, 1e-10, 1e-8, 1e-6]:
    cov = ip.CovarianceSet(blocks * p)
    rep = check_feasible(cov, prob, t=2 * p * K)
    bad = [(l, s) for l, s in zip(rep.labels, rep.slacks) if s < 0]
    print(f"p={p:.0e}: worst={rep.worst_violation:.3e} nviol={len(bad)}",
          bad[:4])

# which rows stay violated as p grows? print slack/p to see homogeneous part
cov = ip.CovarianceSet(blocks * 1.0)
rep = check_feasible(cov, prob, t=2.0 * K)
print("\nhomogeneous slacks (p=1):")
for l, s in zip(rep.labels, rep.slacks):
    if "radar" in l or s < 0:
        print(f"  {l}: {s:.4e}")
