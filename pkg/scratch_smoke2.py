"""Dev smoke test 2: full two-station instances, both modes (deleted before ship)."""
import time
import numpy as np
import isacprec as ip

cfg = ip.ScenarioConfig(seed=3)  # Table-like defaults: N=10, K=5
ch = ip.generate_channels(cfg)
th = ip.Thresholds.from_db(10.0, 10.0, n_users=cfg.n_users)

for mode in ("tpc", "ppc"):
    prob = ip.build_problem(ch, th, cfg, mode=mode)
    print(mode, "rows:", len(prob.rows), "blocks:", prob.n_blocks,
          "flops:", prob.assembly_flops)
    t0 = time.perf_counter()
    sol = ip.solve(prob)
    dt = time.perf_counter() - t0
    print(f"  status={sol.status} t*={sol.t_star:.6e} W gap={sol.gap:.2e} "
          f"iters={sol.iterations} time={dt*1e3:.1f} ms")
    if sol.status == "optimal":
        rep = ip.check_feasible(sol.covariances, prob, t=sol.t_star)
        print(f"  worst violation raw={rep.worst_violation:.2e} "
              f"norm={rep.worst_normalized:.2e} mineig={rep.min_eigenvalue:.2e}")
        cert = ip.dual_certificate(sol, prob)
        print(f"  cert: {cert.certified} relgap={cert.rel_gap:.2e} "
              f"cone={cert.dual_cone_violation:.2e} tslack={cert.t_coeff_slack:.2e}")
        met = ip.compute_metrics(sol.covariances, ch, cfg)
        print(f"  comm sinr min={min(min(s) for s in met.comm_sinr):.3f} "
              f"radar={met.radar_sinr} rate={met.avg_rate:.3f} pd={met.detect_prob}")

# recovery on the TPC solution
prob = ip.build_problem(ch, th, cfg, mode="tpc")
sol = ip.solve(prob)
t0 = time.perf_counter()
pre = ip.recover(sol.covariances, prob, cfg.stream_len, n_samples=20, seed=5)
dt = time.perf_counter() - t0
print(f"recovery: method={pre.method} t={pre.realized_power:.6e} "
      f"ratio={pre.realized_power/sol.t_star:.4f} feas={pre.feasibility.feasible} "
      f"time={dt*1e3:.0f} ms")
wave_cov = np.einsum("nl,ml->nm", pre.waveforms[0], pre.waveforms[0].conj()) / cfg.stream_len
beam_cov = sum(np.outer(pre.beams[0][i], pre.beams[0][i].conj()) for i in range(cfg.n_users))
print("waveform identity err:", np.abs(wave_cov - beam_cov).max())

# scale of single-user with tiny noise (physical -94 dBm)
cfg3 = ip.ScenarioConfig(n_antennas=4, n_users=1, stream_len=4, seed=9)
ch3 = ip.generate_channels(cfg3)
th3 = ip.Thresholds.from_db(None, 10.0, n_users=1)
prob3 = ip.build_problem(ch3, th3, cfg3, mode="tpc", stations=(0,))
sol3 = ip.solve(prob3)
expect = 10.0 * cfg3.sigma_c2_w / np.linalg.norm(ch3.h[0][0]) ** 2
print(f"tiny-noise oracle: {sol3.status} t*={sol3.t_star:.6e} expect={expect:.6e} "
      f"rel err={abs(sol3.t_star-expect)/expect:.2e} iters={sol3.iterations}")
