"""Analytic SINR, rate and detection-probability metrics on transmit covariances.

All quantities are evaluated from per-user covariances T = x x^H; sampled
waveforms are never needed because every power term is a trace form
tr(A T). The detection model is the nonfluctuating point-target CFAR
probability P_d = Q1(sqrt(2*sinr), sqrt(-2 ln P_f)).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, asdict

import numpy as np

from .scenario import ChannelSet, ScenarioConfig

# default false-alarm probability for the CFAR detector
DEFAULT_PFA = 1e-7

HERM_TOL = 1e-9


def _quad_form(row: np.ndarray, mat: np.ndarray) -> float:
    """tr(row^H row @ mat) = row @ mat @ row^H for a row channel vector."""
    return float(np.real(row @ mat @ row.conj()))


@dataclass(frozen=True, eq=False)
class CovarianceSet:
    """Per-user Hermitian transmit covariances, one (K, N, N) stack per station."""

    blocks: np.ndarray  # complex, shape (n_stations, K, N, N)

    def __post_init__(self):
        b = np.asarray(self.blocks, dtype=complex)
        if b.ndim != 4 or b.shape[2] != b.shape[3]:
            raise ValueError(f"expected (stations, users, N, N) blocks, got {b.shape}")
        object.__setattr__(self, "blocks", b)

    @property
    def n_stations(self) -> int:
        return self.blocks.shape[0]

    @property
    def n_users(self) -> int:
        return self.blocks.shape[1]

    @property
    def n_antennas(self) -> int:
        return self.blocks.shape[2]

    def station_sum(self, b: int) -> np.ndarray:
        """Total transmit covariance R_b of one station."""
        return self.blocks[b].sum(axis=0)

    def total_power(self, b: int) -> float:
        return float(np.real(np.trace(self.station_sum(b))))

    def validate(self, tol: float = HERM_TOL) -> None:
        """Raise if any block is non-Hermitian, indefinite or non-finite."""
        if not np.all(np.isfinite(self.blocks.view(float))):
            raise ValueError("covariance blocks contain non-finite entries")
        herm_err = np.abs(self.blocks - np.conj(np.swapaxes(self.blocks, -1, -2))).max()
        if herm_err > tol:
            raise ValueError(f"covariance blocks not Hermitian: deviation {herm_err:.3e}")
        flat = self.blocks.reshape(-1, self.n_antennas, self.n_antennas)
        min_eig = float(np.linalg.eigvalsh(0.5 * (flat + np.conj(np.swapaxes(flat, -1, -2)))).min())
        if min_eig < -tol:
            raise ValueError(f"covariance block indefinite: min eigenvalue {min_eig:.3e}")


def comm_sinr(i: int, b: int, cov: CovarianceSet, ch: ChannelSet, sigma_c2: float,
              literal_mode: bool = False) -> float:
    """SINR of user i served by station b.

    Intra-cell interference is measured through user i's own channel by
    default. literal_mode instead sums |h_j x_j|^2 over the co-scheduled
    users' own channels (the published constraint form); both are exposed
    because they differ and the intended one is ambiguous.
    """
    if sigma_c2 <= 0:
        raise ValueError("sigma_c2 must be positive")
    h_i = ch.h[b][i]
    if h_i.shape[0] != cov.n_antennas:
        raise ValueError("channel/covariance dimension mismatch")
    k = cov.n_users

    signal = _quad_form(h_i, cov.blocks[b, i])
    intra = 0.0
    for j in range(k):
        if j == i:
            continue
        row = ch.h[b][j] if literal_mode else h_i
        intra += _quad_form(row, cov.blocks[b, j])
    cross = 0.0
    if cov.n_stations > 1:
        cross = _quad_form(ch.cross_h[b][i], cov.station_sum(1 - b))
    return signal / (cross + intra + sigma_c2)


def radar_sinr(b: int, cov: CovarianceSet, ch: ChannelSet, sigma_r2: float,
               cross_los: bool = False) -> float:
    """Echo SINR at station b: LOS return over partner echo + clutter + noise.

    The partner-echo term uses the full rank-1 matrix by default (the
    metric form); cross_los=True uses the LOS row vector instead, matching
    the constraint form emitted by the problem builder.
    """
    if sigma_r2 <= 0:
        raise ValueError("sigma_r2 must be positive")
    paths = ch.radar_paths[b]
    if paths[0].shape[0] != cov.n_antennas:
        raise ValueError("channel/covariance dimension mismatch")

    r_own = cov.station_sum(b)
    signal = _quad_form(paths[0], r_own)
    clutter = sum(_quad_form(g, r_own) for g in paths[1:])
    cross = 0.0
    if cov.n_stations > 1:
        r_other = cov.station_sum(1 - b)
        if cross_los:
            cross = _quad_form(ch.cross_los[b], r_other)
        else:
            g = ch.cross_echo[b]
            cross = float(np.real(np.trace(g.conj().T @ g @ r_other)))
    return signal / (cross + clutter + sigma_r2)


def avg_rate(gammas) -> float:
    """Average rate over users, sum(log2(1+gamma))/K, in bit/s/Hz."""
    g = np.asarray(gammas, dtype=float)
    if np.any(g < 0):
        raise ValueError("SINRs must be nonnegative")
    return float(np.mean(np.log2(1.0 + g)))


def marcum_q1(a: float, b: float) -> float:
    """First-order Marcum Q function Q1(a, b), absolute error below 1e-12.

    Computed as the survival function of a noncentral chi-square with two
    degrees of freedom: with u = a^2/2 and v = b^2/2,

        1 - Q1 = sum_{j>=1} e^-v v^j/j! * Pr[Poisson(u) <= j-1].

    The v-series has modest support for any realistic false-alarm rate, so
    the sum is short; the Poisson CDF factors are accumulated in log space
    which keeps the large-a regime (where Q1 -> 1) exact instead of
    overflowing a naive Bessel series.
    """
    if a < 0 or b < 0:
        raise ValueError("marcum_q1 arguments must be nonnegative")
    if b == 0.0:
        return 1.0
    v = 0.5 * b * b
    if a == 0.0:
        return math.exp(-v)
    u = 0.5 * a * a

    # Poisson(u) CDF at m, extended incrementally; terms below exp(-745)
    # underflow to an exact-enough zero.
    log_u = math.log(u)

    def pois_u_term(kk: int) -> float:
        lg = -u + kk * log_u - math.lgamma(kk + 1)
        return math.exp(lg) if lg > -745.0 else 0.0

    miss = 0.0           # 1 - Q1
    t_j = math.exp(-v)   # Poisson(v) pmf at j, starting at j=0
    mass = t_j           # accumulated Poisson(v) mass
    cdf_u = pois_u_term(0)   # Pr[Poisson(u) <= j-1] for j=1
    j = 1
    while True:
        t_j *= v / j
        miss += t_j * cdf_u
        mass += t_j
        # remaining contribution is at most the remaining Poisson(v) mass
        if 1.0 - mass < 1e-17 and j > v:
            break
        if j > 100000:
            break
        cdf_u += pois_u_term(j)
        j += 1
    return min(1.0, max(0.0, 1.0 - miss))


def detection_probability(gamma_r: float, p_f: float = DEFAULT_PFA) -> float:
    """CFAR detection probability for a nonfluctuating point target.

    P_d = Q1(sqrt(2*gamma_r), sqrt(-2 ln p_f)); equals p_f at zero SINR and
    is strictly increasing in gamma_r, strictly decreasing in p_f.
    """
    if gamma_r < 0:
        raise ValueError("gamma_r must be nonnegative")
    if not (0.0 < p_f < 1.0):
        raise ValueError("p_f must lie in (0, 1)")
    return marcum_q1(math.sqrt(2.0 * gamma_r), math.sqrt(-2.0 * math.log(p_f)))


@dataclass(frozen=True)
class MetricsReport:
    """Achieved metrics of one covariance design."""

    comm_sinr: tuple            # per station: tuple of K linear SINRs
    radar_sinr: tuple           # per station, linear (metric form)
    avg_rate: float             # bit/s/Hz over all served users
    detect_prob: tuple          # per station
    total_power: tuple          # per station, watts
    per_antenna_power: tuple    # per station: tuple of N watts

    def __post_init__(self):
        for station in self.comm_sinr:
            if any(g < 0 for g in station):
                raise ValueError("negative communication SINR")
        if any(g < 0 for g in self.radar_sinr):
            raise ValueError("negative radar SINR")
        if any(not (0.0 <= p <= 1.0) for p in self.detect_prob):
            raise ValueError("detection probability outside [0, 1]")
        if self.avg_rate < 0:
            raise ValueError("negative average rate")

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_dict(cls, d: dict) -> "MetricsReport":
        return cls(
            comm_sinr=tuple(tuple(s) for s in d["comm_sinr"]),
            radar_sinr=tuple(d["radar_sinr"]),
            avg_rate=float(d["avg_rate"]),
            detect_prob=tuple(d["detect_prob"]),
            total_power=tuple(d["total_power"]),
            per_antenna_power=tuple(tuple(s) for s in d["per_antenna_power"]),
        )


def compute_metrics(cov: CovarianceSet, ch: ChannelSet, cfg: ScenarioConfig,
                    p_f: float = DEFAULT_PFA, literal_mode: bool = False) -> MetricsReport:
    """Evaluate every report metric on one covariance design."""
    sigma_c2 = cfg.sigma_c2_w
    sigma_r2 = cfg.sigma_r2_w
    n_stations = cov.n_stations
    k = cov.n_users

    comm = tuple(
        tuple(comm_sinr(i, b, cov, ch, sigma_c2, literal_mode) for i in range(k))
        for b in range(n_stations))
    radar = tuple(radar_sinr(b, cov, ch, sigma_r2) for b in range(n_stations))
    all_gammas = [g for station in comm for g in station]
    return MetricsReport(
        comm_sinr=comm,
        radar_sinr=radar,
        avg_rate=avg_rate(all_gammas),
        detect_prob=tuple(detection_probability(g, p_f) for g in radar),
        total_power=tuple(cov.total_power(b) for b in range(n_stations)),
        per_antenna_power=tuple(
            tuple(np.real(np.diag(cov.station_sum(b)))) for b in range(n_stations)),
    )
