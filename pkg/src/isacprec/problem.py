"""Assembly of the min-power precoding problem as a linear-conic program.

The relaxed design problem is: minimize the power cap t subject to one
echo-SINR row per station, one SINR row per served user, and either trace
(TPC) or per-antenna (PPC) power rows, over Hermitian PSD per-user
covariance blocks. Every constraint is a linear trace inequality

    sum_m tr(A_m T_m) + c * t >= d

with Hermitian data matrices, so the rank-1 requirement on each block is
the only thing dropped relative to the exact design problem.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .scenario import ChannelSet, ScenarioConfig, db_to_linear
from .interference import CovarianceSet

MODES = ("tpc", "ppc")
INTERFERENCE_MODES = ("own", "literal")


def _as_station_array(value, n_stations: int, per_user: int | None = None):
    """Broadcast a scalar / flat list threshold spec to per-station arrays."""
    if per_user is None:
        arr = np.asarray(value, dtype=float)
        if arr.ndim == 0:
            arr = np.full(n_stations, float(arr))
        if arr.shape != (n_stations,):
            raise ValueError(f"expected {n_stations} per-station values, got shape {arr.shape}")
        return arr
    arr = np.asarray(value, dtype=float)
    if arr.ndim == 0:
        arr = np.full((n_stations, per_user), float(arr))
    elif arr.ndim == 1:
        if arr.shape[0] != per_user:
            raise ValueError(f"expected {per_user} per-user values, got {arr.shape[0]}")
        arr = np.tile(arr, (n_stations, 1))
    if arr.shape != (n_stations, per_user):
        raise ValueError(f"expected ({n_stations}, {per_user}) thresholds, got {arr.shape}")
    return arr


@dataclass(frozen=True, eq=False)
class Thresholds:
    """Linear SINR thresholds; zeta_r None disables the echo rows entirely."""

    zeta_r: np.ndarray | None   # (n_stations,) linear, or None
    zeta_c: np.ndarray          # (n_stations, K) linear

    def __post_init__(self):
        if self.zeta_r is not None:
            zr = np.asarray(self.zeta_r, dtype=float)
            if np.any(~np.isfinite(zr)) or np.any(zr < 0):
                raise ValueError("radar thresholds must be finite and nonnegative")
            object.__setattr__(self, "zeta_r", zr)
        zc = np.asarray(self.zeta_c, dtype=float)
        if np.any(~np.isfinite(zc)) or np.any(zc < 0):
            raise ValueError("communication thresholds must be finite and nonnegative")
        object.__setattr__(self, "zeta_c", zc)

    @classmethod
    def from_db(cls, zeta_r_db, zeta_c_db, n_users: int, n_stations: int = 2) -> "Thresholds":
        """Thresholds from dB values; zeta_r_db None drops the echo constraint."""
        zr = None
        if zeta_r_db is not None:
            zr = np.vectorize(db_to_linear)(_as_station_array(zeta_r_db, n_stations))
        zc = np.vectorize(db_to_linear)(_as_station_array(zeta_c_db, n_stations, n_users))
        return cls(zeta_r=zr, zeta_c=zc)

    @classmethod
    def from_linear(cls, zeta_r, zeta_c, n_users: int, n_stations: int = 2) -> "Thresholds":
        zr = None if zeta_r is None else _as_station_array(zeta_r, n_stations)
        return cls(zeta_r=zr, zeta_c=_as_station_array(zeta_c, n_stations, n_users))


@dataclass(frozen=True, eq=False)
class ConstraintRow:
    """One linear trace inequality  sum_m tr(mats[m] T_m) + t_coeff*t >= rhs."""

    label: str
    kind: str                   # "radar" | "comm" | "power" | "cap"
    mats: dict                  # block index -> Hermitian (N, N) complex array
    t_coeff: float
    rhs: float

    def evaluate(self, blocks: np.ndarray, t: float) -> float:
        """Left-hand side at the given blocks (flat (n_blocks, N, N)) and t."""
        lhs = self.t_coeff * t
        for m, a in self.mats.items():
            lhs += float(np.real(np.einsum("ij,ji->", a, blocks[m])))
        return lhs

    def data_norm(self) -> float:
        sq = self.t_coeff ** 2
        for a in self.mats.values():
            sq += float(np.sum(np.abs(a) ** 2))
        return math.sqrt(sq)


class _FlopCounter:
    """Counts real multiply/adds spent assembling constraint data.

    Convention: complex N x N outer product = 6 N^2 flops, scaling a
    complex matrix by a real scalar = 2 N^2, adding two complex matrices
    = 2 N^2. Pure placement (copies, diagonal writes) is free.
    """

    def __init__(self, n: int):
        self.n2 = n * n
        self.total = 0

    def outer(self, row: np.ndarray) -> np.ndarray:
        self.total += 6 * self.n2
        return np.outer(row.conj(), row)

    def scale(self, c: float, mat: np.ndarray) -> np.ndarray:
        self.total += 2 * self.n2
        return c * mat

    def add(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        self.total += 2 * self.n2
        return a + b


@dataclass(frozen=True, eq=False)
class ConicProblem:
    """Immutable conic program over Hermitian PSD blocks plus the scalar cap t."""

    n_antennas: int
    n_users: int
    stations: tuple
    mode: str
    interference: str
    rows: tuple                 # of ConstraintRow
    block_of: dict              # (station, user) -> block index
    power_scale: float          # typical rhs magnitude, used by solver presolve
    assembly_flops: int
    fixed_cap_w: float | None = None

    @property
    def n_blocks(self) -> int:
        return len(self.block_of)

    def block_station_user(self, m: int):
        for key, idx in self.block_of.items():
            if idx == m:
                return key
        raise KeyError(m)

    def covariance_from_blocks(self, blocks: np.ndarray) -> CovarianceSet:
        """Reshape flat solver blocks into a per-station CovarianceSet."""
        k = self.n_users
        n = self.n_antennas
        out = np.zeros((len(self.stations), k, n, n), dtype=complex)
        for (b, i), m in self.block_of.items():
            out[self.stations.index(b), i] = blocks[m]
        return CovarianceSet(out)

    def flat_blocks(self, cov: CovarianceSet) -> np.ndarray:
        blocks = np.zeros((self.n_blocks, self.n_antennas, self.n_antennas), dtype=complex)
        for (b, i), m in self.block_of.items():
            blocks[m] = cov.blocks[self.stations.index(b), i]
        return blocks

    def to_debug_json(self, path=None) -> str:
        """Full dump (row-major re/im pairs) for cross-implementation diffing."""
        doc = {
            "n_antennas": self.n_antennas,
            "n_users": self.n_users,
            "stations": list(self.stations),
            "mode": self.mode,
            "interference": self.interference,
            "blocks": [{"station": b, "user": i, "index": m}
                       for (b, i), m in sorted(self.block_of.items(), key=lambda kv: kv[1])],
            "rows": [
                {
                    "label": r.label,
                    "kind": r.kind,
                    "t_coeff": r.t_coeff,
                    "rhs": r.rhs,
                    "mats": {
                        str(m): [[float(np.real(x)), float(np.imag(x))] for x in a.ravel()]
                        for m, a in sorted(r.mats.items())
                    },
                }
                for r in self.rows
            ],
        }
        text = json.dumps(doc, indent=2)
        if path is not None:
            with open(path, "w") as fh:
                fh.write(text + "\n")
        return text


def build_problem(ch: ChannelSet, th: Thresholds, cfg: ScenarioConfig, mode: str = "tpc",
                  interference: str = "own", stations: tuple = (0, 1),
                  fixed_cap_w: float | None = None) -> ConicProblem:
    """Assemble the relaxed design problem for the given stations.

    stations=(0, 1) builds the symmetric two-station problem (each station
    carries its users' rows and one echo row); stations=(0,) builds the
    single-station problem with no cross terms, which is the published
    asymmetric form. fixed_cap_w adds a cap row t <= fixed_cap_w so that
    feasibility at a fixed budget can be tested with the same machinery.
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    if interference not in INTERFERENCE_MODES:
        raise ValueError(f"interference must be one of {INTERFERENCE_MODES}")
    stations = tuple(stations)
    if not stations or any(b not in (0, 1) for b in stations):
        raise ValueError("stations must be a nonempty subset of (0, 1)")

    n = cfg.n_antennas
    k = cfg.n_users
    if ch.n_antennas != n or ch.n_users != k:
        raise ValueError("channel set inconsistent with scenario config")
    if th.zeta_c.shape[1] != k:
        raise ValueError("threshold user count inconsistent with scenario config")

    sigma_c2 = cfg.sigma_c2_w
    sigma_r2 = cfg.sigma_r2_w
    fc = _FlopCounter(n)

    block_of = {}
    for b in stations:
        for i in range(k):
            block_of[(b, i)] = len(block_of)

    rows = []

    for b in stations:
        others = [s for s in stations if s != b]

        # echo SINR row: LOS return minus zeta_R * (clutter + partner LOS echo)
        if th.zeta_r is not None:
            zr = float(th.zeta_r[b])
            los = fc.outer(ch.radar_paths[b][0])
            clutter = None
            for g in ch.radar_paths[b][1:]:
                o = fc.outer(g)
                clutter = o if clutter is None else fc.add(clutter, o)
            own = los
            if clutter is not None and zr > 0:
                own = fc.add(los, fc.scale(-zr, clutter))
            mats = {block_of[(b, i)]: own for i in range(k)}
            if others and zr > 0:
                cross = fc.scale(-zr, fc.outer(ch.cross_los[b]))
                for i in range(k):
                    mats[block_of[(others[0], i)]] = cross
            rows.append(ConstraintRow(
                label=f"radar[{b}]", kind="radar", mats=mats,
                t_coeff=0.0, rhs=zr * sigma_r2))

        # per-user SINR rows
        for i in range(k):
            zc = float(th.zeta_c[b][i])
            own = fc.outer(ch.h[b][i])
            mats = {block_of[(b, i)]: own}
            if zc > 0:
                if interference == "own":
                    interf = fc.scale(-zc, own)
                    for j in range(k):
                        if j != i:
                            mats[block_of[(b, j)]] = interf
                else:
                    for j in range(k):
                        if j != i:
                            mats[block_of[(b, j)]] = fc.scale(-zc, fc.outer(ch.h[b][j]))
                if others:
                    cross = fc.scale(-zc, fc.outer(ch.cross_h[b][i]))
                    for j in range(k):
                        mats[block_of[(others[0], j)]] = cross
            rows.append(ConstraintRow(
                label=f"comm[{b},{i}]", kind="comm", mats=mats,
                t_coeff=0.0, rhs=zc * sigma_c2))

        # power rows: t - tr(R_b) >= 0 (TPC) or t/N - (R_b)_nn >= 0 (PPC)
        if mode == "tpc":
            neg_eye = -np.eye(n, dtype=complex)
            rows.append(ConstraintRow(
                label=f"tpc[{b}]", kind="power",
                mats={block_of[(b, i)]: neg_eye for i in range(k)},
                t_coeff=1.0, rhs=0.0))
        else:
            for a in range(n):
                e = np.zeros((n, n), dtype=complex)
                e[a, a] = -1.0
                rows.append(ConstraintRow(
                    label=f"ppc[{b},{a}]", kind="power",
                    mats={block_of[(b, i)]: e for i in range(k)},
                    t_coeff=1.0 / n, rhs=0.0))

    if fixed_cap_w is not None:
        if fixed_cap_w <= 0:
            raise ValueError("fixed_cap_w must be positive")
        rows.append(ConstraintRow(
            label="cap", kind="cap", mats={}, t_coeff=-1.0, rhs=-float(fixed_cap_w)))

    power_scale = max((r.rhs for r in rows if r.rhs > 0), default=1.0)

    return ConicProblem(
        n_antennas=n, n_users=k, stations=stations, mode=mode,
        interference=interference, rows=tuple(rows), block_of=block_of,
        power_scale=power_scale, assembly_flops=fc.total, fixed_cap_w=fixed_cap_w)


@dataclass(frozen=True)
class FeasibilityReport:
    """Per-row slack report for one candidate covariance design."""

    feasible: bool
    worst_violation: float          # raw constraint units (watts-scale)
    worst_normalized: float         # violation divided by the row data norm
    slacks: tuple                   # raw lhs - rhs per row
    labels: tuple
    min_eigenvalue: float
    implied_t: float                # smallest t satisfying every power row


def check_feasible(cov: CovarianceSet, prob: ConicProblem, tol: float = 1e-7,
                   t: float | None = None) -> FeasibilityReport:
    """Evaluate every row of the problem at the given covariances.

    When t is omitted, the smallest cap consistent with the power rows is
    used, so power rows cannot themselves violate; SINR rows report their
    raw and row-normalized violations. PSD-ness is checked through the
    minimum eigenvalue across blocks.
    """
    blocks = prob.flat_blocks(cov)
    sym = 0.5 * (blocks + np.conj(np.swapaxes(blocks, -1, -2)))
    min_eig = float(np.linalg.eigvalsh(sym).min())

    implied_t = 0.0
    for row in prob.rows:
        if row.t_coeff > 0:
            base = row.evaluate(blocks, 0.0)
            implied_t = max(implied_t, (row.rhs - base) / row.t_coeff)
    t_eval = implied_t if t is None else float(t)

    slacks, labels = [], []
    worst = 0.0
    worst_norm = 0.0
    for row in prob.rows:
        slack = row.evaluate(blocks, t_eval) - row.rhs
        slacks.append(slack)
        labels.append(row.label)
        if slack < -worst:
            worst = -slack
        norm_violation = max(0.0, -slack) / max(row.data_norm(), 1e-300)
        worst_norm = max(worst_norm, norm_violation)

    feasible = worst_norm <= tol and worst <= max(tol, tol * prob.power_scale) \
        and min_eig >= -tol
    return FeasibilityReport(
        feasible=bool(feasible),
        worst_violation=worst,
        worst_normalized=worst_norm,
        slacks=tuple(slacks),
        labels=tuple(labels),
        min_eigenvalue=min_eig,
        implied_t=t_eval,
    )
