"""Rank-1 beamformer recovery from relaxed covariances.

Candidates come from the dominant eigenpair or from Gaussian
randomization; either way the truncated directions lose feasibility, so
the per-user powers are re-solved exactly with a small LP (all SINR and
power rows are linear in the powers once directions are fixed). Waveforms
are synthesized from orthogonal symbol rows so the covariance identity
(1/L) X X^H = sum x x^H holds exactly rather than statistically.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import linprog

from .interference import CovarianceSet
from .problem import ConicProblem, FeasibilityReport, check_feasible


def eigen_extract(t_mat: np.ndarray) -> np.ndarray:
    """Dominant-eigenpair beamformer sqrt(lambda_max) * v_max.

    Phase convention: first component with non-negligible magnitude is
    rotated to the positive real axis; a numerically zero matrix yields
    the zero vector. Ties in the spectrum resolve to the lowest eigenvalue
    index among the maxima, which eigh orders deterministically.
    """
    t_mat = np.asarray(t_mat, dtype=complex)
    w, v = np.linalg.eigh(0.5 * (t_mat + t_mat.conj().T))
    top = int(np.argmax(w >= w[-1] * (1.0 - 1e-12))) if w[-1] > 0 else len(w) - 1
    lam = max(float(w[top]), 0.0)
    if lam == 0.0:
        return np.zeros(t_mat.shape[0], dtype=complex)
    vec = v[:, top]
    nz = np.flatnonzero(np.abs(vec) > 1e-12 * np.abs(vec).max())
    phase = vec[nz[0]] / abs(vec[nz[0]])
    return math.sqrt(lam) * (vec / phase)


def dominant_ratio(t_mat: np.ndarray) -> float:
    """Second-to-first eigenvalue ratio, 0 for an exactly rank-1 block."""
    w = np.linalg.eigvalsh(0.5 * (t_mat + np.asarray(t_mat).conj().T))
    if w[-1] <= 0:
        return 0.0
    return float(max(w[-2], 0.0) / w[-1]) if len(w) > 1 else 0.0


def randomize_extract(t_mat: np.ndarray, n_samples: int = 100,
                      seed: int | np.random.Generator = 0) -> np.ndarray:
    """Gaussian-randomization candidates x = T^(1/2) u, u ~ CN(0, I).

    Returns an (n_samples, N) array with E[x x^H] = T; deterministic for a
    fixed seed.
    """
    if n_samples < 1:
        raise ValueError("n_samples must be >= 1")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    t_mat = np.asarray(t_mat, dtype=complex)
    n = t_mat.shape[0]
    w, v = np.linalg.eigh(0.5 * (t_mat + t_mat.conj().T))
    root = v * np.sqrt(np.clip(w, 0.0, None))[None, :]
    u = (rng.standard_normal((n_samples, n)) +
         1j * rng.standard_normal((n_samples, n))) / math.sqrt(2.0)
    return u @ root.T  # row s is root @ u_s, so E[x x^H] = root root^H = T


@dataclass(frozen=True)
class RepairResult:
    powers: np.ndarray      # per block, watts
    t: float                # repaired power cap
    feasible: bool
    lp_status: int


def repair_power(dirs: np.ndarray, prob: ConicProblem) -> RepairResult:
    """Re-solve the per-user powers for fixed unit-norm beam directions.

    With directions d_m fixed, every row becomes
    sum_m Re(d_m^H A_m d_m) p_m + c t >= rhs, so minimizing the cap t is a
    small LP over (p, t) >= 0; its optimum restores exact feasibility
    whenever the direction set admits any.
    """
    dirs = np.asarray(dirs, dtype=complex)
    nb = prob.n_blocks
    if dirs.shape != (nb, prob.n_antennas):
        raise ValueError(f"expected {(nb, prob.n_antennas)} directions, got {dirs.shape}")

    n_var = nb + 1
    a_ub = np.zeros((len(prob.rows), n_var))
    b_ub = np.zeros(len(prob.rows))
    for j, row in enumerate(prob.rows):
        for blk, mat in row.mats.items():
            a_ub[j, blk] = -float(np.real(dirs[blk].conj() @ mat @ dirs[blk]))
        a_ub[j, nb] = -row.t_coeff
        b_ub[j] = -row.rhs
    cost = np.zeros(n_var)
    cost[nb] = 1.0
    # powers in noise units to keep the LP well scaled
    scale = prob.power_scale
    res = linprog(cost, A_ub=a_ub, b_ub=b_ub / scale, bounds=(0, None), method="highs")
    if res.status != 0 or res.x is None:
        return RepairResult(powers=np.zeros(nb), t=math.inf, feasible=False,
                            lp_status=int(res.status))
    x = res.x * scale
    return RepairResult(powers=x[:nb], t=float(x[nb]), feasible=True, lp_status=0)


def synthesize_waveform(beams: np.ndarray, stream_len: int,
                        seed: int = 0) -> np.ndarray:
    """Waveform X = W S from orthogonal unit-power symbol rows.

    beams is (K, N) (one beamformer per row); S is K x L with
    S S^H = L I_K built from seeded DFT rows with random phases, so
    (1/L) X X^H equals W^H-stacked covariance exactly.
    """
    beams = np.asarray(beams, dtype=complex)
    k, n = beams.shape
    if stream_len < k:
        raise ValueError(f"stream length {stream_len} below user count {k}")
    rng = np.random.default_rng(seed)
    rows = rng.permutation(stream_len)[:k]
    phases = np.exp(2j * np.pi * rng.random(k))
    grid = np.exp(-2j * np.pi * np.outer(rows, np.arange(stream_len)) / stream_len)
    s = phases[:, None] * grid  # rows orthogonal with norm^2 = L
    return beams.T @ s


@dataclass(frozen=True, eq=False)
class PrecoderSet:
    """Recovered rank-1 design: beams, waveforms and its feasibility evidence."""

    beams: np.ndarray           # (n_stations, K, N) complex
    waveforms: np.ndarray       # (n_stations, N, L) complex
    method: str                 # "eigen" | "randomized"
    n_samples: int
    realized_power: float       # repaired cap t, watts
    feasibility: FeasibilityReport

    def covariances(self) -> CovarianceSet:
        outer = np.einsum("ski,skj->skij", self.beams, self.beams.conj())
        return CovarianceSet(outer)

    def to_json(self) -> str:
        doc = {
            "method": self.method,
            "n_samples": self.n_samples,
            "realized_power_w": self.realized_power,
            "feasible": self.feasibility.feasible,
            "worst_violation": self.feasibility.worst_violation,
            "beams": [
                [[[float(np.real(z)), float(np.imag(z))] for z in beam] for beam in station]
                for station in self.beams
            ],
        }
        return json.dumps(doc, indent=2)

    def waveforms_to_csv(self, path, station: int = 0) -> None:
        """Dump one station's antenna x symbol grid (re/im interleaved)."""
        x = self.waveforms[station]
        with open(path, "w") as fh:
            header = ",".join(
                f"sym{l}_re,sym{l}_im" for l in range(x.shape[1]))
            fh.write("antenna," + header + "\n")
            for a in range(x.shape[0]):
                vals = []
                for l in range(x.shape[1]):
                    vals.append(repr(float(np.real(x[a, l]))))
                    vals.append(repr(float(np.imag(x[a, l]))))
                fh.write(f"{a}," + ",".join(vals) + "\n")


def _unit_directions(raw: np.ndarray) -> np.ndarray:
    """Normalize candidate vectors, falling back to zero for dead blocks."""
    dirs = np.zeros_like(raw)
    for m in range(raw.shape[0]):
        nrm = float(np.linalg.norm(raw[m]))
        if nrm > 1e-14:
            dirs[m] = raw[m] / nrm
    return dirs


def recover(sol_cov: CovarianceSet, prob: ConicProblem, stream_len: int,
            n_samples: int = 100, seed: int = 0, method: str = "best",
            feas_tol: float = 1e-6) -> PrecoderSet:
    """Extract a feasible rank-1 design from relaxed covariances.

    method "eigen" uses the dominant eigenpairs, "randomized" scores
    n_samples Gaussian candidates by their repaired power cap,
    "best" keeps the cheaper of the two. Candidate sample streams are
    nested: the first n of a longer run coincide with a shorter run at the
    same seed.
    """
    if method not in ("eigen", "randomized", "best"):
        raise ValueError(f"unknown recovery method {method!r}")
    blocks = prob.flat_blocks(sol_cov)
    nb = prob.n_blocks

    candidates = []  # (t, label, dirs, repair)
    if method in ("eigen", "best"):
        raw = np.stack([eigen_extract(blocks[m]) for m in range(nb)])
        dirs = _unit_directions(raw)
        rep = repair_power(dirs, prob)
        if rep.feasible:
            candidates.append((rep.t, "eigen", dirs, rep))

    if method in ("randomized", "best"):
        rng = np.random.default_rng(seed)
        roots = []
        for m in range(nb):
            w, v = np.linalg.eigh(0.5 * (blocks[m] + blocks[m].conj().T))
            roots.append(v * np.sqrt(np.clip(w, 0.0, None))[None, :])
        best_rand = None
        for _ in range(n_samples):
            raw = np.zeros((nb, prob.n_antennas), dtype=complex)
            for m in range(nb):
                u = (rng.standard_normal(prob.n_antennas) +
                     1j * rng.standard_normal(prob.n_antennas)) / math.sqrt(2.0)
                raw[m] = roots[m] @ u
            dirs = _unit_directions(raw)
            rep = repair_power(dirs, prob)
            if rep.feasible and (best_rand is None or rep.t < best_rand[0]):
                best_rand = (rep.t, "randomized", dirs, rep)
        if best_rand is not None:
            candidates.append(best_rand)

    if not candidates:
        raise RuntimeError("no feasible rank-1 candidate found; "
                           "increase n_samples or inspect the relaxation output")

    t_best, label, dirs, rep = min(candidates, key=lambda c: c[0])
    beams_flat = dirs * np.sqrt(np.maximum(rep.powers, 0.0))[:, None]

    n_st = len(prob.stations)
    k = prob.n_users
    beams = np.zeros((n_st, k, prob.n_antennas), dtype=complex)
    for (b, i), m in prob.block_of.items():
        beams[prob.stations.index(b), i] = beams_flat[m]

    waveforms = np.stack([
        synthesize_waveform(beams[s], stream_len, seed=seed + 7 * s)
        for s in range(n_st)])

    cov = CovarianceSet(np.einsum("ski,skj->skij", beams, beams.conj()))
    report = check_feasible(cov, prob, tol=feas_tol, t=t_best)
    return PrecoderSet(
        beams=beams, waveforms=waveforms, method=label,
        n_samples=n_samples if label == "randomized" else 0,
        realized_power=t_best, feasibility=report)
