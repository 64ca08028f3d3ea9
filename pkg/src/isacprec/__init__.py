"""Collaborative precoding for a pair of mutually interfering ISAC base stations.

Minimum-power beamforming under per-user communication SINR and echo SINR
constraints, with total or per-antenna power coupling, solved by
semidefinite relaxation plus rank-1 recovery, and an experiment harness
for rate / detection / trade-off / timing studies.
"""

from .scenario import (
    ScenarioConfig, ChannelSet, make_steering, generate_channels,
    dbm_to_watts, watts_to_dbm, db_to_linear,
)
from .interference import (
    CovarianceSet, MetricsReport, comm_sinr, radar_sinr, avg_rate,
    marcum_q1, detection_probability, compute_metrics, DEFAULT_PFA,
)
from .problem import (
    Thresholds, ConicProblem, ConstraintRow, build_problem, check_feasible,
    FeasibilityReport,
)
from .solver import (
    SolverOptions, SdpSolution, solve, dual_certificate, embed_hermitian,
    unembed_hermitian, InfeasibilityCertificate, CertificateReport,
    OPTIMAL, INFEASIBLE, MAX_ITERATIONS, write_trace_csv,
)
from .recovery import (
    PrecoderSet, eigen_extract, randomize_extract, repair_power,
    synthesize_waveform, recover, dominant_ratio, RepairResult,
)

__version__ = "0.1.0"
