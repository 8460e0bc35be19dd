"""Global testing of community structure under the mixed-membership SBM."""

from .distributions import chi2_2_quantile, chi2_2_survival, normal_cdf, normal_quantile, normal_sf
from .errors import (
    ConfigError,
    DegenerateModelError,
    EdgeListParseError,
    GuardError,
    InstanceTooSmallError,
    ParameterError,
)
from .experiments import (
    CellResult,
    ExperimentConfig,
    load_config,
    run_experiment,
    run_null_calibration,
    run_phase_curve,
    run_power_grid,
    test_file,
)
from .inc import IncResult, intrinsic_num_communities, min_distance_to_hull
from .model import (
    AdjacencyMatrix,
    DirichletMembership,
    FixedMembership,
    MmsbmParams,
    PureMembership,
    generate_network,
    make_rng,
    omega_matrix,
    read_edgelist,
    sample_network,
    write_edgelist,
)
from .scenarios import SCENARIOS, build_scenario, preset_scenario
from .stats import (
    TestReport,
    alpha_hat,
    chi2_statistic,
    osq_statistic,
    pe_statistic,
    run_tests,
    signed_cycle,
    signed_path,
)
from .theory import TheoryReport, exact_snr, theory_report

__version__ = "0.1.0"
