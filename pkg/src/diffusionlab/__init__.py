"""diffusionlab: physical and stochastic diffusion, side by side.

Heat-equation solvers (closed form, sine series, explicit finite
differences) next to random-sum ensembles, Rayleigh/Pearson/Brownian
walks, bounded-domain policies, and the comparison statistics that check
every correspondence between the two pictures.
"""

from .ensembles import (
    EmpiricalDensity,
    Ensemble,
    StepDistribution,
    advance,
    discrete_table,
    exact_pmf_rademacher,
    gaussian,
    histogram,
    init_ensemble,
    inject_realizations,
    make_distribution,
    rademacher,
    sample_moments,
    uniform_symmetric,
)
from .pde import (
    BoundaryCondition,
    Field1D,
    StabilityError,
    ThermalMedium,
    delta_field,
    ftcs_step,
    green_function,
    green_function_cdf,
    heat_content,
    solve,
    trig_series_dirichlet,
)
from .walks import (
    BrownianGaussian,
    MsdFit,
    PearsonFixedStep,
    RademacherPhase,
    UniformPhase2D,
    UnitVector3D,
    WalkConfig,
    WalkResult,
    brownian_walk,
    msd_fit,
    pearson_walk,
    rayleigh_walk,
)
from .boundary_lab import (
    BoundaryPolicy,
    BoundedRunDiagnostics,
    IterationCapError,
    bias_report,
    bounded_walk,
    clamp_to_bound,
    reflect_at_bound,
    reject_resample,
)
from .einstein import (
    BrownianScales,
    PhysicalConstants,
    d_macroscopic,
    d_stochastic,
    estimate_avogadro,
    reduce_to_laplace,
)
from .stats import (
    ComparisonReport,
    LinearFit,
    chi_square,
    fit_linear,
    ks_statistic,
    ks_statistic_mid,
    ks_two_sample,
    l1_linf_distance,
)

__version__ = "0.1.0"
