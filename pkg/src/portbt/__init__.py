"""Exact finite-size formulas, asymptotics, and bounds for port-based teleportation.

The package has five layers:

- :mod:`portbt.diagrams`: Young diagram enumeration, exact irrep dimensions,
  and the Schur-Weyl distribution with reproducible sampling.
- :mod:`portbt.perf`: exact protocol performance (standard, EPR-probabilistic,
  optimized-probabilistic), diagram densities, and the spectral solution of
  the fully optimized deterministic protocol.
- :mod:`portbt.bounds`: closed-form converse/achievability bounds,
  communication floors, and ordered-simplex geometry.
- :mod:`portbt.rmt`: traceless-GUE sampling and largest-eigenvalue statistics.
- :mod:`portbt.oracle`: dense brute-force validation at tiny sizes.

The ``portbt`` command line emits all of it as reproducible CSV tables.
"""

__version__ = "0.1.0"

from .bounds import (
    BoundReport,
    CommBounds,
    SimplexVolumes,
    achievability_appendix_b,
    achievability_laplacian,
    achievability_std,
    bound_report,
    comm_bounds,
    converse_nonasymptotic,
    converse_piecewise,
    converse_rootfid,
    diamond_error_from_fidelity,
    ishizaka_converse,
    laplacian_eigenvalue_bound,
    porttele_bound,
    simplex_volumes,
)
from .diagrams import (
    CenteredDiagram,
    DimensionRecord,
    SchurWeylTable,
    YoungDiagram,
    center_diagram,
    compensated_sum,
    dimension_record,
    enumerate_diagrams,
    gamma_ratio,
    hook_lengths,
    partition_rows,
    sample_indices,
    sample_schur_weyl,
    schur_weyl_table,
    specht_dim,
    weyl_dim,
)
from .oracle import SpectrumReport, build_T, pgm_fidelity, spectrum_check
from .perf import (
    DiagramDensity,
    PerfPoint,
    PowerIterationError,
    SpectralOptimum,
    appendix_b_density,
    f_from_prob_conversion,
    f_std,
    f_std_asymptote,
    f_std_exact_bounds,
    fidelity_of_density,
    optimal_fidelity_spectral,
    p_epr,
    p_epr_asymptote,
    p_star,
    schur_weyl_density,
)
from .rmt import (
    GueSampleStats,
    lambda_max_exact_d2,
    lambda_max_mean,
    lambda_max_samples,
    sample_gue0,
    semicircle_ratio,
)
