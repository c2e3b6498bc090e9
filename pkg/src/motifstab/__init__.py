"""Motif census, degree-preserving null models, Z-score significance
profiles, and structural-stability scoring for directed graphs."""

__version__ = "0.1.0"

from .census import (
    CensusResult,
    MotifId,
    SubgraphInstance,
    canonical_id,
    census,
    class_ids,
    enumerate_classes,
    representative_edges,
    uniqueness,
)
from .graphio import (
    DirectedGraph,
    EmptyGraphError,
    NormalizationReport,
    ParseError,
    RawEdgeList,
    degree_sequences,
    normalize,
    parse_edge_list,
)
from .nullmodel import (
    EnsembleStatistics,
    RandomizationConfig,
    ensemble_census,
    ensemble_census_multi,
    randomize_once,
)
from .report import (
    PipelineConfig,
    PipelineError,
    ReportBundle,
    SizeReport,
    emit_profile_chart,
    emit_summary,
    emit_tables,
    run_pipeline,
)
from .significance import (
    ProfileVector,
    SignificanceRecord,
    motif_filter,
    normalized_profile,
    z_scores,
)
from .stability import (
    CycleSummary,
    StabilityProfile,
    cycle_summary,
    max_real_eigenvalue,
    sample_jacobians,
    sign_assignment_stable,
    sss_monte_carlo,
    stability_class,
    structural_stability_score,
)
from .stats import (
    BoxSummary,
    GroupedScores,
    box_whisker,
    chi_squared_sf,
    group_scores,
    kruskal_wallis,
    spearman,
)
