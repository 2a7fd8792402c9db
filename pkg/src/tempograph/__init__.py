"""Topological change detection for time-varying graphs.

Pipeline: embed each graph instance in a metric space (shortest-path or
commute-time), summarize it with 0-/1-dimensional persistence diagrams of
the Rips filtration, compare diagrams with bottleneck/Wasserstein distances,
and project the pairwise distances to an interactive timeline with classical
MDS.
"""

from .analysis import (
    DISCONNECTED,
    DiagramDistanceConfig,
    KMeansResult,
    PeriodSegment,
    TimelineRecord,
    classical_mds,
    diagram,
    diagram_distance,
    embed,
    kmeans_lloyd,
    kmeans_periods,
    make_timeline,
    matrix_norm_delta,
    pairwise_diagram_distances,
    split_periods,
)
from .distances import EssentialPolicy, bottleneck, preprocess, wasserstein
from .experiments import (
    PropertySuiteReport,
    StabilityRecord,
    StabilityStudy,
    focus_awareness,
    property_suite,
    stability_study,
    table1_deltas,
    weight_awareness,
)
from .export import ExportBundle
from .graphs import (
    GraphInstance,
    PerturbationSpec,
    TemporalEdgeEvent,
    TimeVaryingGraph,
    delete_nodes,
    exemplar,
    generate_gnm,
    ingest_temporal_edges,
    modify_edge_weight,
    perturb_delete_edges,
)
from .metrics import (
    DistanceMatrix,
    SpectralData,
    commute_time_matrix,
    effective_resistance_oracle,
    laplacian,
    laplacian_spectrum,
    shortest_path_matrix,
)
from .persistence import (
    Bar,
    Barcode,
    Filtration,
    PersistenceDiagram,
    PersistencePoint,
    Simplex,
    barcode,
    compute_persistence,
    pd0_single_linkage,
    rips_filtration,
)

__version__ = "0.1.0"
