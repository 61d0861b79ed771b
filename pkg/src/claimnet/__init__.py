"""Discourse networks from annotated political claims.

Pipeline: ingest claim records -> unstack into observations -> aggregate
over a time window with an m-slice threshold -> bipartite affiliation
network -> one-mode projections, metrics and keyword rankings, served
over a CLI and a read-only HTTP API.
"""

from .aggregate import (
    EdgeCount,
    MonthBucket,
    TimeWindow,
    aggregate_window,
    monthly_buckets,
    unstack,
    unstack_all,
)
from .analysis import (
    CentralityReport,
    ComparisonReport,
    MonthStats,
    Partition,
    betweenness_exact,
    centrality,
    communities,
    compare_networks,
    connected_components,
    modularity_exact,
    monthly_network_stats,
)
from .graphio import to_dot, to_graphml
from .ingest import (
    ActorRegistry,
    CountsReport,
    Dataset,
    IngestError,
    IngestReport,
    MappingConflict,
    ParseError,
    ValidationFailure,
    corpus_counts,
    load_actor_mapping,
    load_codebook,
    load_records,
)
from .keywords import (
    KeywordRanking,
    default_stopwords,
    extract_keywords,
    keyword_scores,
    load_stopwords,
    monthly_keyword_table,
)
from .model import (
    Actor,
    ActorMention,
    CategoryEntry,
    ClaimRecord,
    Codebook,
    EntityKind,
    Observation,
    Polarity,
    ValidationResult,
    Violation,
    major_class,
    validate_record,
)
from .network import (
    AffiliationEdge,
    AffiliationNetwork,
    DegreeConvention,
    NodeNotFound,
    ProjectedEdge,
    ProjectedNetwork,
    ProjectionMode,
    Side,
    build_affiliation,
    ego_network,
    project,
)

__version__ = "0.1.0"
