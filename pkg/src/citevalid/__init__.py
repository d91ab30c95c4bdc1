"""Paper-level citation indicators and their validation against F1000 ratings."""

from .citation_graph import (
    RawCounts as RawCounts,
    citing_papers as citing_papers,
    second_gen_per_citing as second_gen_per_citing,
    second_generation_citations as second_generation_citations,
    times_cited as times_cited,
)
from .corpus import (
    CitationEdge as CitationEdge,
    Corpus as Corpus,
    CorpusError as CorpusError,
    Paper as Paper,
    RatingRecord as RatingRecord,
    load_corpus as load_corpus,
    validate_corpus as validate_corpus,
    write_corpus as write_corpus,
)
from .normalization import (
    METRICS as METRICS,
    IndicatorVector as IndicatorVector,
    ReferenceSetKey as ReferenceSetKey,
    category_ae as category_ae,
    expected_citations as expected_citations,
    indicator_table as indicator_table,
    indicator_vector as indicator_vector,
    journal_ae as journal_ae,
    journal_impact_factor as journal_impact_factor,
    percentile_in_subject as percentile_in_subject,
    reversed_percentile as reversed_percentile,
)
from .ratings import FfaScore as FfaScore, ffa as ffa, ffa_table as ffa_table, increment_of as increment_of
from .stats import (
    average_ranks as average_ranks,
    bonferroni_alpha as bonferroni_alpha,
    effect_class as effect_class,
    fisher_ci as fisher_ci,
    normality_test as normality_test,
    p_value_spearman as p_value_spearman,
    pairwise_complete as pairwise_complete,
    spearman as spearman,
    summary_stats as summary_stats,
)
from .synthgen import GenConfig as GenConfig, generate_corpus as generate_corpus, planted_truth as planted_truth
from .validation import ValidationReport as ValidationReport, format_report as format_report, run_validation as run_validation

__version__ = "0.1.0"
