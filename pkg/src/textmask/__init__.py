"""Caption-corpus text masking toolkit.

Six strategies for shrinking captions to a fixed token budget (truncation,
random, block, syntax, frequency, swclip), frequency-table plumbing for the
frequency-based strategies, and the reports used to compare how each
strategy reshapes a corpus.
"""

from .analysis import (
    CorpusStats,
    DistributionReport,
    PosShareReport,
    TokenBudget,
    corpus_stats,
    distribution_report,
    pos_share_report,
    slot_utilization,
    standard_budget_table,
    token_budget,
)
from .corpus_io import CaptionRecord, read_corpus, write_masked
from .freq import (
    DEFAULT_THRESHOLD,
    FrequencyTable,
    build_frequency_table,
    load_frequency_table,
    mask_probability,
    merge,
    probability_curve,
    save_frequency_table,
    subsample_probability,
)
from .maskers import (
    STRATEGIES,
    MaskedOutput,
    MaskingConfig,
    apply_mask,
    mask_block,
    mask_frequency,
    mask_random,
    mask_swclip,
    mask_syntax,
    mask_truncation,
    record_seed,
)
from .postag import CATEGORIES, load_pretagged, penn_to_coarse, tag
from .tokenizer import strip_special, tokenize

__version__ = "0.1.0"

__all__ = [
    "CaptionRecord",
    "CorpusStats",
    "DistributionReport",
    "FrequencyTable",
    "MaskedOutput",
    "MaskingConfig",
    "PosShareReport",
    "TokenBudget",
    "CATEGORIES",
    "DEFAULT_THRESHOLD",
    "STRATEGIES",
    "apply_mask",
    "build_frequency_table",
    "corpus_stats",
    "distribution_report",
    "load_frequency_table",
    "load_pretagged",
    "mask_block",
    "mask_frequency",
    "mask_probability",
    "mask_random",
    "mask_swclip",
    "mask_syntax",
    "mask_truncation",
    "merge",
    "penn_to_coarse",
    "pos_share_report",
    "probability_curve",
    "read_corpus",
    "record_seed",
    "save_frequency_table",
    "slot_utilization",
    "standard_budget_table",
    "strip_special",
    "subsample_probability",
    "tag",
    "token_budget",
    "tokenize",
    "write_masked",
]
