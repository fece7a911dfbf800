"""Masking strategies: reduce a token list of length n to at most k tokens.

Every strategy returns a subsequence (original order, original tokens).
All strategies except ``swclip`` fill the keep-budget exactly: the output
length is min(n, k). ``swclip`` masks each word independently by frequency
and may leave slots unused, which is precisely the behavior the
slot-utilization report measures.

Strategies:
    truncation  keep the first k tokens (deterministic)
    random      keep k uniformly chosen tokens
    block       keep a contiguous k-token window at a uniform random offset
    syntax      keep k tokens by POS priority NN > JJ > VB > OTHER
    frequency   remove exactly n-k tokens, weighted by masking probability
    swclip      mask each token independently with its masking probability,
                then truncate survivors to k

Stochastic strategies are pure functions of (tokens, parameters, seed).
Corpus runs derive one seed per record from (global seed, epoch, record
index) with a splitmix64-style hash, so serial and parallel runs agree
byte-for-byte and each epoch resamples random/block/frequency/swclip while
truncation and syntax stay fixed.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Sequence

from .freq import DEFAULT_THRESHOLD, FrequencyTable, mask_probability, validate_threshold

STRATEGIES = ("truncation", "random", "block", "syntax", "frequency", "swclip")

# Strategies that resample each epoch; the remaining two ignore the seed.
STOCHASTIC_STRATEGIES = frozenset({"random", "block", "frequency", "swclip"})

# Strategies whose masking decision needs a frequency table.
FREQUENCY_STRATEGIES = frozenset({"frequency", "swclip"})

_PRIORITY = {"NN": 0, "JJ": 1, "VB": 2, "OTHER": 3}

# Floor for removal weights so that captions where more than n-k tokens have
# zero masking probability still sample uniformly instead of degenerating.
WEIGHT_FLOOR = 1e-9

_MASK64 = (1 << 64) - 1


def _splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return x ^ (x >> 31)


def record_seed(seed: int, index: int, epoch: int = 0) -> int:
    """Per-record seed derived from the run seed, epoch and record index.

    Splittable-hash mixing keeps the streams independent of processing
    order, so any parallel schedule reproduces the serial output.
    """
    h = _splitmix64(seed & _MASK64)
    h = _splitmix64(h ^ (epoch & _MASK64))
    h = _splitmix64(h ^ (index & _MASK64))
    return h


@dataclass
class MaskedOutput:
    """Retained tokens in original order plus their source positions."""

    kept: list[str]
    kept_indices: list[int]
    strategy: str
    source_length: int

    def text(self) -> str:
        return " ".join(self.kept)


@dataclass
class MaskingConfig:
    """Run-level masking parameters shared by every record of a corpus pass."""

    strategy: str
    k: int = 8
    t: float = DEFAULT_THRESHOLD
    seed: int = 0
    epoch: int = 0
    freq_table: FrequencyTable | None = None

    def __post_init__(self) -> None:
        if self.strategy not in STRATEGIES:
            raise ValueError(f"unknown strategy {self.strategy!r}; expected one of {STRATEGIES}")
        _check_k(self.k)
        validate_threshold(self.t)
        if self.strategy in FREQUENCY_STRATEGIES and self.freq_table is None:
            raise ValueError(f"strategy {self.strategy!r} requires a frequency table")


def _check_k(k: int) -> None:
    if k < 1:
        raise ValueError(f"keep-length k must be >= 1, got {k}")


def _identity(tokens: Sequence[str], strategy: str) -> MaskedOutput:
    n = len(tokens)
    return MaskedOutput(list(tokens), list(range(n)), strategy, n)


def _select(tokens: Sequence[str], indices: list[int], strategy: str) -> MaskedOutput:
    return MaskedOutput([tokens[i] for i in indices], indices, strategy, len(tokens))


def mask_truncation(tokens: Sequence[str], k: int) -> MaskedOutput:
    """Keep the first min(n, k) tokens. Ignores any seed."""
    _check_k(k)
    if len(tokens) <= k:
        return _identity(tokens, "truncation")
    return _select(tokens, list(range(k)), "truncation")


def mask_random(tokens: Sequence[str], k: int, seed: int) -> MaskedOutput:
    """Keep k positions chosen uniformly without replacement."""
    _check_k(k)
    n = len(tokens)
    if n <= k:
        return _identity(tokens, "random")
    rng = random.Random(seed)
    return _select(tokens, sorted(rng.sample(range(n), k)), "random")


def mask_block(tokens: Sequence[str], k: int, seed: int) -> MaskedOutput:
    """Keep a contiguous k-token window; start drawn uniformly from 0..n-k.

    The start range includes n-k, so every window (the last one included)
    is reachable.
    """
    _check_k(k)
    n = len(tokens)
    if n <= k:
        return _identity(tokens, "block")
    start = random.Random(seed).randrange(n - k + 1)
    return _select(tokens, list(range(start, start + k)), "block")


def mask_syntax(tokens: Sequence[str], tags: Sequence[str], k: int) -> MaskedOutput:
    """Keep k tokens by POS priority NN > JJ > VB > OTHER, earlier-first ties.

    Ignores any seed; the same caption always masks the same way.
    """
    _check_k(k)
    if len(tags) != len(tokens):
        raise ValueError(f"tags length {len(tags)} does not match token count {len(tokens)}")
    n = len(tokens)
    if n <= k:
        return _identity(tokens, "syntax")
    try:
        ranked = sorted(range(n), key=lambda i: (_PRIORITY[tags[i]], i))
    except KeyError as exc:
        raise ValueError(f"unknown POS category {exc.args[0]!r}; expected one of {tuple(_PRIORITY)}") from None
    return _select(tokens, sorted(ranked[:k]), "syntax")


def mask_frequency(
    tokens: Sequence[str],
    table: FrequencyTable,
    t: float,
    k: int,
    seed: int,
) -> MaskedOutput:
    """Remove exactly n-k tokens by frequency-weighted sampling.

    Removal weights are each token's masking probability (floored at
    WEIGHT_FLOOR), sampled without replacement via an exponential race:
    token i draws key Exp(1)/w_i and the n-k smallest keys are removed.
    Successive removals are therefore weight-proportional among the
    remaining tokens. When n <= k nothing is removed, so every available
    input slot is used.
    """
    _check_k(k)
    validate_threshold(t)
    n = len(tokens)
    if n <= k:
        return _identity(tokens, "frequency")
    rng = random.Random(seed)
    # Hot path for corpus-scale runs: probability lookup inlined (identical
    # arithmetic to mask_probability, so seeded streams are unaffected).
    counts = table.counts
    total = table.total
    rand = rng.random
    log, sqrt = math.log, math.sqrt
    keys = []
    for tok in tokens:
        count = counts.get(tok)
        w = WEIGHT_FLOOR
        if count is not None:
            f = count / total
            if f > t:
                w = 1.0 - sqrt(t / f)
                if w < WEIGHT_FLOOR:
                    w = WEIGHT_FLOOR
        # Exponential race: key ~ Exp(w); the n-k smallest keys are removed.
        keys.append(-log(1.0 - rand()) / w)
    ranked = sorted(range(n), key=keys.__getitem__)
    return _select(tokens, sorted(ranked[n - k:]), "frequency")


def mask_swclip(
    tokens: Sequence[str],
    table: FrequencyTable,
    t: float,
    k: int,
    seed: int,
) -> MaskedOutput:
    """Mask each token independently with its masking probability.

    Survivors stay in order and are truncated to the first k, so the output
    can be shorter than min(n, k): high-frequency captions under-fill their
    input slots, unlike every other strategy here.
    """
    _check_k(k)
    rng = random.Random(seed)
    kept: list[int] = []
    for i, tok in enumerate(tokens):
        if rng.random() >= mask_probability(tok, table, t):
            kept.append(i)
    return _select(tokens, kept[:k], "swclip")


def apply_mask(
    tokens: Sequence[str],
    config: MaskingConfig,
    tags: Sequence[str] | None = None,
    seed: int | None = None,
) -> MaskedOutput:
    """Apply ``config.strategy`` to one token list.

    ``seed`` overrides config.seed for the stochastic strategies; corpus
    pipelines pass ``record_seed(config.seed, record_index, config.epoch)``.
    ``tags`` is required for the syntax strategy only.
    """
    if seed is None:
        seed = config.seed
    strategy = config.strategy
    if strategy == "truncation":
        return mask_truncation(tokens, config.k)
    if strategy == "random":
        return mask_random(tokens, config.k, seed)
    if strategy == "block":
        return mask_block(tokens, config.k, seed)
    if strategy == "syntax":
        if tags is None:
            raise ValueError("syntax strategy requires POS tags")
        return mask_syntax(tokens, tags, config.k)
    if strategy == "frequency":
        return mask_frequency(tokens, config.freq_table, config.t, config.k, seed)
    assert strategy == "swclip"
    return mask_swclip(tokens, config.freq_table, config.t, config.k, seed)
