"""Word-frequency tables and the frequency-based masking probability.

The masking probability of a word with relative frequency f is

    P = 1 - sqrt(t / f)

clamped to [0, 1], where t is a dimensionless threshold (default 1e-6).
Words at or below the threshold are never masked; the probability grows
toward 1 as f grows, so frequent words are removed aggressively while the
frequency ranking of the vocabulary is preserved.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from typing import IO, Iterable, Iterator, Sequence

DEFAULT_THRESHOLD = 1e-6


def validate_threshold(t: float) -> float:
    if not 0.0 < t < 1.0:
        raise ValueError(f"threshold must be in (0, 1), got {t!r}")
    return t


@dataclass
class FrequencyTable:
    """Word -> occurrence count map over a corpus. Immutable after build.

    ``total`` is the total token count, so ``counts[w] / total`` is the
    relative frequency of ``w``. Every stored count is >= 1.
    """

    counts: dict[str, int] = field(default_factory=dict)
    total: int = 0

    def __contains__(self, word: str) -> bool:
        return word in self.counts

    def __len__(self) -> int:
        return len(self.counts)

    def relative_frequency(self, word: str) -> float:
        """Relative frequency of a stored word, in (0, 1]. KeyError if unknown."""
        return self.counts[word] / self.total


def build_frequency_table(corpus: Iterable[Sequence[str]]) -> FrequencyTable:
    """Count word occurrences over a stream of token lists.

    Raises ValueError on an empty corpus (zero tokens overall): relative
    frequencies would be undefined.
    """
    counts: Counter[str] = Counter()
    for tokens in corpus:
        counts.update(tokens)
    total = sum(counts.values())
    if total == 0:
        raise ValueError("empty corpus")
    return FrequencyTable(dict(counts), total)


def merge(a: FrequencyTable, b: FrequencyTable) -> FrequencyTable:
    """Pointwise sum of two tables; associative and commutative.

    Merging an explicitly constructed empty table is the identity, which
    makes sharded parallel builds reducible in any order.
    """
    counts = Counter(a.counts)
    counts.update(b.counts)
    return FrequencyTable(dict(counts), a.total + b.total)


def subsample_probability(rel_freq: float, t: float = DEFAULT_THRESHOLD) -> float:
    """Masking probability for a relative frequency, clamped to [0, 1].

    Exactly 0 for rel_freq <= t (the raw formula goes negative there);
    monotonically nondecreasing in rel_freq and decreasing in t.
    """
    validate_threshold(t)
    if rel_freq <= t:
        return 0.0
    p = 1.0 - math.sqrt(t / rel_freq)
    return p if p < 1.0 else 1.0


def mask_probability(
    word: str,
    table: FrequencyTable,
    t: float = DEFAULT_THRESHOLD,
    diagnostics: set[str] | None = None,
) -> float:
    """Masking probability of ``word`` under ``table``.

    Unknown words return 0.0 (treated as arbitrarily rare, never masked);
    when ``diagnostics`` is given, "unknown-word" is added to it so callers
    can surface the condition.
    """
    count = table.counts.get(word)
    if count is None:
        validate_threshold(t)
        if diagnostics is not None:
            diagnostics.add("unknown-word")
        return 0.0
    return subsample_probability(count / table.total, t)


def probability_curve(
    t_values: Sequence[float], f_grid: Sequence[float]
) -> list[tuple[float, float, float]]:
    """Evaluate the masking probability over a (t, f) grid, for plotting.

    Returns (t, f, P) rows, t-major. Both grids must be nonempty.
    """
    if not t_values or not f_grid:
        raise ValueError("t_values and f_grid must be nonempty")
    return [
        (t, f, subsample_probability(f, t)) for t in t_values for f in f_grid
    ]


# --- persistence ------------------------------------------------------------
#
# UTF-8 text: line 1 is "#total <N>", then "<word>\t<count>" per line sorted
# by descending count, ties lexicographic. Sorted output keeps diffs stable.


def dump_frequency_table(table: FrequencyTable, fh: IO[str]) -> None:
    fh.write(f"#total {table.total}\n")
    for word, count in sorted(table.counts.items(), key=lambda kv: (-kv[1], kv[0])):
        fh.write(f"{word}\t{count}\n")


def save_frequency_table(table: FrequencyTable, path: str) -> None:
    from .corpus_io import open_text_write

    with open_text_write(path) as fh:
        dump_frequency_table(table, fh)


def parse_frequency_table(lines: Iterator[str], source: str = "<stream>") -> FrequencyTable:
    header = next(lines, None)
    if header is None or not header.startswith("#total "):
        raise ValueError(f"{source}: missing '#total <N>' header line")
    try:
        total = int(header[len("#total "):].strip())
    except ValueError:
        raise ValueError(f"{source}: malformed total in header: {header.strip()!r}") from None
    counts: dict[str, int] = {}
    for lineno, line in enumerate(lines, start=2):
        line = line.rstrip("\n")
        if not line:
            continue
        word, sep, count_str = line.partition("\t")
        if not sep or not word:
            raise ValueError(f"{source}:{lineno}: expected '<word>\\t<count>'")
        try:
            count = int(count_str)
        except ValueError:
            raise ValueError(f"{source}:{lineno}: malformed count {count_str!r}") from None
        if count < 1:
            raise ValueError(f"{source}:{lineno}: count must be >= 1, got {count}")
        if word in counts:
            raise ValueError(f"{source}:{lineno}: duplicate word {word!r}")
        counts[word] = count
    if sum(counts.values()) != total:
        raise ValueError(f"{source}: header total {total} does not match sum of counts")
    return FrequencyTable(counts, total)


def load_frequency_table(path: str) -> FrequencyTable:
    from .corpus_io import open_text_read

    with open_text_read(path) as fh:
        return parse_frequency_table(iter(fh), source=str(path))
