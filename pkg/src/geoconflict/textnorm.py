"""Text normalization: tokenize, lowercase, stopword removal, stemming.

The tokenizer splits on any non-alphanumeric character and keeps digits
(street numbers discriminate businesses). Non-ASCII letters pass through
lowercased, never transliterated.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Iterable

from .porter import porter_stem

TermList = list[str]

_TOKEN = re.compile(r"[^\W_]+", re.UNICODE)


def _default_stopwords() -> frozenset[str]:
    text = resources.files("geoconflict.data").joinpath("stopwords.txt").read_text("utf-8")
    return frozenset(_parse_stopword_lines(text.splitlines()))


def _parse_stopword_lines(lines: Iterable[str]) -> set[str]:
    words = set()
    for line in lines:
        word = line.split("#", 1)[0].strip().lower()
        if word:
            words.add(word)
    return words


def load_stopwords(path: str | Path) -> frozenset[str]:
    """Read a stopword file: one lowercase word per line, '#' comments allowed."""
    text = Path(path).read_text("utf-8")
    return frozenset(_parse_stopword_lines(text.splitlines()))


@dataclass(frozen=True)
class PipelineConfig:
    """Normalization settings shared by indexing and querying."""

    stopwords: frozenset[str] = field(default_factory=_default_stopwords)
    stem_enabled: bool = True


DEFAULT_PIPELINE = PipelineConfig()


def tokenize(text: str) -> list[str]:
    """Split into raw tokens on any non-alphanumeric character."""
    return _TOKEN.findall(text)


def normalize(text: str, cfg: PipelineConfig = DEFAULT_PIPELINE) -> TermList:
    """Tokenize, lowercase, drop stopwords, then stem each remaining token."""
    terms = []
    for token in tokenize(text):
        token = token.lower()
        if token in cfg.stopwords:
            continue
        term = porter_stem(token) if cfg.stem_enabled else token
        if term:  # a bare "s" stems to nothing
            terms.append(term)
    return terms
