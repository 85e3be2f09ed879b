"""N-gram analyzers mapping raw text to streams of feature strings.

Three modes: word n-grams over tokenized text, character n-grams over the
whitespace-collapsed character sequence, and character n-grams bounded within
space-padded words. No case folding or accent stripping is applied anywhere.
"""

from __future__ import annotations

import re
from functools import partial
from typing import Callable

from .base import check_ngram_range

WORD = "word"
CHAR = "char"
CHAR_WB = "char_wb"
ANALYZER_KINDS = (WORD, CHAR, CHAR_WB)

# \w in Python 3 matches Unicode letters/digits plus underscore; everything
# else is a separator.
_TOKEN_RE = re.compile(r"\w+")
_WHITESPACE_RE = re.compile(r"\s+")


def tokenize_words(text: str) -> list[str]:
    """Split text into maximal runs of Unicode letters/digits/underscore."""
    return _TOKEN_RE.findall(text)


def collapse_whitespace(text: str) -> str:
    """Replace every whitespace run with a single space."""
    return _WHITESPACE_RE.sub(" ", text)


def word_ngrams(tokens: list[str], ngram_range: tuple[int, int]) -> list[str]:
    """Space-joined token windows for each n in the range, n ascending."""
    lo, hi = check_ngram_range(ngram_range)
    out: list[str] = []
    count = len(tokens)
    for n in range(lo, hi + 1):
        for i in range(count - n + 1):
            out.append(" ".join(tokens[i : i + n]))
    return out


def char_ngrams(text: str, ngram_range: tuple[int, int]) -> list[str]:
    """Every contiguous n-character window of the whitespace-collapsed text."""
    lo, hi = check_ngram_range(ngram_range)
    t = collapse_whitespace(text)
    length = len(t)
    out: list[str] = []
    for n in range(lo, hi + 1):
        for i in range(length - n + 1):
            out.append(t[i : i + n])
    return out


def char_wb_ngrams(text: str, ngram_range: tuple[int, int]) -> list[str]:
    """Character n-grams confined within space-padded words.

    Each word is padded with one space on each side. For each n (ascending),
    windows are taken inside the padded word; once n reaches the padded
    length, the whole padded word is emitted once and larger n contribute
    nothing for that word.
    """
    lo, hi = check_ngram_range(ngram_range)
    out: list[str] = []
    for token in tokenize_words(text):
        padded = f" {token} "
        length = len(padded)
        for n in range(lo, hi + 1):
            if n >= length:
                out.append(padded)
                break
            for i in range(length - n + 1):
                out.append(padded[i : i + n])
    return out


def build_analyzer(kind: str, ngram_range: tuple[int, int]) -> Callable[[str], list[str]]:
    """Return a picklable callable mapping text to its feature strings."""
    check_ngram_range(ngram_range)
    if kind == WORD:
        return partial(_analyze_word, ngram_range=ngram_range)
    if kind == CHAR:
        return partial(char_ngrams, ngram_range=ngram_range)
    if kind == CHAR_WB:
        return partial(char_wb_ngrams, ngram_range=ngram_range)
    raise ValueError(f"unknown analyzer {kind!r}; expected one of {ANALYZER_KINDS}")


def _analyze_word(text: str, ngram_range: tuple[int, int]) -> list[str]:
    return word_ngrams(tokenize_words(text), ngram_range)
