"""Word tokenization schemes for the scorers.

"international" follows the mteval-v14 international convention: every
Unicode punctuation character becomes its own token unless it sits between
two digits (decimal/thousand separators stay attached), and every Unicode
symbol character is always split off.  "whitespace" trusts the input
segmentation and only splits on whitespace.
"""

from __future__ import annotations

import functools
import re
import sys
import unicodedata


@functools.lru_cache(maxsize=None)
def _category_chars(prefix: str) -> str:
    return "".join(
        chr(cp) for cp in range(sys.maxunicode + 1)
        if unicodedata.category(chr(cp)).startswith(prefix)
    )


@functools.lru_cache(maxsize=None)
def _international_res() -> tuple[re.Pattern, re.Pattern, re.Pattern]:
    punct = re.escape(_category_chars("P"))
    symbol = re.escape(_category_chars("S"))
    return (
        re.compile(f"([^\\d])([{punct}])"),
        re.compile(f"([{punct}])([^\\d])"),
        re.compile(f"([{symbol}])"),
    )


def tokenize_international(text: str) -> list[str]:
    nondigit_punct, punct_nondigit, symbol = _international_res()
    text = nondigit_punct.sub(r"\1 \2 ", text)
    text = punct_nondigit.sub(r" \1 \2", text)
    text = symbol.sub(r" \1 ", text)
    return text.split()


def tokenize_whitespace(text: str) -> list[str]:
    return text.split()


TOKENIZERS = {
    "international": tokenize_international,
    "whitespace": tokenize_whitespace,
}


def tokenize(text: str, scheme: str = "international", lowercase: bool = False) -> list[str]:
    if scheme not in TOKENIZERS:
        raise ValueError(f"unknown tokenizer {scheme!r}; expected one of {sorted(TOKENIZERS)}")
    if lowercase:
        text = text.lower()
    return TOKENIZERS[scheme](text)
