"""
French-aware tokenizer and sentence segmenter.

Elision clitics are split after the apostrophe (l'ONU -> l' + ONU), title
and company abbreviations keep their period, and a sentence ends at . ! ?
followed by whitespace and an uppercase letter, or by the end of the text.
A company suffix such as Inc. can end a sentence; a title such as M. cannot.
"""
import re
from typing import List

from .mentions import Span, Token

TOKEN_RE = re.compile(
    r"(?P<clitic>(?i:jusqu|lorsqu|puisqu|quoiqu|qu|[cdjlmnst])['’](?=\w))"
    r"|(?P<word>\w+(?:[-'’]\w+)*)"
    r"|(?P<punct>[^\w\s])"
)

SENTENCE_FINAL = frozenset('.!?')

# Kept together with their period; a title never closes a sentence
TITLES = frozenset([
    'M', 'Mr', 'Mrs', 'Ms', 'Dr', 'Pr', 'Me', 'Mme', 'Mmes', 'Mlle', 'Mlles', 'MM',
    'St', 'Ste',
])

# Kept together with their period, but may end a sentence
COMPANY_SUFFIXES = frozenset(['Inc', 'Corp', 'Ltd', 'Co', 'Cie', 'Jr', 'Sr'])

ABBREVIATIONS = TITLES | COMPANY_SUFFIXES


def tokenize(text: str) -> List[Token]:
    tokens: List[Token] = []
    sentence = 0
    pos = 0
    length = len(text)

    while pos < length:
        match = TOKEN_RE.search(text, pos)
        if match is None:
            break
        start, end = match.span()
        kind = match.lastgroup

        if kind == 'word' and match.group() in ABBREVIATIONS and end < length and text[end] == '.':
            end += 1

        surface = text[start:end]
        tokens.append(Token(surface, Span(start, end), sentence, kind != 'punct'))
        pos = end

        if kind == 'punct' and surface in SENTENCE_FINAL and _closes_sentence(text, end):
            sentence += 1
        elif kind == 'word' and surface.endswith('.') and match.group() in COMPANY_SUFFIXES \
                and _closes_sentence(text, end):
            sentence += 1

    return tokens


def _closes_sentence(text: str, end: int) -> bool:
    if end >= len(text):
        return True
    if not text[end].isspace():
        return False
    rest = text[end:].lstrip()
    return not rest or rest[0].isupper()


def sentences(tokens: List[Token]) -> List[List[Token]]:
    """Group tokens by sentence index, in order."""
    grouped: List[List[Token]] = []
    for token in tokens:
        if not grouped or grouped[-1][0].sentence_index != token.sentence_index:
            grouped.append([])
        grouped[-1].append(token)
    return grouped


def surfaces(text: str) -> List[str]:
    """Token surfaces of a short string, used to key lexicon entries."""
    return [token.surface for token in tokenize(text)]
