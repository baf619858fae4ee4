"""Source-string construction for generation requests.

The rules mirror the preprocessing side of the toolkit and are
re-implemented here so the service stays dependency-free: a prefix of
three control tokens (CR, WL, WR, each rendered with exactly two decimals,
half-up), one space, then the sentence with its word_index-th whitespace
token wrapped in [T]...[/T]. Everything outside the markers is preserved
byte-for-byte.
"""

from decimal import ROUND_HALF_UP, Decimal

OPEN_MARK = "[T]"
CLOSE_MARK = "[/T]"


def render_value(value: float) -> str:
    """Two decimals, half-up: 0.54, 1.00, 1.25."""
    return str(Decimal(str(value)).quantize(Decimal("0.01"), rounding=ROUND_HALF_UP))


def token_spans(sentence: str) -> list[tuple[int, int]]:
    """(start, end) pairs of the maximal non-whitespace runs, left to right."""
    spans = []
    start = None
    for position, char in enumerate(sentence):
        if char.isspace():
            if start is not None:
                spans.append((start, position))
                start = None
        elif start is None:
            start = position
    if start is not None:
        spans.append((start, len(sentence)))
    return spans


def mark_word(sentence: str, word_index: int) -> str:
    spans = token_spans(sentence)
    if word_index < 0 or word_index >= len(spans):
        raise ValueError(
            f"word_index {word_index} out of range for a {len(spans)}-token sentence"
        )
    start, end = spans[word_index]
    return sentence[:start] + OPEN_MARK + sentence[start:end] + CLOSE_MARK + sentence[end:]


def build_source(cr: float, wl: float, wr: float, sentence: str, word_index: int) -> str:
    prefix = (
        f"<CR_{render_value(cr)}> <WL_{render_value(wl)}> <WR_{render_value(wr)}>"
    )
    return prefix + " " + mark_word(sentence, word_index)
