"""Regenerate the cross-component serialization fixture.

Runs the toolkit's source serializer over 25 diverse cases and freezes the
results into tests/data/serialization_vectors.json. The service's test
suite asserts byte-identity of its own serializer against this file, so
both components build identical model inputs.

Usage: python3 scripts/make_contract_vectors.py
"""

import json
from pathlib import Path

from lexsimp import ControlValues, serialize_source

CASES = [
    (1.00, 0.54, 0.90,
     "The Obama administration has seen what The New York Times calls an "
     "unprecedented crackdown on leaks of government secrets.", 12),
    (1.00, 1.00, 1.00, "hi", 0),
    (0.75, 0.62, 1.05, "The Hush Sound is currently on hiatus.", 6),
    (0.50, 2.00, 0.50, "short word here", 1),
    (0.25, 0.33, 1.25, "leading token of the line", 0),
    (0.00, 1.20, 0.80, "trailing token at the end", 4),
    (1.00, 0.50, 0.55, "double  spaced   tokens    here", 2),
    (0.75, 1.10, 0.95, "tab\tseparated stays one line", 1),
    (0.50, 0.99, 1.01, "punctuation, attached! to? tokens;", 2),
    (0.25, 0.80, 0.75, "U.N.-backed peace plan -- along with efforts", 0),
    (0.00, 1.25, 1.25, "boundary value of the whole grid", 5),
    (1.00, 0.05, 9.99, "extreme ratio values still render fine", 3),
    (0.75, 1.00, 0.70, "unicode café naïve résumé words", 1),
    (0.50, 0.45, 0.60, "CJK 漢字 tokens split on spaces", 1),
    (0.25, 0.70, 0.65, "emoji \U0001f600 token in the middle", 1),
    (0.00, 0.85, 0.85, "a b c d e f g h i j", 9),
    (1.00, 1.15, 0.90, "repeated word word word in a row", 2),
    (0.75, 0.95, 1.10, "quotes \"inside\" the sentence text", 1),
    (0.50, 1.05, 0.50, "apostrophe isn't a separator", 1),
    (0.25, 0.60, 1.15, "hyphenated-compound stays one token", 0),
    (0.00, 0.75, 1.20, "numbers 12345 mix with words", 1),
    (1.00, 0.90, 0.95, "  leading spaces before the first token", 0),
    (0.75, 0.55, 0.85, "trailing spaces after the last token   ", 5),
    (0.50, 1.20, 1.00, "brackets (like these) stay put", 2),
    (0.25, 1.00, 0.54, "the final vector of this fixture", 1),
]


def main():
    vectors = []
    for cr, wl, wr, sentence, word_index in CASES:
        source = serialize_source(ControlValues(cr=cr, wl=wl, wr=wr), sentence, word_index)
        vectors.append({
            "cr": cr, "wl": wl, "wr": wr,
            "sentence": sentence, "word_index": word_index,
            "source": source,
        })
    out = Path(__file__).resolve().parent.parent / "tests" / "data" / "serialization_vectors.json"
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(json.dumps(vectors, indent=2, ensure_ascii=False) + "\n", encoding="utf-8")
    print(f"wrote {len(vectors)} vectors to {out}")


if __name__ == "__main__":
    main()
