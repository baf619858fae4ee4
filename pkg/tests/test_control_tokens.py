import math
from decimal import ROUND_HALF_UP, Decimal

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lexsimp import (
    ControlValues,
    Instance,
    build_training_pairs,
    compute_wl,
    compute_wr,
    cr_for_rank,
    extract_candidate,
    lexicon_from_words,
    serialize_source,
)
from lexsimp.control_tokens import format2, round2, write_pairs_tsv

TABLE3_SENTENCE = (
    "The Obama administration has seen what The New York Times calls an "
    "unprecedented crackdown on leaks of government secrets."
)
TABLE3_SOURCE = (
    "<CR_1.00> <WL_0.54> <WR_0.90> The Obama administration has seen what "
    "The New York Times calls an [T]unprecedented[/T] crackdown on leaks of "
    "government secrets."
)
TABLE3_TARGET = (
    "The Obama administration has seen what The New York Times calls an "
    "[T]unusual[/T] crackdown on leaks of government secrets."
)
TABLE3_INDEX = TABLE3_SENTENCE.split().index("unprecedented")


def half_up(x):
    return float(Decimal(str(x)).quantize(Decimal("0.01"), rounding=ROUND_HALF_UP))


# --- word length ratio ------------------------------------------------------

def test_wl_published_example():
    assert compute_wl("unprecedented", "unusual") == 0.54


@pytest.mark.parametrize("complex_word,target,expected", [
    ("word", "word", 1.00),
    ("abc", "abcdef", 2.00),
    ("abcdef", "abc", 0.50),
])
def test_wl_ratios(complex_word, target, expected):
    assert compute_wl(complex_word, target) == expected


def test_wl_empty_word_rejected():
    with pytest.raises(ValueError):
        compute_wl("", "word")
    with pytest.raises(ValueError):
        compute_wl("word", "")


@given(st.text(alphabet="abcxyz ", min_size=1, max_size=20).filter(str.strip))
def test_wl_identity_is_one(word):
    assert compute_wl(word, word) == 1.00


def test_wl_counts_spaces():
    # multi-word candidates count every character, spaces included
    assert compute_wl("abcdef", "a bc") == round2(4 / 6)


# --- word rarity ratio ------------------------------------------------------

def test_wr_equal_ranks_is_one():
    lexicon = lexicon_from_words(["same"])
    assert compute_wr("same", "same", lexicon) == 1.00


def test_wr_hand_arithmetic():
    lexicon = lexicon_from_words(["the", "break", "hiatus"])
    expected = half_up(math.log(3) / math.log(4))
    assert expected == 0.79
    assert compute_wr("hiatus", "break", lexicon) == expected


def test_wr_oov_target():
    lexicon = lexicon_from_words([f"w{i}" for i in range(10)])
    expected = half_up(math.log(12) / math.log(11))
    assert expected == 1.04
    assert compute_wr("w9", "zyzzyva", lexicon) == expected


def test_wr_monotone_in_target_rank():
    lexicon = lexicon_from_words([f"w{i}" for i in range(50)])
    values = [compute_wr("w25", f"w{i}", lexicon) for i in range(50)]
    assert values == sorted(values)


def test_wr_raw_method():
    lexicon = lexicon_from_words(["a", "b", "c", "d"])
    assert compute_wr("b", "d", lexicon, method="raw") == 2.00
    with pytest.raises(ValueError):
        compute_wr("b", "d", lexicon, method="mystery")


# --- candidate ranking token ------------------------------------------------

@pytest.mark.parametrize("rank,expected", [
    (1, 1.00), (2, 0.75), (3, 0.50), (4, 0.25), (5, 0.00), (17, 0.00),
])
def test_cr_quantization(rank, expected):
    assert cr_for_rank(rank) == expected


def test_cr_rejects_nonpositive_rank():
    with pytest.raises(ValueError):
        cr_for_rank(0)


# --- serialization ----------------------------------------------------------

def test_source_matches_published_string():
    values = ControlValues(cr=1.00, wl=0.54, wr=0.90)
    assert serialize_source(values, TABLE3_SENTENCE, TABLE3_INDEX) == TABLE3_SOURCE


def test_source_single_token():
    values = ControlValues(cr=0.75, wl=1.0, wr=1.0)
    assert serialize_source(values, "hi", 0) == "<CR_0.75> <WL_1.00> <WR_1.00> [T]hi[/T]"


def test_source_index_out_of_range():
    values = ControlValues(cr=1.0, wl=1.0, wr=1.0)
    with pytest.raises(ValueError):
        serialize_source(values, "only five tokens right here", 99)


def test_source_preserves_irregular_spacing():
    values = ControlValues(cr=1.0, wl=1.0, wr=1.0)
    out = serialize_source(values, "two  spaces   here", 1)
    assert out.endswith("two  [T]spaces[/T]   here")


def test_numeric_rendering():
    assert format2(0.54) == "0.54"
    assert format2(1.0) == "1.00"
    assert format2(0.5) == "0.50"
    assert format2(0.125) == "0.13"  # half-up


def test_control_values_validation():
    with pytest.raises(ValueError):
        ControlValues(cr=0.8, wl=1.0, wr=1.0)
    with pytest.raises(ValueError):
        ControlValues(cr=1.0, wl=0.0, wr=1.0)
    with pytest.raises(ValueError):
        ControlValues(cr=1.0, wl=1.0, wr=-0.2)


def test_extraction_recovers_marked_word():
    values = ControlValues(cr=1.0, wl=0.54, wr=0.9)
    source = serialize_source(values, TABLE3_SENTENCE, TABLE3_INDEX)
    assert extract_candidate(source) == "unprecedented"


# --- training pairs ---------------------------------------------------------

def table3_lexicon():
    # places "unusual" at rank 501 and "unprecedented" at 999 so the log
    # rarity ratio renders as 0.90
    words = [f"filler{i}" for i in range(1, 1001)]
    words[500] = "unusual"
    words[998] = "unprecedented"
    return lexicon_from_words(words)


def test_pair_count_and_cr_sequence(carnage_instance):
    lexicon = lexicon_from_words(["stop", "the", "carnage"])
    pairs = build_training_pairs(carnage_instance, lexicon)
    assert len(pairs) == len(carnage_instance.gold)
    crs = [pair.source.split()[0] for pair in pairs]
    assert crs[:5] == ["<CR_1.00>", "<CR_0.75>", "<CR_0.50>", "<CR_0.25>", "<CR_0.00>"]
    assert set(crs[5:]) == {"<CR_0.00>"}


def test_candidate_equal_to_complex_still_trains():
    inst = Instance(id=0, sentence="keep the word", complex_word="word",
                    word_index=2, gold=(("word", 1),))
    pairs = build_training_pairs(inst, lexicon_from_words(["word"]))
    assert len(pairs) == 1
    assert "[T]word[/T]" in pairs[0].target


def test_published_training_pair():
    lexicon = table3_lexicon()
    assert compute_wr("unprecedented", "unusual", lexicon) == 0.90
    inst = Instance(
        id=0, sentence=TABLE3_SENTENCE, complex_word="unprecedented",
        word_index=TABLE3_INDEX, gold=(("unusual", 1),),
    )
    pair = build_training_pairs(inst, lexicon)[0]
    assert pair.source == TABLE3_SOURCE
    assert pair.target == TABLE3_TARGET


def test_cr_values_non_increasing(carnage_instance):
    lexicon = lexicon_from_words(["a"])
    pairs = build_training_pairs(carnage_instance, lexicon)
    crs = [float(pair.source.split()[0][4:-1]) for pair in pairs]
    assert crs == sorted(crs, reverse=True)


def test_tie_logging(carnage_instance, caplog):
    import logging

    lexicon = lexicon_from_words(["a"])
    with caplog.at_level(logging.INFO, logger="lexsimp.control_tokens"):
        build_training_pairs(carnage_instance, lexicon)
    assert any("tied gold weights" in record.message for record in caplog.records)


def test_pairs_tsv_layout(tmp_path, carnage_instance):
    lexicon = lexicon_from_words(["a"])
    pairs = build_training_pairs(carnage_instance, lexicon)
    out = tmp_path / "pairs.tsv"
    write_pairs_tsv(pairs, out)
    lines = out.read_text(encoding="utf-8").splitlines()
    assert len(lines) == len(pairs)
    source, target = lines[0].split("\t")
    assert source.startswith("<CR_1.00> <WL_")
    assert "[T]destruction[/T]" in target
