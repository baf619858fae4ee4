import pytest
from hypothesis import given
from hypothesis import strategies as st

from lexsimp import LexsimpError, lexicon_from_words, load_lexicon


def test_word_list(tmp_path):
    path = tmp_path / "vocab.txt"
    path.write_text("the\nof\nbreak\n", encoding="utf-8")
    lexicon = load_lexicon(path)
    assert lexicon.size == 3
    assert lexicon.rank_of("the") == 1
    assert lexicon.rank_of("of") == 2
    assert lexicon.rank_of("break") == 3


def test_duplicate_case_folding(tmp_path):
    path = tmp_path / "vocab.txt"
    path.write_text("The\nthe\n", encoding="utf-8")
    lexicon = load_lexicon(path)
    assert lexicon.size == 1
    assert lexicon.rank_of("the") == 1


def test_vector_file_line(tmp_path):
    # round-trips a handwritten vectors file: only the leading token counts
    path = tmp_path / "vectors.vec"
    path.write_text(
        "the 0.1 0.2 0.3\nof -0.5 0.0 0.9\nbreak 1.0 1.0 1.0\n", encoding="utf-8"
    )
    vectors = load_lexicon(path)
    plain = tmp_path / "plain.txt"
    plain.write_text("the\nof\nbreak\n", encoding="utf-8")
    assert vectors.ranks == load_lexicon(plain).ranks


def test_header_line_skipped(tmp_path):
    path = tmp_path / "vectors.vec"
    path.write_text("2 300\nalpha 0.1\nbeta 0.2\n", encoding="utf-8")
    lexicon = load_lexicon(path)
    assert lexicon.size == 2
    assert lexicon.rank_of("alpha") == 1


def test_limit_stops_reading(tmp_path):
    path = tmp_path / "vocab.txt"
    path.write_text("a\nb\nc\nd\n", encoding="utf-8")
    lexicon = load_lexicon(path, limit=2)
    assert lexicon.size == 2
    assert lexicon.rank_of("c") == 3  # OOV convention


def test_case_insensitive_lookup():
    lexicon = lexicon_from_words(["the"])
    assert lexicon.rank_of("THE") == 1


def test_oov_rank():
    lexicon = lexicon_from_words(["a", "b", "c"])
    assert lexicon.rank_of("zyzzyva") == 4


def test_multiword_takes_maximum_rank():
    lexicon = lexicon_from_words(["a", "number", "rare"])
    assert lexicon.rank_of("a number") == 2
    assert lexicon.rank_of("a zyzzyva") == 4


def test_empty_file_is_an_error(tmp_path):
    path = tmp_path / "empty.txt"
    path.write_text("", encoding="utf-8")
    with pytest.raises(LexsimpError):
        load_lexicon(path)


@given(st.lists(st.text(alphabet="abcdefg", min_size=1, max_size=6), min_size=1, max_size=30),
       st.text(alphabet="abcdefg ", min_size=0, max_size=12))
def test_rank_bounds(words, query):
    lexicon = lexicon_from_words(words)
    rank = lexicon.rank_of(query)
    assert 1 <= rank <= lexicon.size + 1


def test_file_order_defines_rank_order(tmp_path):
    path = tmp_path / "vocab.txt"
    path.write_text("zeta\nalpha\nmid\n", encoding="utf-8")
    lexicon = load_lexicon(path)
    assert lexicon.rank_of("zeta") < lexicon.rank_of("alpha") < lexicon.rank_of("mid")
