import pytest

from lexsimp import Dataset, Instance

# Gold annotations of the TSAR example instance (annotator vote counts).
CARNAGE_GOLD = (
    ("destruction", 6),
    ("bloodshed", 3),
    ("massacre", 3),
    ("slaughter", 3),
    ("carnage", 2),
    ("brutality", 1),
    ("butchering", 1),
    ("butchery", 1),
    ("damage", 1),
    ("death", 1),
    ("slaying", 1),
    ("violence", 1),
    ("war", 1),
)

CARNAGE_SENTENCE = (
    "European Union foreign ministers agreed Monday to impose fresh sanctions "
    "on Syria as a U.N.-backed peace plan -- along with all other diplomatic "
    "efforts -- has yet to stop the carnage that mounts every day."
)


@pytest.fixture
def carnage_instance():
    return Instance(
        id=0,
        sentence=CARNAGE_SENTENCE,
        complex_word="carnage",
        word_index=CARNAGE_SENTENCE.split().index("carnage"),
        gold=CARNAGE_GOLD,
    )


@pytest.fixture
def tiny_dataset():
    """Three hand-built instances with distinct gold shapes."""
    i0 = Instance(
        id=0,
        sentence="The Hush Sound is currently on hiatus.",
        complex_word="hiatus",
        word_index=6,
        gold=(("break", 2), ("rest", 1)),
    )
    i1 = Instance(
        id=1,
        sentence="She gave an unprecedented answer.",
        complex_word="unprecedented",
        word_index=3,
        gold=(("unusual", 3), ("new", 3), ("rare", 1)),
    )
    i2 = Instance(
        id=2,
        sentence="A compulsory test awaits.",
        complex_word="compulsory",
        word_index=1,
        gold=(("required", 5),),
    )
    return Dataset(name="tsar_en", instances=(i0, i1, i2))
