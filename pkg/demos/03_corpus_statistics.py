"""Why the control tokens exist: best candidates tend to be shorter and
more frequent than the complex words they replace.

On a real training corpus roughly two thirds of complex words are longer
than the best substitution and the large majority are rarer. The same
statistics run here on a toy corpus.
"""

from lexsimp import Dataset, Instance, frequency_stats, length_stats, lexicon_from_words

corpus = Dataset(
    name="tsar_en",
    instances=(
        Instance(id=0, sentence="currently on hiatus here", complex_word="hiatus",
                 word_index=2, gold=(("break", 4), ("rest", 1))),
        Instance(id=1, sentence="a compulsory test", complex_word="compulsory",
                 word_index=1, gold=(("required", 3),)),
        Instance(id=2, sentence="the carnage mounts", complex_word="carnage",
                 word_index=1, gold=(("destruction", 6), ("war", 1))),
        Instance(id=3, sentence="she will speak soon", complex_word="speak",
                 word_index=2, gold=(("talk", 2),)),
    ),
)

lengths = length_stats(corpus)
print("complex word longer than best candidate: "
      f"{lengths.pct_complex_longer}%  ({lengths.n_longer}/{lengths.n_instances})")
print("complex word shorter:                    "
      f"{lengths.pct_complex_shorter}%  ({lengths.n_shorter}/{lengths.n_instances})")
print("same length:                             "
      f"{lengths.pct_equal}%  ({lengths.n_equal}/{lengths.n_instances})")

# frequency-ordered vocabulary; words missing from it count as maximally rare
lexicon = lexicon_from_words(
    ["the", "talk", "rest", "war", "break", "required", "speak", "destruction",
     "compulsory", "hiatus", "carnage"]
)
frequencies = frequency_stats(corpus, lexicon)
print(f"\ncomplex word rarer than best candidate: {frequencies.pct_complex_rarer}% "
      f"({frequencies.n_rarer}/{frequencies.n_evaluated}, ties: {frequencies.n_ties})")
