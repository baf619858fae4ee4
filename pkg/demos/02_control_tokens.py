"""Computing control-token values and building training pairs.

Each training example is conditioned on three tokens: the candidate's
quantized gold rank (CR), its length ratio against the complex word (WL),
and its frequency-rarity ratio (WR). The complex word and the substituted
candidate are wrapped in [T]...[/T] markers.
"""

from lexsimp import (
    Instance,
    build_training_pairs,
    compute_wl,
    compute_wr,
    cr_for_rank,
    lexicon_from_words,
)

# a frequency-ordered vocabulary: earlier = more frequent
lexicon = lexicon_from_words(
    ["the", "new", "call", "usual", "unusual", "strange", "crackdown", "unprecedented"]
)

print("word length:  WL(unprecedented -> unusual) =",
      compute_wl("unprecedented", "unusual"))
print("word rarity:  WR(unprecedented -> unusual) =",
      compute_wr("unprecedented", "unusual", lexicon))
print("gold ranks:   CR(1..6) =", [cr_for_rank(i) for i in range(1, 7)])

instance = Instance(
    id=0,
    sentence="The Obama administration has seen what The New York Times calls "
             "an unprecedented crackdown on leaks of government secrets.",
    complex_word="unprecedented",
    word_index=12,
    gold=(("unusual", 5), ("rare", 3), ("new", 2), ("strange", 1)),
)

print("\none pair per gold candidate:")
for pair in build_training_pairs(instance, lexicon):
    print(" source:", pair.source[:72] + "...")
    print(" target:", "..." + pair.target[60:112] + "...")
    print()
