"""Minimal sentencepiece wrapper used by the from-scratch training path.

Trained directly on the pairs TSV with the boundary markers and every
control-token string registered as user-defined symbols, so they encode
and decode losslessly. Ids follow the T5 convention: pad 0, eos 1, unk 2.
"""

import re
import shutil
from pathlib import Path

import sentencepiece as spm

SPM_FILENAME = "spm.model"
CONTROL_TOKEN = re.compile(r"<(?:CR|WL|WR)_\d+\.\d{2}>")

PAD_ID = 0
EOS_ID = 1
UNK_ID = 2


class SpmTokenizer:
    def __init__(self, model_file: str | Path):
        self._sp = spm.SentencePieceProcessor(model_file=str(model_file))
        self.pad_id = PAD_ID
        self.eos_id = EOS_ID

    @property
    def vocab_size(self) -> int:
        return self._sp.get_piece_size()

    def encode(self, text: str, max_length: int | None = None, add_eos: bool = True) -> list[int]:
        ids = self._sp.encode(text)
        if add_eos:
            ids = ids + [self.eos_id]
        if max_length is not None:
            ids = ids[:max_length]
        return ids

    def decode(self, ids) -> str:
        kept = [int(i) for i in ids if int(i) not in (self.pad_id, self.eos_id)]
        return self._sp.decode(kept)


def control_symbols(texts) -> list[str]:
    """Boundary markers plus every control-token string seen in the data."""
    symbols = {"[T]", "[/T]"}
    for text in texts:
        symbols.update(CONTROL_TOKEN.findall(text))
    return sorted(symbols)


def train_tokenizer(texts, out_dir: str | Path, vocab_size: int = 512) -> SpmTokenizer:
    """Train a sentencepiece model on the given lines and store it in out_dir."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    corpus = out_dir / "spm_corpus.txt"
    corpus.write_text("\n".join(texts) + "\n", encoding="utf-8")
    prefix = out_dir / "spm"
    spm.SentencePieceTrainer.train(
        input=str(corpus),
        model_prefix=str(prefix),
        vocab_size=vocab_size,
        hard_vocab_limit=False,
        character_coverage=1.0,
        user_defined_symbols=control_symbols(texts),
        pad_id=PAD_ID,
        eos_id=EOS_ID,
        unk_id=UNK_ID,
        bos_id=-1,
        minloglevel=2,
    )
    corpus.unlink()
    model_file = prefix.with_suffix(".model")
    if model_file != out_dir / SPM_FILENAME:
        shutil.move(str(model_file), out_dir / SPM_FILENAME)
    return SpmTokenizer(out_dir / SPM_FILENAME)
