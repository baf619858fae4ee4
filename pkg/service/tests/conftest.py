import pytest

from ls_service import TrainSpec, train

TOY_SOURCES = [
    ("<CR_1.00> <WL_0.83> <WR_0.90> the cat sat on a [T]carpet[/T] today",
     "the cat sat on a [T]mat[/T] today"),
    ("<CR_0.75> <WL_0.50> <WR_1.05> the cat sat on a [T]carpet[/T] today",
     "the cat sat on a [T]rug[/T] today"),
    ("<CR_1.00> <WL_0.71> <WR_0.80> she gave an [T]enormous[/T] wave",
     "she gave an [T]big[/T] wave"),
    ("<CR_0.75> <WL_0.57> <WR_0.95> she gave an [T]enormous[/T] wave",
     "she gave an [T]huge[/T] wave"),
]


def write_toy_tsv(path, n_pairs=20):
    lines = []
    for i in range(n_pairs):
        source, target = TOY_SOURCES[i % len(TOY_SOURCES)]
        lines.append(f"{source} v{i}\t{target} v{i}\n")
    path.write_text("".join(lines), encoding="utf-8")
    return path


@pytest.fixture(scope="session")
def toy_checkpoint(tmp_path_factory):
    """A from-scratch toy model trained once for the whole session."""
    root = tmp_path_factory.mktemp("toy")
    tsv = write_toy_tsv(root / "pairs.train.tsv")
    spec = TrainSpec(
        train_tsv=str(tsv),
        model_size="small",
        epochs=1,
        init="scratch",
        learning_rate=1e-3,  # random init needs a real step size to move
        seed=7,
    )
    return train(spec, root / "checkpoint")
