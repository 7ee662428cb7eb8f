from __future__ import annotations

import pytest

from fincat import HashedEmbedder, TrainConfig, embed_records, save_model, train

from corpus import make_dataset


@pytest.fixture(scope="session")
def hashed_provider():
    return HashedEmbedder(dim=768, seed=0)


@pytest.fixture(scope="session")
def fixture_model(hashed_provider):
    """Small deterministic model trained on the synthetic corpus."""
    records = make_dataset(seed=11, n=120, prefix="fix")
    vectors, labels, skipped = embed_records(hashed_provider, records)
    assert not skipped
    return train(vectors, labels, hashed_provider.embedder_id, TrainConfig(max_epochs=200))


@pytest.fixture(scope="session")
def fixture_model_path(fixture_model, tmp_path_factory):
    path = tmp_path_factory.mktemp("model") / "fixture_model.json"
    save_model(fixture_model, str(path))
    return str(path)
