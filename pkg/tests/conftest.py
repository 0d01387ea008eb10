import pytest

from framestarters import corpus


@pytest.fixture(scope="session")
def corpus_entries():
    return corpus.load_entries()


@pytest.fixture(scope="session")
def corpus_by_id(corpus_entries):
    return {e.entry_id: e for e in corpus_entries}
