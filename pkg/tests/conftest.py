import pytest

from folkbangla.corpus import Corpus, Document, StopwordList, normalize
from folkbangla.data import data_text


@pytest.fixture(scope="session")
def mini_tale_doc() -> Document:
    text = data_text("mini_tale.txt")
    return Document("mini_tale", text, normalize(text), "bundled")


@pytest.fixture(scope="session")
def synthetic_corpus() -> Corpus:
    return Corpus.from_texts([data_text("kiranmala_synthetic.txt")], name="synthetic")


@pytest.fixture(scope="session")
def no_stopwords() -> StopwordList:
    return StopwordList(frozenset())
