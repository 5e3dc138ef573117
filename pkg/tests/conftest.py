import numpy as np
import pytest
import scipy.sparse as sp

from topicforge import (
    DocTermMatrix,
    PreprocessConfig,
    RAW_COUNT,
    build_matrix,
    build_vocabulary,
    generate_synthetic,
)


@pytest.fixture(scope="session")
def keep_all_cfg():
    return PreprocessConfig(min_df=1, max_df_ratio=1.0)


@pytest.fixture(scope="session")
def two_block_corpus(keep_all_cfg):
    """The 6-doc disjoint corpus from generate_synthetic(k=2)."""
    docs = generate_synthetic(2, 5, 3, 10, seed=0)
    vocab = build_vocabulary(docs, keep_all_cfg)
    return docs, vocab, build_matrix(docs, vocab)


@pytest.fixture(scope="session")
def three_block_corpus(keep_all_cfg):
    docs = generate_synthetic(3, 20, 100, 50, seed=0)
    vocab = build_vocabulary(docs, keep_all_cfg)
    return docs, vocab, build_matrix(docs, vocab)


def raw_matrix(arr):
    return DocTermMatrix(csr=sp.csr_matrix(np.asarray(arr, dtype=float)),
                         weighting=RAW_COUNT)
