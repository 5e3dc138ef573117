"""Topic-modeling toolkit: preprocessing, pLSA, LSA, LDA, NMF and evaluation."""

__version__ = "0.1.0"

from .corpus import (
    RAW_COUNT,
    TF_IDF,
    DocTermMatrix,
    Document,
    PreprocessConfig,
    Vocabulary,
    build_matrix,
    build_vocabulary,
    default_stopwords,
    generate_synthetic,
    load_corpus,
    load_stopwords,
    preprocess,
    synthetic_vocabulary,
    tfidf,
)
from .evaluation import (
    ComparisonReport,
    FittedModel,
    TopicSummary,
    adapt_model,
    compare,
    top_terms,
    topic_distribution,
    umass_coherence,
    wordcloud_export,
)
from .lda import GibbsState, LdaConfig, LdaModel, conditional_probs, fit_lda, lda_loglik
from .lsa import LsaModel, explained_variance, fit_lsa, lsa_variance_curve
from .nmf import NmfModel, fit_nmf, nmf_doc_topics
from .plsa import PlsaConfig, PlsaModel, fit_plsa, plsa_joint
from .stemmer import stem
