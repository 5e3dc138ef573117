"""Fit all four topic models on a planted-topic corpus and inspect topics."""

import numpy as np

from topicforge import (
    LdaConfig,
    PlsaConfig,
    PreprocessConfig,
    build_matrix,
    build_vocabulary,
    explained_variance,
    fit_lda,
    fit_lsa,
    fit_nmf,
    fit_plsa,
    generate_synthetic,
    tfidf,
    top_terms,
)
from topicforge.evaluation import adapt_model

K = 3
docs = generate_synthetic(k=K, words_per_topic=20, docs_per_topic=100,
                          doc_len=50, seed=0)
cfg = PreprocessConfig(min_df=1, max_df_ratio=1.0)
vocab = build_vocabulary(docs, cfg)
counts = build_matrix(docs, vocab)
weighted = tfidf(counts)
print(f"{len(docs)} docs, {len(vocab)} terms, planted topics t0/t1/t2\n")

models = {
    "plsa": fit_plsa(counts, PlsaConfig(k=K, seed=0)),
    "lsa": fit_lsa(weighted, K),
    "lda": fit_lda(counts, LdaConfig(k=K, alpha=0.5, iterations=200,
                                     burn_in=50, seed=0)),
    "nmf": fit_nmf(weighted, K, seed=0),
}

for name, model in models.items():
    fm = adapt_model(model)
    print(f"== {name} ==")
    for z in range(K):
        s = top_terms(fm.topic_term[z], vocab, 5, rank_by_abs=fm.rank_by_abs)
        terms = ", ".join(t for t, _ in s.top_terms)
        print(f"  topic {z}: {terms}")
    print()

print("pLSA log-likelihood trace (first 5):",
      [round(x, 2) for x in models["plsa"].loglik_trace[:5]])
print("NMF objective trace (first 5):",
      [round(x, 4) for x in models["nmf"].objective_trace[:5]])
print("LSA explained variance:",
      [round(x, 4) for x in explained_variance(models["lsa"])])
print("LDA prevalence:",
      np.round(models["lda"].theta.mean(axis=0), 4))
