"""Compare the four models with UMass coherence and export report data."""

from topicforge import (
    LdaConfig,
    PlsaConfig,
    PreprocessConfig,
    build_matrix,
    build_vocabulary,
    compare,
    fit_lda,
    fit_lsa,
    fit_nmf,
    fit_plsa,
    generate_synthetic,
    lsa_variance_curve,
    tfidf,
    topic_distribution,
    wordcloud_export,
)
from topicforge.evaluation import adapt_model, summarize_topics

docs = generate_synthetic(k=3, words_per_topic=20, docs_per_topic=100,
                          doc_len=50, seed=5)
cfg = PreprocessConfig(min_df=1, max_df_ratio=1.0)
vocab = build_vocabulary(docs, cfg)
counts = build_matrix(docs, vocab)
weighted = tfidf(counts)

fitted = [
    adapt_model(fit_plsa(counts, PlsaConfig(k=3, seed=0))),
    adapt_model(fit_lsa(weighted, 3)),
    adapt_model(fit_lda(counts, LdaConfig(k=3, alpha=0.5, iterations=200,
                                          burn_in=50, seed=0))),
    adapt_model(fit_nmf(weighted, 3, seed=0)),
]

report = compare(fitted, counts, vocab, top_n=10)
print(report.to_text())

best = report.rows[0]
print(f"best mean coherence: {best.model} ({best.mean_coherence:.4f})\n")

fm = fitted[0]
print("pLSA topic prevalence:", topic_distribution(fm.doc_topic).round(4))

summary = summarize_topics(fm, vocab, 5)[0]
print("\nword-cloud export for pLSA topic 0:")
for record in wordcloud_export(summary):
    print(f"  {record['term']:>8}  {record['weight']:7.2f}")

print("\nLSA cumulative variance curve:")
for k, frac in lsa_variance_curve(weighted, 6):
    print(f"  k={k}: {frac:.4f}")
