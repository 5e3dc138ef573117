"""Walk through the preprocessing pipeline on a few incident-style narratives."""

from topicforge import (
    PreprocessConfig,
    build_matrix,
    build_vocabulary,
    load_corpus,
    preprocess,
    tfidf,
)

narratives = [
    "The aircraft STRUCK a bird during the approach to runway 16.",
    "Engine vibration was detected in cruise; see http://example.com for details.",
    "<b>Fumes</b> were reported in the cabin shortly after takeoff.",
    "The crew conducted a runway inspection after the bird strike.",
]

print("== token output per narrative ==")
for text in narratives:
    print(f"  {text!r}")
    print(f"    -> {preprocess(text)}")

import tempfile, pathlib

with tempfile.TemporaryDirectory() as tmp:
    path = pathlib.Path(tmp) / "corpus.txt"
    path.write_text("\n".join(narratives) + "\n")
    cfg = PreprocessConfig(min_df=1, max_df_ratio=1.0)
    result = load_corpus(path, cfg=cfg)
    print(f"\nloaded {len(result.documents)} docs, dropped {result.dropped}")

    vocab = build_vocabulary(result.documents, cfg)
    print(f"vocabulary ({len(vocab)} terms): {vocab.terms}")

    counts = build_matrix(result.documents, vocab)
    print(f"\ncount matrix {counts.n_docs}x{counts.n_terms}, nnz={counts.nnz}")
    weighted = tfidf(counts)
    print("TF-IDF row norms:",
          [round(float(x), 6) for x in
           weighted.csr.multiply(weighted.csr).sum(axis=1).flat])
