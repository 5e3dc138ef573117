"""Command-line pipeline: preprocess -> fit -> report, plus synthetic corpora.

Every stage reads and writes plain files in a work directory, so stages
compose and can be re-run independently. Exit codes: 0 success, 2 usage or
input error, 3 computational error.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__
from .corpus import (
    DocTermMatrix,
    PreprocessConfig,
    Vocabulary,
    build_matrix,
    build_vocabulary,
    generate_synthetic,
    load_corpus,
    load_stopwords,
    synthetic_vocabulary,
    tfidf,
)
from .errors import TopicforgeError
from .evaluation import (
    adapt_model,
    compare,
    summarize_topics,
    topic_distribution,
    umass_coherence,
    wordcloud_export,
)
from .lda import LdaConfig, LdaModel, fit_lda
from .lsa import LsaModel, fit_lsa, lsa_variance_curve
from .nmf import NmfModel, fit_nmf
from .plsa import PlsaConfig, PlsaModel, fit_plsa

log = logging.getLogger("topicforge")

MODEL_CLASSES = {
    "plsa": PlsaModel,
    "lsa": LsaModel,
    "lda": LdaModel,
    "nmf": NmfModel,
}


class UsageError(Exception):
    pass


def _write_manifest(out_dir: Path, name: str, command: str, args: dict,
                    wall_times: dict) -> None:
    manifest = {
        "command": command,
        "tool_version": __version__,
        "args": args,
        "wall_time_s": wall_times,
    }
    (out_dir / name).write_text(json.dumps(manifest, indent=2) + "\n",
                                encoding="utf-8")


def _preprocess_config(args) -> PreprocessConfig:
    stopword_path = os.environ.get("TOPICFORGE_STOPWORDS")
    if getattr(args, "stopwords", None):
        stopword_path = args.stopwords
    kwargs = {}
    if stopword_path:
        kwargs["stopwords"] = load_stopwords(stopword_path)
    return PreprocessConfig(
        min_token_len=args.min_token_len,
        min_df=args.min_df,
        max_df_ratio=args.max_df_ratio,
        stemming=not args.no_stem,
        **kwargs,
    )


def cmd_preprocess(args) -> int:
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    cfg = _preprocess_config(args)
    if args.format == "csv" and not args.text_col:
        raise UsageError("--text-col is required for csv input")
    t0 = time.perf_counter()
    result = load_corpus(args.input, fmt=args.format, text_col=args.text_col,
                         cfg=cfg)
    vocab = build_vocabulary(result.documents, cfg)
    counts = build_matrix(result.documents, vocab)
    weighted = tfidf(counts)
    elapsed = time.perf_counter() - t0

    vocab.save(out_dir / "vocab.txt")
    counts.save(out_dir / "counts.mtx")
    weighted.save(out_dir / "tfidf.mtx")
    stats = {
        "docs_in": len(result.documents) + result.dropped,
        "docs_kept": len(result.documents),
        "docs_dropped": result.dropped,
        "vocab_size": len(vocab),
        "nnz": counts.nnz,
        "empty_rows_after_pruning": counts.empty_doc_rows().tolist(),
    }
    (out_dir / "stats.json").write_text(json.dumps(stats, indent=2) + "\n",
                                        encoding="utf-8")
    _write_manifest(out_dir, "preprocess.manifest.json", "preprocess",
                    {"input": str(args.input), "format": args.format,
                     "text_col": args.text_col, "min_df": cfg.min_df,
                     "max_df_ratio": cfg.max_df_ratio,
                     "min_token_len": cfg.min_token_len,
                     "stemming": cfg.stemming},
                    {"preprocess": elapsed})
    log.info("kept %d docs (dropped %d), vocabulary %d terms",
             stats["docs_kept"], stats["docs_dropped"], stats["vocab_size"])
    return 0


def _fit_one(name: str, counts: DocTermMatrix, weighted: DocTermMatrix, args):
    if name == "plsa":
        cfg = PlsaConfig(k=args.topics, max_iter=args.iters, tol=args.tol,
                         seed=args.seed)
        return fit_plsa(counts, cfg)
    if name == "lda":
        burn_in = args.burn_in if args.burn_in is not None else args.iters // 5
        cfg = LdaConfig(k=args.topics, alpha=args.alpha, beta=args.beta,
                        iterations=args.iters, burn_in=burn_in, seed=args.seed)
        return fit_lda(counts, cfg)
    if name == "lsa":
        return fit_lsa(counts if args.use_counts else weighted, args.topics)
    if name == "nmf":
        return fit_nmf(counts if args.use_counts else weighted, args.topics,
                       max_iter=args.iters, tol=args.tol, seed=args.seed)
    raise UsageError(f"unknown model {name!r}")


def cmd_fit(args) -> int:
    work = Path(args.out)
    counts_path = work / "counts.mtx"
    if not counts_path.exists():
        raise UsageError(f"{counts_path} not found; run preprocess first")
    counts = DocTermMatrix.load(counts_path)
    weighted = DocTermMatrix.load(work / "tfidf.mtx")

    t0 = time.perf_counter()
    model = _fit_one(args.model, counts, weighted, args)
    elapsed = time.perf_counter() - t0

    if args.model == "lda":
        text = model.to_json(include_assignments=args.include_assignments)
    else:
        text = model.to_json()
    (work / f"{args.model}.json").write_text(text + "\n", encoding="utf-8")
    _write_manifest(work, f"{args.model}.manifest.json", "fit",
                    {"model": args.model, "k": args.topics, "seed": args.seed,
                     "iters": args.iters, "alpha": args.alpha,
                     "beta": args.beta, "tol": args.tol,
                     "burn_in": args.burn_in,
                     "use_counts": args.use_counts},
                    {"fit": elapsed})
    log.info("fitted %s (k=%d) in %.3fs", args.model, args.topics, elapsed)
    return 0


def _load_models(work: Path):
    found = []
    for name, cls in MODEL_CLASSES.items():
        path = work / f"{name}.json"
        if path.exists():
            model = cls.from_json(path.read_text(encoding="utf-8"))
            wall = 0.0
            mpath = work / f"{name}.manifest.json"
            if mpath.exists():
                wall = json.loads(mpath.read_text(encoding="utf-8"))[
                    "wall_time_s"].get("fit", 0.0)
            found.append(adapt_model(model, wall_time=wall))
    return found


def cmd_report(args) -> int:
    work = Path(args.out)
    models = _load_models(work)
    if not models:
        raise UsageError(f"no model JSON found in {work}")
    counts = DocTermMatrix.load(work / "counts.mtx")
    vocab = Vocabulary.load(work / "vocab.txt")

    report = compare(models, counts, vocab, top_n=args.top_n)
    (work / "compare.json").write_text(report.to_json() + "\n",
                                       encoding="utf-8")
    (work / "compare.txt").write_text(report.to_text(), encoding="utf-8")
    if args.compare_only:
        return 0

    with open(work / "topics.csv", "w", encoding="utf-8") as fh:
        fh.write("model,topic_id,rank,term,weight\n")
        for fm in models:
            for t in summarize_topics(fm, vocab, args.top_n):
                for rank, (term, weight) in enumerate(t.top_terms, 1):
                    fh.write(f"{fm.name},{t.topic_id},{rank},{term},"
                             f"{weight!r}\n")

    with open(work / "prevalence.csv", "w", encoding="utf-8") as fh:
        fh.write("model,topic_id,prevalence\n")
        for fm in models:
            prev = topic_distribution(fm.doc_topic)
            for t, p in enumerate(prev):
                fh.write(f"{fm.name},{t},{float(p)!r}\n")

    with open(work / "coherence.csv", "w", encoding="utf-8") as fh:
        fh.write("model,topic_id,coherence\n")
        for fm in models:
            for t in summarize_topics(fm, vocab, args.top_n):
                score = umass_coherence([w for w, _ in t.top_terms],
                                        counts, vocab)
                fh.write(f"{fm.name},{t.topic_id},{score!r}\n")

    for fm in models:
        for t in summarize_topics(fm, vocab, args.top_n):
            records = wordcloud_export(t)
            path = work / f"wordcloud-{fm.name}-{t.topic_id}.json"
            path.write_text(json.dumps(records) + "\n", encoding="utf-8")

    lsa_models = [fm for fm in models if fm.name == "lsa"]
    if lsa_models:
        weighted = DocTermMatrix.load(work / "tfidf.mtx")
        k_max = args.k_max or min(counts.n_docs, counts.n_terms, 50)
        k_max = min(k_max, counts.n_docs, counts.n_terms)
        curve = lsa_variance_curve(weighted, k_max)
        with open(work / "variance_curve.csv", "w", encoding="utf-8") as fh:
            fh.write("k,cumulative_variance\n")
            for k, frac in curve:
                fh.write(f"{k},{frac!r}\n")
    return 0


def cmd_synth(args) -> int:
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    docs = generate_synthetic(args.topics, args.words, args.docs, args.length,
                              args.seed)
    with open(out_dir / "corpus.txt", "w", encoding="utf-8") as fh:
        for doc in docs:
            fh.write(doc.raw + "\n")
    blocks = synthetic_vocabulary(args.topics, args.words)
    truth = {str(t): block for t, block in enumerate(blocks)}
    (out_dir / "truth.json").write_text(json.dumps(truth, indent=2) + "\n",
                                        encoding="utf-8")
    log.info("wrote %d documents to %s", len(docs), out_dir / "corpus.txt")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="topicforge",
        description="Topic-modeling pipeline: pLSA, LSA, LDA and NMF.")
    parser.add_argument("--quiet", action="store_true",
                        help="suppress progress logging")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("preprocess", help="build corpus artifacts")
    p.add_argument("--input", required=True)
    p.add_argument("--format", choices=["csv", "lines"], default="lines")
    p.add_argument("--text-col")
    p.add_argument("--out", default=".")
    p.add_argument("--stopwords", help="override the pinned stopword file")
    p.add_argument("--min-token-len", type=int, default=2)
    p.add_argument("--min-df", type=int, default=2)
    p.add_argument("--max-df-ratio", type=float, default=0.95)
    p.add_argument("--no-stem", action="store_true")
    p.set_defaults(func=cmd_preprocess)

    p = sub.add_parser("fit", help="fit one model on preprocessed artifacts")
    p.add_argument("--model", required=True,
                   choices=["plsa", "lsa", "lda", "nmf"])
    p.add_argument("-k", "--topics", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--iters", type=int, default=200)
    p.add_argument("--alpha", type=float)
    p.add_argument("--beta", type=float, default=0.01)
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--burn-in", type=int)
    p.add_argument("--use-counts", action="store_true",
                   help="fit lsa/nmf on raw counts instead of TF-IDF")
    p.add_argument("--include-assignments", action="store_true")
    p.add_argument("--out", default=".")
    p.set_defaults(func=cmd_fit)

    for name, compare_only in (("report", False), ("compare", True)):
        p = sub.add_parser(name, help="evaluate fitted models")
        p.add_argument("--out", default=".")
        p.add_argument("--top-n", type=int, default=10)
        p.add_argument("--k-max", type=int)
        if compare_only:
            p.set_defaults(func=cmd_report, compare_only=True)
        else:
            p.add_argument("--compare-only", action="store_true")
            p.set_defaults(func=cmd_report)

    p = sub.add_parser("synth", help="generate a planted-topic corpus")
    p.add_argument("-k", "--topics", type=int, required=True)
    p.add_argument("--words", type=int, required=True)
    p.add_argument("--docs", type=int, required=True)
    p.add_argument("--len", dest="length", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=".")
    p.set_defaults(func=cmd_synth)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.WARNING if args.quiet else logging.INFO,
        format="%(message)s")
    try:
        if getattr(args, "topics", 1) < 1:
            raise UsageError("topic count must be >= 1")
        return args.func(args)
    except (UsageError, FileNotFoundError, ValueError) as exc:
        print(f"topicforge: {exc}", file=sys.stderr)
        return 2
    except TopicforgeError as exc:
        kind = type(exc).__name__
        if kind in ("MalformedCsvError", "MissingColumnError",
                    "EmptyVocabularyError"):
            print(f"topicforge: {exc}", file=sys.stderr)
            return 2
        print(f"topicforge: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
