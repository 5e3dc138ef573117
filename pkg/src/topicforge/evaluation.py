"""Topic summaries, prevalence, UMass coherence and cross-model comparison."""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field

import numpy as np

from .corpus import RAW_COUNT, DocTermMatrix, Vocabulary
from .errors import (
    LengthMismatchError,
    NotStochasticError,
    UnknownTermError,
    VocabularyMismatchError,
)
from .lda import LdaModel
from .lsa import LsaModel
from .nmf import NmfModel, nmf_doc_topics
from .plsa import PlsaModel

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class TopicSummary:
    topic_id: int
    top_terms: tuple[tuple[str, float], ...]  # weight-descending


def top_terms(weights, vocab: Vocabulary, n: int,
              rank_by_abs: bool = False) -> TopicSummary:
    """The n largest-weight terms, ties broken by ascending vocabulary index.

    rank_by_abs ranks on |weight| but reports the signed weight (used for
    LSA loadings, which may be negative).
    """
    weights = np.asarray(weights, dtype=np.float64)
    if weights.shape != (len(vocab),):
        raise LengthMismatchError(weights.shape, len(vocab))
    if n < 1:
        raise ValueError("n must be >= 1")
    key = np.abs(weights) if rank_by_abs else weights
    order = np.lexsort((np.arange(len(key)), -key))[: min(n, len(vocab))]
    return TopicSummary(
        topic_id=0,
        top_terms=tuple((vocab.terms[i], float(weights[i])) for i in order),
    )


def topic_distribution(doc_topic) -> np.ndarray:
    """Corpus prevalence: mean of the row-stochastic doc-topic matrix."""
    doc_topic = np.asarray(doc_topic, dtype=np.float64)
    sums = doc_topic.sum(axis=1)
    bad = np.flatnonzero(np.abs(sums - 1.0) > 1e-6)
    if bad.size:
        raise NotStochasticError(int(bad[0]))
    return doc_topic.mean(axis=0)


def umass_coherence(terms, m: DocTermMatrix, vocab: Vocabulary) -> float:
    """UMass score over a weight-ordered top-term list.

    C = sum_{i=2..n} sum_{j<i} log((D(w_i, w_j) + 1) / D(w_j)), where D
    counts co-document frequencies on the raw-count matrix. A single-term
    topic has an empty sum; 0 is returned with a warning.
    """
    if m.weighting != RAW_COUNT:
        raise ValueError("umass_coherence expects a raw-count matrix")
    idx = []
    for t in terms:
        if t not in vocab.index:
            raise UnknownTermError(t)
        idx.append(vocab.index[t])
    if len(idx) < 2:
        log.warning("umass_coherence of a single-term topic: returning 0")
        return 0.0
    presence = (m.csr[:, idx].toarray() > 0)
    df = presence.sum(axis=0)
    co = presence.T.astype(np.int64) @ presence
    score = 0.0
    for i in range(1, len(idx)):
        for j in range(i):
            score += np.log((co[i, j] + 1.0) / df[j])
    return float(score)


def wordcloud_export(summary: TopicSummary) -> list[dict]:
    """Min-max scale top-term weights into [1, 100] for word-cloud tools."""
    weights = np.array([w for _, w in summary.top_terms], dtype=np.float64)
    if weights.size == 0:
        return []
    lo, hi = weights.min(), weights.max()
    if hi == lo:
        scaled = np.full_like(weights, 100.0)
    else:
        scaled = np.clip(1.0 + 99.0 * (weights - lo) / (hi - lo), 1.0, 100.0)
    return [
        {"term": term, "weight": float(s)}
        for (term, _), s in zip(summary.top_terms, scaled)
    ]


@dataclass(frozen=True)
class FittedModel:
    """Uniform view over the four model types for reporting."""
    name: str
    k: int
    topic_term: np.ndarray  # k x n_terms ranking weights
    doc_topic: np.ndarray   # n_docs x k row-stochastic
    objective: float        # final log-likelihood or reconstruction error
    wall_time: float = 0.0
    rank_by_abs: bool = False


def adapt_model(model, wall_time: float = 0.0) -> FittedModel:
    """Wrap a fitted model in the shared reporting interface."""
    if isinstance(model, PlsaModel):
        return FittedModel(
            name="plsa", k=model.k, topic_term=model.p_w_given_z,
            doc_topic=model.p_z_given_d,
            objective=model.loglik_trace[-1] if model.loglik_trace else float("nan"),
            wall_time=wall_time)
    if isinstance(model, LdaModel):
        return FittedModel(
            name="lda", k=model.k, topic_term=model.phi, doc_topic=model.theta,
            objective=model.loglik_trace[-1] if model.loglik_trace else float("nan"),
            wall_time=wall_time)
    if isinstance(model, NmfModel):
        return FittedModel(
            name="nmf", k=model.k, topic_term=model.w_factor.T,
            doc_topic=nmf_doc_topics(model),
            objective=model.objective_trace[-1] if model.objective_trace else float("nan"),
            wall_time=wall_time)
    if isinstance(model, LsaModel):
        return FittedModel(
            name="lsa", k=model.k, topic_term=model.term_factors,
            doc_topic=lsa_doc_topics(model),
            objective=float(np.sum(model.singular_values ** 2)),
            wall_time=wall_time, rank_by_abs=True)
    raise TypeError(f"unknown model type {type(model).__name__}")


def lsa_doc_topics(model: LsaModel) -> np.ndarray:
    """L1-normalized absolute document scores; zero rows become uniform."""
    scores = np.abs(model.doc_factors)
    sums = scores.sum(axis=1, keepdims=True)
    uniform = np.full(model.k, 1.0 / model.k)
    return np.where(sums > 0, scores / np.where(sums > 0, sums, 1.0), uniform)


@dataclass(frozen=True)
class ModelRow:
    model: str
    k: int
    mean_coherence: float
    objective: float
    wall_time: float
    topics: tuple[TopicSummary, ...]


@dataclass(frozen=True)
class ComparisonReport:
    rows: tuple[ModelRow, ...]  # descending mean coherence

    def to_json(self) -> str:
        return json.dumps({"rows": [
            {
                "model": r.model,
                "k": r.k,
                "mean_coherence": r.mean_coherence,
                "objective": r.objective,
                "wall_time": r.wall_time,
                "topics": [
                    {"topic_id": t.topic_id,
                     "top_terms": [{"term": w, "weight": x}
                                   for w, x in t.top_terms]}
                    for t in r.topics
                ],
            }
            for r in self.rows
        ]}, indent=2)

    def to_text(self) -> str:
        lines = [f"{'model':<8}{'k':>4}{'coherence':>14}{'objective':>16}"
                 f"{'seconds':>10}"]
        for r in self.rows:
            lines.append(f"{r.model:<8}{r.k:>4}{r.mean_coherence:>14.4f}"
                         f"{r.objective:>16.4f}{r.wall_time:>10.3f}")
        return "\n".join(lines) + "\n"


def summarize_topics(fm: FittedModel, vocab: Vocabulary,
                     top_n: int) -> list[TopicSummary]:
    out = []
    for t in range(fm.k):
        s = top_terms(fm.topic_term[t], vocab, top_n, rank_by_abs=fm.rank_by_abs)
        out.append(TopicSummary(topic_id=t, top_terms=s.top_terms))
    return out


def compare(models: list[FittedModel], m: DocTermMatrix, vocab: Vocabulary,
            top_n: int = 10) -> ComparisonReport:
    """One row per model, ordered by descending mean UMass coherence."""
    if not models:
        raise ValueError("need at least one fitted model")
    rows = []
    for fm in models:
        if fm.topic_term.shape[1] != len(vocab):
            raise VocabularyMismatchError(fm.topic_term.shape[1], len(vocab))
        topics = summarize_topics(fm, vocab, top_n)
        scores = [
            umass_coherence([w for w, _ in t.top_terms], m, vocab)
            for t in topics
        ]
        rows.append(ModelRow(
            model=fm.name, k=fm.k,
            mean_coherence=float(np.mean(scores)),
            objective=fm.objective, wall_time=fm.wall_time,
            topics=tuple(topics)))
    rows.sort(key=lambda r: -r.mean_coherence)
    return ComparisonReport(rows=tuple(rows))
