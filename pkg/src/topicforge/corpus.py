"""Corpus ingestion, text preprocessing, vocabulary and document-term matrices."""

from __future__ import annotations

import csv
import re
from dataclasses import dataclass, field
from importlib import resources

import numpy as np
import scipy.sparse as sp

from .errors import (
    EmptyVocabularyError,
    MalformedCsvError,
    MissingColumnError,
)
from .stemmer import stem

RAW_COUNT = "raw"
TF_IDF = "tfidf"

_URL_RE = re.compile(r"(?:https?://|www\.)\S+")
_HTML_TAG_RE = re.compile(r"<[^>]*>")
_NON_ALNUM_RE = re.compile(r"[\W_]+", re.UNICODE)


def default_stopwords() -> frozenset[str]:
    """The pinned stopword list shipped with the package."""
    text = resources.files("topicforge").joinpath("stopwords.txt").read_text("utf-8")
    return _parse_stopwords(text)


def load_stopwords(path) -> frozenset[str]:
    """Read a stopword file: one term per line, '#' comments allowed."""
    with open(path, encoding="utf-8") as fh:
        return _parse_stopwords(fh.read())


def _parse_stopwords(text: str) -> frozenset[str]:
    words = set()
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            words.add(line)
    return frozenset(words)


@dataclass(frozen=True)
class PreprocessConfig:
    stopwords: frozenset[str] = field(default_factory=default_stopwords)
    min_token_len: int = 2
    min_df: int = 2
    max_df_ratio: float = 0.95
    stemming: bool = True

    def __post_init__(self):
        if self.min_df < 1:
            raise ValueError("min_df must be >= 1")
        if not 0 < self.max_df_ratio <= 1:
            raise ValueError("max_df_ratio must be in (0, 1]")


@dataclass(frozen=True)
class Document:
    id: str
    raw: str
    tokens: tuple[str, ...]


def preprocess(raw: str, cfg: PreprocessConfig | None = None) -> list[str]:
    """Normalize raw text into a token list.

    Pipeline order: lowercase, strip URLs, strip HTML tags, map every
    non-alphanumeric character to a space, split, drop short / non-alphabetic
    tokens, drop stopwords, stem. The stopword and length filters are applied
    again after stemming so the output invariants hold unconditionally.
    """
    if cfg is None:
        cfg = PreprocessConfig()
    text = raw.lower()
    text = _URL_RE.sub(" ", text)
    text = _HTML_TAG_RE.sub(" ", text)
    text = _NON_ALNUM_RE.sub(" ", text)
    tokens = []
    for tok in text.split():
        if len(tok) < cfg.min_token_len or not any(c.isalpha() for c in tok):
            continue
        if tok in cfg.stopwords:
            continue
        if cfg.stemming:
            # iterate to a fixed point: Porter is not idempotent on a few
            # rare shapes, and preprocess must be idempotent on its output
            nxt = stem(tok)
            while nxt != tok:
                tok, nxt = nxt, stem(nxt)
            if len(tok) < cfg.min_token_len or tok in cfg.stopwords:
                continue
        tokens.append(tok)
    return tokens


@dataclass(frozen=True)
class LoadResult:
    documents: tuple[Document, ...]
    dropped: int


def load_corpus(path, fmt: str = "lines", text_col: str | None = None,
                cfg: PreprocessConfig | None = None) -> LoadResult:
    """Read a corpus file ('lines' or 'csv') and preprocess every document.

    Documents that come out empty after preprocessing are dropped; the drop
    count is reported in the result.
    """
    if cfg is None:
        cfg = PreprocessConfig()
    if fmt == "lines":
        with open(path, encoding="utf-8") as fh:
            raws = [(str(i), line.rstrip("\n")) for i, line in enumerate(fh)]
    elif fmt == "csv":
        if text_col is None:
            raise ValueError("csv format requires text_col")
        raws = []
        with open(path, encoding="utf-8", newline="") as fh:
            reader = csv.DictReader(fh)
            if reader.fieldnames is None or text_col not in reader.fieldnames:
                raise MissingColumnError(path, text_col)
            for i, row in enumerate(reader):
                if row.get(text_col) is None or None in row:
                    raise MalformedCsvError(path, i + 2)
                raws.append((str(i), row[text_col]))
    else:
        raise ValueError(f"unknown corpus format {fmt!r}")

    documents = []
    dropped = 0
    for doc_id, raw in raws:
        tokens = preprocess(raw, cfg)
        if tokens:
            documents.append(Document(id=doc_id, raw=raw, tokens=tuple(tokens)))
        else:
            dropped += 1
    return LoadResult(documents=tuple(documents), dropped=dropped)


@dataclass(frozen=True)
class Vocabulary:
    terms: tuple[str, ...]
    index: dict[str, int]
    doc_freq: np.ndarray

    def __len__(self) -> int:
        return len(self.terms)

    def __contains__(self, term: str) -> bool:
        return term in self.index

    def save(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            for term, df in zip(self.terms, self.doc_freq):
                fh.write(f"{term}\t{int(df)}\n")

    @classmethod
    def load(cls, path) -> "Vocabulary":
        terms, dfs = [], []
        with open(path, encoding="utf-8") as fh:
            for line in fh:
                term, df = line.rstrip("\n").split("\t")
                terms.append(term)
                dfs.append(int(df))
        return cls.from_terms(terms, dfs)

    @classmethod
    def from_terms(cls, terms, doc_freq) -> "Vocabulary":
        terms = tuple(terms)
        return cls(
            terms=terms,
            index={t: i for i, t in enumerate(terms)},
            doc_freq=np.asarray(doc_freq, dtype=np.int64),
        )


def build_vocabulary(docs, cfg: PreprocessConfig | None = None) -> Vocabulary:
    """Collect terms with min_df <= df <= max_df_ratio * n_docs, sorted."""
    if cfg is None:
        cfg = PreprocessConfig()
    if not docs:
        raise ValueError("docs must be nonempty")
    df: dict[str, int] = {}
    for doc in docs:
        for term in set(doc.tokens):
            df[term] = df.get(term, 0) + 1
    max_df = cfg.max_df_ratio * len(docs)
    kept = sorted(t for t, n in df.items() if cfg.min_df <= n <= max_df)
    if not kept:
        raise EmptyVocabularyError()
    return Vocabulary.from_terms(kept, [df[t] for t in kept])


@dataclass(frozen=True)
class DocTermMatrix:
    csr: sp.csr_matrix
    weighting: str  # RAW_COUNT or TF_IDF

    @property
    def n_docs(self) -> int:
        return self.csr.shape[0]

    @property
    def n_terms(self) -> int:
        return self.csr.shape[1]

    @property
    def nnz(self) -> int:
        return self.csr.nnz

    def empty_doc_rows(self) -> np.ndarray:
        """Indices of all-zero rows (docs whose tokens were all pruned)."""
        counts = np.diff(self.csr.indptr)
        return np.flatnonzero(counts == 0)

    def save(self, path) -> None:
        coo = self.csr.tocoo()
        order = np.lexsort((coo.col, coo.row))
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(f"{self.n_docs} {self.n_terms} {self.nnz} {self.weighting}\n")
            for i in order:
                v = coo.data[i]
                v_str = str(int(v)) if self.weighting == RAW_COUNT else repr(float(v))
                fh.write(f"{coo.row[i]} {coo.col[i]} {v_str}\n")

    @classmethod
    def load(cls, path) -> "DocTermMatrix":
        with open(path, encoding="utf-8") as fh:
            header = fh.readline().split()
            n_docs, n_terms, nnz, weighting = (
                int(header[0]), int(header[1]), int(header[2]), header[3])
            rows = np.empty(nnz, dtype=np.int64)
            cols = np.empty(nnz, dtype=np.int64)
            vals = np.empty(nnz, dtype=np.float64)
            for i in range(nnz):
                d, t, v = fh.readline().split()
                rows[i], cols[i], vals[i] = int(d), int(t), float(v)
        csr = sp.csr_matrix((vals, (rows, cols)), shape=(n_docs, n_terms))
        return cls(csr=csr, weighting=weighting)


def build_matrix(docs, vocab: Vocabulary) -> DocTermMatrix:
    """Raw-count docs x terms matrix; out-of-vocabulary tokens are ignored.

    Docs whose tokens were all pruned stay as all-zero rows so row indices
    keep lining up with the document list.
    """
    rows, cols, vals = [], [], []
    for d, doc in enumerate(docs):
        counts: dict[int, int] = {}
        for term in doc.tokens:
            t = vocab.index.get(term)
            if t is not None:
                counts[t] = counts.get(t, 0) + 1
        for t, n in counts.items():
            rows.append(d)
            cols.append(t)
            vals.append(n)
    csr = sp.csr_matrix(
        (np.asarray(vals, dtype=np.float64),
         (np.asarray(rows, dtype=np.int64), np.asarray(cols, dtype=np.int64))),
        shape=(len(docs), len(vocab)),
    )
    return DocTermMatrix(csr=csr, weighting=RAW_COUNT)


def tfidf(m: DocTermMatrix) -> DocTermMatrix:
    """Smoothed TF-IDF with L2 row normalization.

    idf(t) = ln((1 + n_docs) / (1 + df(t))) + 1, df taken from the matrix
    itself. Sparsity pattern is preserved; all-zero rows stay all-zero.
    """
    if m.weighting != RAW_COUNT:
        raise ValueError("tfidf expects a raw-count matrix")
    csr = m.csr.tocsr().copy()
    df = np.diff(csr.tocsc().indptr)
    idf = np.log((1.0 + m.n_docs) / (1.0 + df)) + 1.0
    out = csr.multiply(idf[np.newaxis, :]).tocsr()
    norms = np.sqrt(np.asarray(out.multiply(out).sum(axis=1)).ravel())
    scale = np.where(norms > 0, 1.0 / np.where(norms > 0, norms, 1.0), 0.0)
    out = sp.diags(scale) @ out
    return DocTermMatrix(csr=out.tocsr(), weighting=TF_IDF)


def synthetic_vocabulary(k: int, words_per_topic: int) -> list[list[str]]:
    """The k disjoint per-topic term blocks used by generate_synthetic."""
    return [
        [f"t{t}w{i:02d}" for i in range(words_per_topic)]
        for t in range(k)
    ]


def generate_synthetic(k: int, words_per_topic: int, docs_per_topic: int,
                       doc_len: int, seed: int) -> list[Document]:
    """Planted-topic corpus: each doc samples tokens from one topic's block."""
    if min(k, words_per_topic, docs_per_topic, doc_len) < 1:
        raise ValueError("all counts must be >= 1")
    rng = np.random.default_rng(seed)
    blocks = synthetic_vocabulary(k, words_per_topic)
    docs = []
    for t in range(k):
        block = blocks[t]
        for j in range(docs_per_topic):
            tokens = tuple(block[i] for i in rng.integers(0, words_per_topic,
                                                          size=doc_len))
            docs.append(Document(id=str(t * docs_per_topic + j),
                                 raw=" ".join(tokens), tokens=tokens))
    return docs
