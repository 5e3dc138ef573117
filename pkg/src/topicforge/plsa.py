"""Probabilistic latent semantic analysis fitted by expectation-maximization.

Model: P(d, w) = P(d) * sum_z P(z|d) P(w|z), with P(d) fixed at each
document's token-mass fraction so the log-likelihood decomposes exactly.
Posteriors are recomputed per nonzero matrix entry; nothing of size
n_docs * n_terms * k is ever materialized.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .corpus import RAW_COUNT, DocTermMatrix
from .errors import InvalidKError, NotRawCountError

_FLOOR = 1e-300


@dataclass(frozen=True)
class PlsaConfig:
    k: int = 10
    max_iter: int = 200
    tol: float = 1e-6
    seed: int = 0

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if self.max_iter < 1:
            raise ValueError("max_iter must be >= 1")
        if self.tol <= 0:
            raise ValueError("tol must be > 0")


@dataclass
class PlsaModel:
    p_z_given_d: np.ndarray  # n_docs x k
    p_w_given_z: np.ndarray  # k x n_terms
    p_d: np.ndarray          # n_docs
    loglik_trace: list[float] = field(default_factory=list)
    iterations_run: int = 0
    converged: bool = False

    @property
    def k(self) -> int:
        return self.p_w_given_z.shape[0]

    def to_json(self) -> str:
        return json.dumps({
            "model": "plsa",
            "k": self.k,
            "p_z_given_d": self.p_z_given_d.tolist(),
            "p_w_given_z": self.p_w_given_z.tolist(),
            "p_d": self.p_d.tolist(),
            "loglik_trace": self.loglik_trace,
        })

    @classmethod
    def from_json(cls, text: str) -> "PlsaModel":
        obj = json.loads(text)
        return cls(
            p_z_given_d=np.asarray(obj["p_z_given_d"], dtype=np.float64),
            p_w_given_z=np.asarray(obj["p_w_given_z"], dtype=np.float64),
            p_d=np.asarray(obj["p_d"], dtype=np.float64),
            loglik_trace=list(obj["loglik_trace"]),
            iterations_run=len(obj["loglik_trace"]),
        )


def _random_stochastic(rng, shape) -> np.ndarray:
    m = np.maximum(rng.random(shape), 1e-12)
    return m / m.sum(axis=1, keepdims=True)


def fit_plsa(m: DocTermMatrix, cfg: PlsaConfig | None = None) -> PlsaModel:
    """EM fit on a raw-count matrix; deterministic given cfg.seed."""
    if cfg is None:
        cfg = PlsaConfig()
    if m.weighting != RAW_COUNT:
        raise NotRawCountError()
    if not 1 <= cfg.k <= m.n_terms:
        raise InvalidKError(cfg.k, m.n_terms)
    if m.nnz == 0:
        raise ValueError("matrix has no entries")

    coo = m.csr.tocoo()
    order = np.lexsort((coo.col, coo.row))
    rows = coo.row[order].astype(np.int64)
    cols = coo.col[order].astype(np.int64)
    vals = coo.data[order].astype(np.float64)

    n_docs, n_terms, k = m.n_docs, m.n_terms, cfg.k
    doc_mass = np.asarray(m.csr.sum(axis=1)).ravel()
    p_d = doc_mass / doc_mass.sum()

    rng = np.random.default_rng(cfg.seed)
    p_z_d = _random_stochastic(rng, (n_docs, k))
    p_w_z = _random_stochastic(rng, (k, n_terms))

    trace: list[float] = []
    converged = False
    for _ in range(cfg.max_iter):
        # E-step per nonzero entry: P(z|d,w) prop. to P(z|d) P(w|z)
        joint = p_z_d[rows, :] * p_w_z[:, cols].T      # nnz x k
        denom = joint.sum(axis=1)
        posterior = joint / np.maximum(denom, _FLOOR)[:, None]
        weighted = posterior * vals[:, None]

        # M-step
        acc_w = np.zeros((n_terms, k))
        np.add.at(acc_w, cols, weighted)
        p_w_z = (acc_w / np.maximum(acc_w.sum(axis=0), _FLOOR)).T
        acc_d = np.zeros((n_docs, k))
        np.add.at(acc_d, rows, weighted)
        p_z_d = acc_d / np.maximum(acc_d.sum(axis=1, keepdims=True), _FLOOR)

        joint = p_z_d[rows, :] * p_w_z[:, cols].T
        ll = float(vals @ np.log(np.maximum(p_d[rows] * joint.sum(axis=1),
                                            _FLOOR)))
        trace.append(ll)
        if len(trace) >= 2:
            prev = trace[-2]
            if abs(ll - prev) < cfg.tol * abs(prev):
                converged = True
                break

    return PlsaModel(p_z_given_d=p_z_d, p_w_given_z=p_w_z, p_d=p_d,
                     loglik_trace=trace, iterations_run=len(trace),
                     converged=converged)


def plsa_joint(model: PlsaModel, d: int, w: int) -> float:
    """P(d, w) = P(d) sum_z P(z|d) P(w|z)."""
    if not 0 <= d < model.p_z_given_d.shape[0]:
        raise IndexError(f"document index {d} out of range")
    if not 0 <= w < model.p_w_given_z.shape[1]:
        raise IndexError(f"term index {w} out of range")
    return float(model.p_d[d] * model.p_z_given_d[d] @ model.p_w_given_z[:, w])
