"""Non-negative matrix factorization by Frobenius multiplicative updates.

The input docs x terms matrix is transposed to V (terms x docs) so the
factors come out as W (terms x topics) and H (topics x docs).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .corpus import DocTermMatrix
from .errors import InvalidKError

_EPS = 1e-12


@dataclass
class NmfModel:
    w_factor: np.ndarray  # n_terms x k
    h_factor: np.ndarray  # k x n_docs
    objective_trace: list[float] = field(default_factory=list)
    iterations_run: int = 0
    converged: bool = False

    @property
    def k(self) -> int:
        return self.h_factor.shape[0]

    def to_json(self) -> str:
        return json.dumps({
            "model": "nmf",
            "k": self.k,
            "W": self.w_factor.tolist(),
            "H": self.h_factor.tolist(),
            "objective_trace": self.objective_trace,
        })

    @classmethod
    def from_json(cls, text: str) -> "NmfModel":
        obj = json.loads(text)
        return cls(
            w_factor=np.asarray(obj["W"], dtype=np.float64),
            h_factor=np.asarray(obj["H"], dtype=np.float64),
            objective_trace=list(obj["objective_trace"]),
            iterations_run=len(obj["objective_trace"]),
        )


def fit_nmf(m: DocTermMatrix, k: int, max_iter: int = 200, tol: float = 1e-6,
            seed: int = 0) -> NmfModel:
    """Alternating multiplicative updates, deterministic given seed.

    H <- H * (W^T V) / (W^T W H + eps), then W <- W * (V H^T) / (W H H^T + eps).
    Stops when the relative change of ||V - WH||_F drops below tol.
    """
    if not 1 <= k <= min(m.n_docs, m.n_terms):
        raise InvalidKError(k, min(m.n_docs, m.n_terms))
    v = m.csr.T.toarray()  # terms x docs, paper orientation
    rng = np.random.default_rng(seed)
    w = 1.0 - rng.random((v.shape[0], k))  # uniform in (0, 1]
    h = 1.0 - rng.random((k, v.shape[1]))

    trace: list[float] = []
    converged = False
    for _ in range(max_iter):
        h *= (w.T @ v) / (w.T @ w @ h + _EPS)
        w *= (v @ h.T) / (w @ h @ h.T + _EPS)
        obj = float(np.linalg.norm(v - w @ h))
        trace.append(obj)
        if len(trace) >= 2:
            prev = trace[-2]
            if abs(prev - obj) < tol * max(prev, _EPS):
                converged = True
                break

    return NmfModel(w_factor=w, h_factor=h, objective_trace=trace,
                    iterations_run=len(trace), converged=converged)


def nmf_doc_topics(model: NmfModel) -> np.ndarray:
    """H columns transposed and L1-normalized; all-zero docs become uniform."""
    dt = model.h_factor.T.copy()
    sums = dt.sum(axis=1, keepdims=True)
    k = model.k
    uniform = np.full(k, 1.0 / k)
    out = np.where(sums > 0, dt / np.where(sums > 0, sums, 1.0), uniform)
    return out
